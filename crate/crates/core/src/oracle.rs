//! Brute-force reference checks over GF(p) on raw residue arrays.
//!
//! Nothing here touches the validated types: every identity is re-derived
//! with plain nested loops so that the library and the oracle fail
//! independently. Tensors are flat, row-major, `[i][j][k]`; matrices are
//! `rows x cols`, row-major.

use crate::field::FieldSpec;
use crate::linalg::Matrix;
use crate::tensor::Tensor3;

fn idx(d1: usize, d2: usize, i: usize, j: usize, k: usize) -> usize {
    (i * d1 + j) * d2 + k
}

/// Residues of a prime-field tensor, flat.
pub fn residues(t: &Tensor3) -> Vec<u32> {
    t.flat().iter().map(|c| c.residue().expect("prime field tensor")).collect()
}

pub fn matrix_residues(m: &Matrix) -> Vec<u32> {
    m.entries().iter().map(|c| c.residue().expect("prime field matrix")).collect()
}

pub fn tensor_from_residues(p: u32, dims: [usize; 3], data: &[u32]) -> Tensor3 {
    let f = FieldSpec::Prime(p);
    Tensor3::from_flat(f, dims, data.iter().map(|&v| f.from_i64(v as i64)).collect()).expect("matching length")
}

pub fn matrix_from_residues(p: u32, rows: usize, cols: usize, data: &[u32]) -> Matrix {
    let f = FieldSpec::Prime(p);
    Matrix::new(f, rows, cols, data.iter().map(|&v| f.from_i64(v as i64)).collect()).expect("matching length")
}

/// `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on all basis triples.
pub fn leibniz_identity_holds(c: &[u32], n: usize, p: u32) -> bool {
    let p = p as u64;
    let at = |i, j, k| c[idx(n, n, i, j, k)] as u64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for k in 0..n {
                    let mut lhs = 0;
                    let mut rhs = 0;
                    for w in 0..n {
                        lhs += at(y, z, w) * at(x, w, k);
                        rhs += at(x, y, w) * at(w, z, k);
                        rhs += (p - at(x, z, w)) * at(w, y, k);
                    }
                    if lhs % p != rhs % p {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All `p^len` digit strings in lexicographic order, most significant first.
pub fn digits(p: u32, len: usize, mut index: u64) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % p as u64) as u32;
        index /= p as u64;
    }
    out
}

pub fn count(p: u32, len: usize) -> Option<u64> {
    (p as u64).checked_pow(len as u32)
}

/// Every dimension-`n` tensor over GF(p) satisfying the identity, in
/// lexicographic order.
pub fn brute_force_leibniz(n: usize, p: u32) -> Vec<Vec<u32>> {
    let len = n * n * n;
    (0..count(p, len).expect("small search"))
        .map(|i| digits(p, len, i))
        .filter(|c| leibniz_identity_holds(c, n, p))
        .collect()
}

/// Structure constants of an actor (dim `l`) and an actee (dim `m`).
#[derive(Clone, Copy)]
pub struct Pair<'a> {
    pub p: u32,
    pub l: usize,
    pub m: usize,
    pub actor: &'a [u32],
    pub actee: &'a [u32],
}

/// The six action axioms for `lam` (`l x m x m`) and `rho` (`m x l x m`).
pub fn action_axioms_hold(s: Pair<'_>, lam: &[u32], rho: &[u32]) -> [bool; 6] {
    let (p, l, m) = (s.p as u64, s.l, s.m);
    let bl = |i, j, k| s.actor[idx(l, l, i, j, k)] as u64;
    let bm = |i, j, k| s.actee[idx(m, m, i, j, k)] as u64;
    let la = |x, a, k| lam[idx(m, m, x, a, k)] as u64;
    let rh = |a, x, k| rho[idx(l, m, a, x, k)] as u64;
    let neg = |v: u64| (p - v % p) % p;
    let mut ok = [true; 6];
    for k in 0..m {
        for x in 0..l {
            for a in 0..m {
                for b in 0..m {
                    // (i) x.[a,b] = [x.a, b] - [x.b, a]
                    let (mut lhs, mut rhs) = (0, 0);
                    for w in 0..m {
                        lhs += bm(a, b, w) * la(x, w, k);
                        rhs += la(x, a, w) * bm(w, b, k) + neg(la(x, b, w) * bm(w, a, k));
                    }
                    ok[0] &= lhs % p == rhs % p;
                    // (ii) [a, x.b] = [a.x, b] - [a,b].x
                    let (mut lhs, mut rhs) = (0, 0);
                    for w in 0..m {
                        lhs += la(x, b, w) * bm(a, w, k);
                        rhs += rh(a, x, w) * bm(w, b, k) + neg(bm(a, b, w) * rh(w, x, k));
                    }
                    ok[1] &= lhs % p == rhs % p;
                    // (iii) [a, b.x] = [a,b].x - [a.x, b]
                    let (mut lhs, mut rhs) = (0, 0);
                    for w in 0..m {
                        lhs += rh(b, x, w) * bm(a, w, k);
                        rhs += bm(a, b, w) * rh(w, x, k) + neg(rh(a, x, w) * bm(w, b, k));
                    }
                    ok[2] &= lhs % p == rhs % p;
                }
                for y in 0..l {
                    // (iv) x.(y.a) = [x,y].a - (x.a).y
                    let (mut lhs, mut rhs) = (0, 0);
                    for w in 0..m {
                        lhs += la(y, a, w) * la(x, w, k);
                        rhs += neg(la(x, a, w) * rh(w, y, k));
                    }
                    for z in 0..l {
                        rhs += bl(x, y, z) * la(z, a, k);
                    }
                    ok[3] &= lhs % p == rhs % p;
                    // (v) x.(a.y) = (x.a).y - [x,y].a
                    let (mut lhs, mut rhs) = (0, 0);
                    for w in 0..m {
                        lhs += rh(a, y, w) * la(x, w, k);
                        rhs += la(x, a, w) * rh(w, y, k);
                    }
                    for z in 0..l {
                        rhs += neg(bl(x, y, z) * la(z, a, k));
                    }
                    ok[4] &= lhs % p == rhs % p;
                    // (vi) a.[x,y] = (a.x).y - (a.y).x
                    let (mut lhs, mut rhs) = (0, 0);
                    for z in 0..l {
                        lhs += bl(x, y, z) * rh(a, z, k);
                    }
                    for w in 0..m {
                        rhs += rh(a, x, w) * rh(w, y, k) + neg(rh(a, y, w) * rh(w, x, k));
                    }
                    ok[5] &= lhs % p == rhs % p;
                }
            }
        }
    }
    ok
}

/// Every `(lam, rho)` satisfying all six axioms, lexicographic in `lam ++ rho`.
pub fn brute_force_actions(s: Pair<'_>) -> Vec<(Vec<u32>, Vec<u32>)> {
    let nl = s.l * s.m * s.m;
    let len = 2 * nl;
    (0..count(s.p, len).expect("small search"))
        .filter_map(|i| {
            let d = digits(s.p, len, i);
            let (lam, rho) = d.split_at(nl);
            action_axioms_hold(s, lam, rho)
                .iter()
                .all(|&b| b)
                .then(|| (lam.to_vec(), rho.to_vec()))
        })
        .collect()
}

/// LXM1, LXM2 and the morphism property for a boundary `d` (`l x m`,
/// mapping the actee into the actor).
pub fn xmod_conditions_hold(s: Pair<'_>, d: &[u32], lam: &[u32], rho: &[u32]) -> bool {
    let (p, l, m) = (s.p as u64, s.l, s.m);
    let bl = |i, j, k| s.actor[idx(l, l, i, j, k)] as u64;
    let bm = |i, j, k| s.actee[idx(m, m, i, j, k)] as u64;
    let la = |x, a, k| lam[idx(m, m, x, a, k)] as u64;
    let rh = |a, x, k| rho[idx(l, m, a, x, k)] as u64;
    let dd = |r: usize, c: usize| d[r * m + c] as u64;
    for a in 0..m {
        for b in 0..m {
            for k in 0..l {
                let mut lhs = 0;
                for w in 0..m {
                    lhs += bm(a, b, w) * dd(k, w);
                }
                let mut rhs = 0;
                for u in 0..l {
                    for v in 0..l {
                        rhs += dd(u, a) * dd(v, b) * bl(u, v, k);
                    }
                }
                if lhs % p != rhs % p {
                    return false;
                }
            }
            for k in 0..m {
                let (mut right, mut left) = (0, 0);
                for u in 0..l {
                    right += dd(u, b) * rh(a, u, k);
                    left += dd(u, b) * la(u, a, k);
                }
                if right % p != bm(a, b, k) || left % p != bm(b, a, k) {
                    return false;
                }
            }
        }
        for x in 0..l {
            for k in 0..l {
                let (mut eq_l, mut eq_r, mut br_l, mut br_r) = (0, 0, 0, 0);
                for w in 0..m {
                    eq_l += la(x, a, w) * dd(k, w);
                    eq_r += rh(a, x, w) * dd(k, w);
                }
                for u in 0..l {
                    br_l += dd(u, a) * bl(x, u, k);
                    br_r += dd(u, a) * bl(u, x, k);
                }
                if eq_l % p != br_l % p || eq_r % p != br_r % p {
                    return false;
                }
            }
        }
    }
    action_axioms_hold(s, lam, rho).iter().all(|&b| b)
}

/// Every crossed module structure `(d, lam, rho)` with actee as `L1` and
/// actor as `L0`, lexicographic in `d ++ lam ++ rho`.
pub fn brute_force_xmods(s: Pair<'_>) -> Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> {
    let nd = s.l * s.m;
    let nl = s.l * s.m * s.m;
    let len = nd + 2 * nl;
    (0..count(s.p, len).expect("small search"))
        .filter_map(|i| {
            let v = digits(s.p, len, i);
            let (d, rest) = v.split_at(nd);
            let (lam, rho) = rest.split_at(nl);
            xmod_conditions_hold(s, d, lam, rho).then(|| (d.to_vec(), lam.to_vec(), rho.to_vec()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_counts() {
        assert_eq!(brute_force_leibniz(1, 2), vec![vec![0]]);
        assert_eq!(brute_force_leibniz(1, 3), vec![vec![0]]);
        assert_eq!(brute_force_leibniz(0, 2), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn a2_passes_and_its_perturbation_fails() {
        let mut c = vec![0; 8];
        c[1] = 1; // [e1, e1] = e2
        assert!(leibniz_identity_holds(&c, 2, 2));
        c[0] = 1; // [e1, e1] = e1 + e2
        assert!(!leibniz_identity_holds(&c, 2, 2));
    }

    #[test]
    fn digits_are_lexicographic() {
        assert_eq!(digits(3, 3, 0), vec![0, 0, 0]);
        assert_eq!(digits(3, 3, 5), vec![0, 1, 2]);
        assert_eq!(digits(2, 2, 3), vec![1, 1]);
    }
}
