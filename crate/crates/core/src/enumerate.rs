//! Exhaustive enumeration of small structures over GF(p).
//!
//! Algebras are enumerated by brute force over all tensors. Actions and
//! crossed modules are enumerated in two stages: first the right action,
//! constrained by every condition that is linear in it, filtered by the one
//! quadratic condition; then the left action given the right one, likewise.
//! The linear conditions are solved exactly, so each stage walks an affine
//! solution space rather than the whole tensor space.

use std::sync::Arc;

use rayon::prelude::*;

use crate::action::{ActionAxiom, LeibnizAction};
use crate::algebra::{LeibnizAlgebra, LinearMorphism};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{vec_sub, Matrix};
use crate::oracle;
use crate::tensor::Tensor3;
use crate::xmod::{CrossedModule, XModCondition, XModParts};

/// Candidates examined per call unless a budget is given.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

fn prime_of(f: FieldSpec) -> Result<u32> {
    match f {
        FieldSpec::Prime(p) => Ok(p),
        FieldSpec::Rational => Err(Error::InvalidField("enumeration needs a prime field".into())),
    }
}

/// All Leibniz algebras of dimension `dim` over GF(p) with the default basis,
/// in lexicographic order of their flat tensors.
pub fn enumerate_leibniz(dim: usize, p: u32) -> Result<Vec<LeibnizAlgebra>> {
    enumerate_leibniz_with_budget(dim, p, DEFAULT_BUDGET)
}

/// Brute force over all `p^(dim^3)` tensors, which must not exceed `budget`.
/// The identity is checked by [`oracle::leibniz_identity_holds`]; each hit is
/// then re-validated by the library and a disagreement is an error.
pub fn enumerate_leibniz_with_budget(dim: usize, p: u32, budget: u64) -> Result<Vec<LeibnizAlgebra>> {
    FieldSpec::prime(p)?;
    let len = dim.pow(3);
    let total = oracle::count(p, len).filter(|&t| t <= budget).ok_or(Error::BudgetExceeded {
        needed: (p as u128).saturating_pow(len as u32),
        budget,
    })?;
    let hits: Vec<Vec<u32>> = (0..total)
        .into_par_iter()
        .map(|i| oracle::digits(p, len, i))
        .filter(|c| oracle::leibniz_identity_holds(c, dim, p))
        .collect();
    hits.into_iter()
        .map(|c| {
            LeibnizAlgebra::new(oracle::tensor_from_residues(p, [dim, dim, dim], &c), None)
                .map_err(|_| Error::Internal("oracle and validator disagree".into()))
        })
        .collect()
}

/// Solutions of an affine system `R(u) = 0` in `n` unknowns, where `R` is
/// affine: `R(u) = R(0) + A u`.
struct Affine {
    p: u32,
    point: Vec<u32>,
    directions: Vec<Vec<u32>>,
}

impl Affine {
    fn solve(f: FieldSpec, n: usize, residual: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Result<Option<Affine>> {
        let p = prime_of(f)?;
        let zero = f.zeros(n);
        let r0 = residual(&zero);
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| vec_sub(&residual(&f.unit(n, j)), &r0)).collect();
        let a = Matrix::from_columns(f, r0.len(), &cols)?;
        let rhs: Vec<Scalar> = r0.iter().map(|c| -c).collect();
        let Some(point) = a.solve(&rhs)? else {
            return Ok(None);
        };
        let to_u32 = |v: &[Scalar]| v.iter().map(|c| c.residue().expect("prime field")).collect::<Vec<u32>>();
        Ok(Some(Affine {
            p,
            point: to_u32(&point),
            directions: a.kernel().basis().iter().map(|v| to_u32(v)).collect(),
        }))
    }

    fn size(&self) -> u128 {
        (self.p as u128).saturating_pow(self.directions.len() as u32)
    }

    fn member(&self, index: u64) -> Vec<u32> {
        let coeffs = oracle::digits(self.p, self.directions.len(), index);
        let p = self.p as u64;
        let mut v: Vec<u64> = self.point.iter().map(|&x| x as u64).collect();
        for (c, dir) in coeffs.iter().zip(&self.directions) {
            for (slot, &d) in v.iter_mut().zip(dir) {
                *slot = (*slot + *c as u64 * d as u64) % p;
            }
        }
        v.into_iter().map(|x| x as u32).collect()
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn charge(&mut self, n: u128) -> Result<u64> {
        let needed = self.used as u128 + n;
        if needed > self.limit as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.limit,
            });
        }
        self.used = needed as u64;
        Ok(n as u64)
    }
}

fn scalars(f: FieldSpec, v: &[u32]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x as i64)).collect()
}

/// Dense residue view used for the quadratic filters.
struct Dense<'a> {
    p: u64,
    l: usize,
    m: usize,
    actor: &'a [u32],
}

impl Dense<'_> {
    /// `m.[x,y] = (m.x).y - (m.y).x`
    fn axiom_vi(&self, rho: &[u32]) -> bool {
        let (p, l, m) = (self.p, self.l, self.m);
        let r = |a: usize, x: usize, k: usize| rho[(a * l + x) * m + k] as u64;
        let b = |x: usize, y: usize, z: usize| self.actor[(x * l + y) * l + z] as u64;
        for a in 0..m {
            for x in 0..l {
                for y in 0..l {
                    for k in 0..m {
                        let mut acc = 0u64;
                        for z in 0..l {
                            acc += b(x, y, z) * r(a, z, k);
                        }
                        for w in 0..m {
                            acc += (p - r(a, x, w)) * r(w, y, k);
                            acc += r(a, y, w) * r(w, x, k);
                        }
                        if acc % p != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `x.(y.m) = [x,y].m - (x.m).y`
    fn axiom_iv(&self, lam: &[u32], rho: &[u32]) -> bool {
        let (p, l, m) = (self.p, self.l, self.m);
        let la = |x: usize, a: usize, k: usize| lam[(x * m + a) * m + k] as u64;
        let r = |a: usize, x: usize, k: usize| rho[(a * l + x) * m + k] as u64;
        let b = |x: usize, y: usize, z: usize| self.actor[(x * l + y) * l + z] as u64;
        for x in 0..l {
            for y in 0..l {
                for a in 0..m {
                    for k in 0..m {
                        let mut acc = 0u64;
                        for w in 0..m {
                            acc += la(y, a, w) * la(x, w, k);
                            acc += la(x, a, w) * r(w, y, k);
                        }
                        for z in 0..l {
                            acc += (p - b(x, y, z)) * la(z, a, k);
                        }
                        if acc % p != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Either a bare action or a crossed module with a fixed boundary.
struct Problem<'a> {
    actor: &'a Arc<LeibnizAlgebra>,
    actee: &'a Arc<LeibnizAlgebra>,
    boundary: Option<&'a Matrix>,
}

impl Problem<'_> {
    fn field(&self) -> FieldSpec {
        self.actor.field()
    }

    fn action(&self, lam: &[Scalar], rho: &[Scalar]) -> LeibnizAction {
        let (l, m) = (self.actor.dim(), self.actee.dim());
        let f = self.field();
        LeibnizAction::new(
            self.actor.clone(),
            self.actee.clone(),
            Tensor3::from_flat(f, [l, m, m], lam.to_vec()).expect("sized"),
            Tensor3::from_flat(f, [m, l, m], rho.to_vec()).expect("sized"),
        )
        .expect("shapes match")
    }

    fn residuals(&self, act: &LeibnizAction, axioms: &[ActionAxiom], conds: &[XModCondition]) -> Vec<Scalar> {
        let parts = act.parts();
        let mut out: Vec<Scalar> = axioms.iter().flat_map(|&a| parts.residuals(a).flatten()).collect();
        if let Some(d) = self.boundary {
            let x = XModParts {
                boundary: d,
                action: parts,
            };
            out.extend(conds.iter().flat_map(|&c| x.residuals(c).flatten()));
        }
        out
    }

    /// All `(lam, rho)` pairs satisfying the action axioms and, with a
    /// boundary, LXM1 and LXM2.
    fn solve(&self, budget: &mut Budget) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
        let f = self.field();
        let p = prime_of(f)?;
        let (l, m) = (self.actor.dim(), self.actee.dim());
        let n = l * m * m;
        let zero = f.zeros(n);
        let dense = Dense {
            p: p as u64,
            l,
            m,
            actor: &oracle::residues(self.actor.tensor()),
        };

        let stage1 = Affine::solve(f, n, |rho| {
            self.residuals(
                &self.action(&zero, rho),
                &[ActionAxiom::III],
                &[XModCondition::EquivariantRight, XModCondition::PeifferRight],
            )
        })?;
        let Some(stage1) = stage1 else {
            return Ok(Vec::new());
        };
        let rhos: Vec<Vec<u32>> = (0..budget.charge(stage1.size())?)
            .map(|i| stage1.member(i))
            .filter(|rho| dense.axiom_vi(rho))
            .collect();

        let mut out = Vec::new();
        for rho in rhos {
            let rho_s = scalars(f, &rho);
            let stage2 = Affine::solve(f, n, |lam| {
                self.residuals(
                    &self.action(lam, &rho_s),
                    &[ActionAxiom::I, ActionAxiom::II, ActionAxiom::V],
                    &[XModCondition::EquivariantLeft, XModCondition::PeifferLeft],
                )
            })?;
            let Some(stage2) = stage2 else { continue };
            for i in 0..budget.charge(stage2.size())? {
                let lam = stage2.member(i);
                if dense.axiom_iv(&lam, &rho) {
                    out.push((lam, rho.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Every action of `actor` on `actee` over GF(p), sorted by `(lambda, rho)`.
pub fn enumerate_actions(actor: &Arc<LeibnizAlgebra>, actee: &Arc<LeibnizAlgebra>) -> Result<Vec<LeibnizAction>> {
    enumerate_actions_with_budget(actor, actee, DEFAULT_BUDGET)
}

/// The budget bounds the number of candidates examined across both stages.
pub fn enumerate_actions_with_budget(
    actor: &Arc<LeibnizAlgebra>,
    actee: &Arc<LeibnizAlgebra>,
    budget: u64,
) -> Result<Vec<LeibnizAction>> {
    crate::algebra::same_field(actor.field(), actee.field())?;
    let problem = Problem {
        actor,
        actee,
        boundary: None,
    };
    let f = actor.field();
    let mut budget = Budget { used: 0, limit: budget };
    problem
        .solve(&mut budget)?
        .into_iter()
        .map(|(lam, rho)| {
            let act = problem.action(&scalars(f, &lam), &scalars(f, &rho));
            if act.validate().all_ok() {
                Ok(act)
            } else {
                Err(Error::Internal("enumerated action fails validation".into()))
            }
        })
        .collect()
}

/// Every crossed module `(l1, l0, d)` over GF(p): boundaries in lexicographic
/// order, then actions sorted by `(lambda, rho)`.
pub fn enumerate_xmods(l1: &Arc<LeibnizAlgebra>, l0: &Arc<LeibnizAlgebra>) -> Result<Vec<CrossedModule>> {
    enumerate_xmods_with_budget(l1, l0, DEFAULT_BUDGET)
}

/// The budget covers candidate boundaries plus all action candidates.
pub fn enumerate_xmods_with_budget(
    l1: &Arc<LeibnizAlgebra>,
    l0: &Arc<LeibnizAlgebra>,
    budget: u64,
) -> Result<Vec<CrossedModule>> {
    crate::algebra::same_field(l1.field(), l0.field())?;
    let f = l1.field();
    let p = prime_of(f)?;
    let (n1, n0) = (l1.dim(), l0.dim());
    let mut budget = Budget { used: 0, limit: budget };
    let boundaries = budget.charge((p as u128).saturating_pow((n0 * n1) as u32))?;
    let mut out = Vec::new();
    for i in 0..boundaries {
        let d = oracle::matrix_from_residues(p, n0, n1, &oracle::digits(p, n0 * n1, i));
        let boundary = LinearMorphism::new(l1.clone(), l0.clone(), d.clone())?;
        if !boundary.check_morphism() {
            continue;
        }
        let problem = Problem {
            actor: l0,
            actee: l1,
            boundary: Some(&d),
        };
        for (lam, rho) in problem.solve(&mut budget)? {
            let act = problem.action(&scalars(f, &lam), &scalars(f, &rho));
            let x = CrossedModule::new(boundary.clone(), act)?;
            if !x.is_valid() {
                return Err(Error::Internal("enumerated crossed module fails validation".into()));
            }
            out.push(x);
        }
    }
    Ok(out)
}

/// All Leibniz algebras over GF(p) of dimension at most `max_dim`, as shared
/// handles, smallest dimension first.
pub fn small_algebras(max_dim: usize, p: u32) -> Result<Vec<Arc<LeibnizAlgebra>>> {
    let mut out = Vec::new();
    for dim in 0..=max_dim {
        out.extend(enumerate_leibniz(dim, p)?.into_iter().map(Arc::new));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, abelian};

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn leibniz_counts_small() {
        assert_eq!(enumerate_leibniz(0, 2).unwrap().len(), 1);
        assert_eq!(enumerate_leibniz(1, 2).unwrap().len(), 1);
        assert_eq!(enumerate_leibniz(1, 3).unwrap().len(), 1);
        assert!(matches!(enumerate_leibniz(3, 2), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(enumerate_leibniz(1, 4), Err(Error::InvalidField(_))));
    }

    #[test]
    fn zero_algebras_have_one_crossed_module() {
        let z = Arc::new(LeibnizAlgebra::zero(gf(2)));
        assert_eq!(enumerate_xmods(&z, &z).unwrap().len(), 1);
    }

    #[test]
    fn abelian_one_over_gf2() {
        let a = Arc::new(abelian(gf(2), 1));
        let xs = enumerate_xmods(&a, &a).unwrap();
        let has = |d: u32| {
            xs.iter().any(|x| {
                oracle::matrix_residues(x.boundary().matrix()) == vec![d]
                    && x.action().left().is_zero()
                    && x.action().right().is_zero()
            })
        };
        assert!(has(0) && has(1));
    }

    #[test]
    fn a2_over_gf2_includes_identity() {
        let a = Arc::new(a2(gf(2)));
        let xs = enumerate_xmods(&a, &a).unwrap();
        assert!(xs.contains(&CrossedModule::identity(a.clone())));
    }

    #[test]
    fn budget_is_enforced() {
        let a = Arc::new(abelian(gf(3), 2));
        assert!(matches!(
            enumerate_actions_with_budget(&a, &a, 10),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn rationals_rejected() {
        let a = Arc::new(abelian(FieldSpec::Rational, 1));
        assert!(matches!(enumerate_actions(&a, &a), Err(Error::InvalidField(_))));
    }
}
