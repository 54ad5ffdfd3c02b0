//! Leibniz actions, split extensions, derived actions and semidirect products.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_field, LeibnizAlgebra, LinearMorphism};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{is_zero_vec, vec_add, vec_sub, Matrix};
use crate::tensor::Tensor3;

/// The six compatibility axioms of a Leibniz action of `L` on `M`
/// (`x, y` in `L`, `m, n` in `M`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionAxiom {
    /// `x.[m,n] = [x.m, n] - [x.n, m]`
    I,
    /// `[m, x.n] = [m.x, n] - [m,n].x`
    II,
    /// `[m, n.x] = [m,n].x - [m.x, n]`
    III,
    /// `x.(y.m) = [x,y].m - (x.m).y`
    IV,
    /// `x.(m.y) = (x.m).y - [x,y].m`
    V,
    /// `m.[x,y] = (m.x).y - (m.y).x`
    VI,
}

impl ActionAxiom {
    pub const ALL: [ActionAxiom; 6] = [
        ActionAxiom::I,
        ActionAxiom::II,
        ActionAxiom::III,
        ActionAxiom::IV,
        ActionAxiom::V,
        ActionAxiom::VI,
    ];

    pub fn label(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi"][self as usize]
    }
}

impl fmt::Display for ActionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

/// Borrowed view of an action's data, shared by validation and enumeration.
#[derive(Clone, Copy)]
pub(crate) struct ActionParts<'a> {
    pub actor: &'a LeibnizAlgebra,
    pub actee: &'a LeibnizAlgebra,
    pub left: &'a Tensor3,
    pub right: &'a Tensor3,
}

impl<'a> ActionParts<'a> {
    pub fn lam(&self, x: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.left.eval_unchecked(x, m)
    }

    pub fn rho(&self, m: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.right.eval_unchecked(m, x)
    }

    fn index_dims(&self, axiom: ActionAxiom) -> [usize; 3] {
        let (l, m) = (self.actor.dim(), self.actee.dim());
        match axiom {
            ActionAxiom::I => [l, m, m],
            ActionAxiom::II => [m, l, m],
            ActionAxiom::III => [m, m, l],
            ActionAxiom::IV => [l, l, m],
            ActionAxiom::V => [l, m, l],
            ActionAxiom::VI => [m, l, l],
        }
    }

    /// `lhs - rhs` of the axiom at one triple of basis indices.
    pub fn residual_at(&self, axiom: ActionAxiom, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let ex = |i| self.actor.unit(i);
        let em = |i| self.actee.unit(i);
        let brm = |u: &[Scalar], v: &[Scalar]| self.actee.br(u, v);
        match axiom {
            ActionAxiom::I => {
                let (x, m, n) = (ex(a), em(b), em(c));
                let lhs = self.lam(&x, self.actee.bracket_basis(b, c));
                vec_add(&vec_sub(&lhs, &brm(&self.lam(&x, &m), &n)), &brm(&self.lam(&x, &n), &m))
            }
            ActionAxiom::II => {
                let (m, x, n) = (em(a), ex(b), em(c));
                let lhs = brm(&m, &self.lam(&x, &n));
                let t1 = brm(&self.rho(&m, &x), &n);
                let t2 = self.rho(self.actee.bracket_basis(a, c), &x);
                vec_add(&vec_sub(&lhs, &t1), &t2)
            }
            ActionAxiom::III => {
                let (m, n, x) = (em(a), em(b), ex(c));
                let lhs = brm(&m, &self.rho(&n, &x));
                let t1 = self.rho(self.actee.bracket_basis(a, b), &x);
                let t2 = brm(&self.rho(&m, &x), &n);
                vec_add(&vec_sub(&lhs, &t1), &t2)
            }
            ActionAxiom::IV => {
                let (x, y, m) = (ex(a), ex(b), em(c));
                let lhs = self.lam(&x, &self.lam(&y, &m));
                let t1 = self.lam(self.actor.bracket_basis(a, b), &m);
                let t2 = self.rho(&self.lam(&x, &m), &y);
                vec_add(&vec_sub(&lhs, &t1), &t2)
            }
            ActionAxiom::V => {
                let (x, m, y) = (ex(a), em(b), ex(c));
                let lhs = self.lam(&x, &self.rho(&m, &y));
                let t1 = self.rho(&self.lam(&x, &m), &y);
                let t2 = self.lam(self.actor.bracket_basis(a, c), &m);
                vec_add(&vec_sub(&lhs, &t1), &t2)
            }
            ActionAxiom::VI => {
                let (m, x, y) = (em(a), ex(b), ex(c));
                let lhs = self.rho(&m, self.actor.bracket_basis(b, c));
                let t1 = self.rho(&self.rho(&m, &x), &y);
                let t2 = self.rho(&self.rho(&m, &y), &x);
                vec_add(&vec_sub(&lhs, &t1), &t2)
            }
        }
    }

    pub fn residuals(&self, axiom: ActionAxiom) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let [p, q, r] = self.index_dims(axiom);
        (0..p).flat_map(move |a| {
            (0..q).flat_map(move |b| (0..r).map(move |c| self.residual_at(axiom, a, b, c)))
        })
    }

    pub fn holds(&self, axiom: ActionAxiom) -> bool {
        self.residuals(axiom).all(|r| is_zero_vec(&r))
    }
}

/// Per-axiom outcome of [`validate_action`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub axioms: [bool; 6],
}

impl ActionReport {
    pub fn all_ok(&self) -> bool {
        self.axioms.iter().all(|&b| b)
    }

    pub fn holds(&self, axiom: ActionAxiom) -> bool {
        self.axioms[axiom as usize]
    }
}

/// A Leibniz action of `actor` (`L`) on `actee` (`M`): a left map
/// `L x M -> M, (x, m) -> x.m` and a right map `M x L -> M, (m, x) -> m.x`,
/// both stored as tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAction {
    actor: Arc<LeibnizAlgebra>,
    actee: Arc<LeibnizAlgebra>,
    left: Tensor3,
    right: Tensor3,
}

impl LeibnizAction {
    pub fn new(
        actor: Arc<LeibnizAlgebra>,
        actee: Arc<LeibnizAlgebra>,
        left: Tensor3,
        right: Tensor3,
    ) -> Result<Self> {
        let f = actor.field();
        same_field(f, actee.field())?;
        same_field(f, left.field())?;
        same_field(f, right.field())?;
        let (l, m) = (actor.dim(), actee.dim());
        if left.dims() != [l, m, m] || right.dims() != [m, l, m] {
            return Err(Error::Malformed(format!(
                "action tensors must be {l}x{m}x{m} and {m}x{l}x{m}, got {:?} and {:?}",
                left.dims(),
                right.dims()
            )));
        }
        Ok(LeibnizAction {
            actor,
            actee,
            left,
            right,
        })
    }

    /// Both maps identically zero.
    pub fn trivial(actor: Arc<LeibnizAlgebra>, actee: Arc<LeibnizAlgebra>) -> Result<Self> {
        let (l, m) = (actor.dim(), actee.dim());
        let f = actor.field();
        LeibnizAction::new(actor, actee, Tensor3::zeros(f, l, m, m), Tensor3::zeros(f, m, l, m))
    }

    /// The action of an algebra on itself by its bracket.
    pub fn by_bracket(a: Arc<LeibnizAlgebra>) -> Self {
        let t = a.tensor().clone();
        LeibnizAction {
            actor: a.clone(),
            actee: a,
            left: t.clone(),
            right: t,
        }
    }

    pub fn actor(&self) -> &Arc<LeibnizAlgebra> {
        &self.actor
    }

    pub fn actee(&self) -> &Arc<LeibnizAlgebra> {
        &self.actee
    }

    pub fn left(&self) -> &Tensor3 {
        &self.left
    }

    pub fn right(&self) -> &Tensor3 {
        &self.right
    }

    pub(crate) fn parts(&self) -> ActionParts<'_> {
        ActionParts {
            actor: &self.actor,
            actee: &self.actee,
            left: &self.left,
            right: &self.right,
        }
    }

    /// `x.m`
    pub fn act_left(&self, x: &[Scalar], m: &[Scalar]) -> Result<Vec<Scalar>> {
        self.left.eval(x, m)
    }

    /// `m.x`
    pub fn act_right(&self, m: &[Scalar], x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.right.eval(m, x)
    }

    pub fn validate(&self) -> ActionReport {
        let parts = self.parts();
        ActionReport {
            axioms: ActionAxiom::ALL.map(|a| parts.holds(a)),
        }
    }
}

pub fn validate_action(a: &LeibnizAction) -> ActionReport {
    a.validate()
}

/// `0 -> K --i--> E --p--> L -> 0` together with a section `s` of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension {
    i: LinearMorphism,
    p: LinearMorphism,
    s: LinearMorphism,
}

/// Individual conditions checked by [`validate_split_extension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub maps_ok: bool,
    pub i_injective: bool,
    pub p_surjective: bool,
    pub exact: bool,
    pub section_ok: bool,
}

impl ExtensionReport {
    pub fn all_ok(&self) -> bool {
        self.maps_ok && self.i_injective && self.p_surjective && self.exact && self.section_ok
    }
}

impl SplitExtension {
    pub fn new(i: LinearMorphism, p: LinearMorphism, s: LinearMorphism) -> Result<Self> {
        if i.target() != p.source() || s.target() != p.source() || s.source() != p.target() {
            return Err(Error::Malformed(
                "split extension maps must be i: K -> E, p: E -> L, s: L -> E".into(),
            ));
        }
        Ok(SplitExtension { i, p, s })
    }

    pub fn kernel_alg(&self) -> &Arc<LeibnizAlgebra> {
        self.i.source()
    }

    pub fn middle_alg(&self) -> &Arc<LeibnizAlgebra> {
        self.p.source()
    }

    pub fn base_alg(&self) -> &Arc<LeibnizAlgebra> {
        self.p.target()
    }

    pub fn i(&self) -> &LinearMorphism {
        &self.i
    }

    pub fn p(&self) -> &LinearMorphism {
        &self.p
    }

    pub fn s(&self) -> &LinearMorphism {
        &self.s
    }

    pub fn report(&self) -> ExtensionReport {
        let ps = self.p.matrix().mul(self.s.matrix()).expect("adjacent maps");
        ExtensionReport {
            maps_ok: self.i.check_morphism() && self.p.check_morphism() && self.s.check_morphism(),
            i_injective: self.i.matrix().is_injective(),
            p_surjective: self.p.matrix().is_surjective(),
            exact: self.p.kernel() == self.i.image(),
            section_ok: ps == Matrix::identity(ps.field(), ps.rows()),
        }
    }

    fn require_valid(&self) -> Result<()> {
        if self.report().all_ok() {
            Ok(())
        } else {
            Err(Error::Invalid("not a split extension".into()))
        }
    }
}

pub fn validate_split_extension(e: &SplitExtension) -> bool {
    e.report().all_ok()
}

/// The action of `L` on `K` induced by a split extension:
/// `x.m = [s(x), m]` and `m.x = [m, s(x)]`, computed in `E` and pulled back
/// along `i`.
pub fn derived_action(e: &SplitExtension) -> Result<LeibnizAction> {
    e.require_valid()?;
    let (k_alg, e_alg, l_alg) = (e.kernel_alg(), e.middle_alg(), e.base_alg());
    let i = e.i.matrix();
    let i_inv = i
        .left_inverse()
        .ok_or_else(|| Error::Internal("injective map without a left inverse".into()))?;
    let pull_back = |v: Vec<Scalar>| -> Result<Vec<Scalar>> {
        let coords = i_inv.mul_vec(&v);
        if i.mul_vec(&coords) != v {
            return Err(Error::Internal("derived action escapes the image of i".into()));
        }
        Ok(coords)
    };
    let (l, k) = (l_alg.dim(), k_alg.dim());
    let f = e_alg.field();
    let s_img: Vec<Vec<Scalar>> = (0..l).map(|x| e.s.matrix().column(x)).collect();
    let i_img: Vec<Vec<Scalar>> = (0..k).map(|m| i.column(m)).collect();
    let mut left = Vec::with_capacity(l * k * k);
    for sx in &s_img {
        for im in &i_img {
            left.extend(pull_back(e_alg.br(sx, im))?);
        }
    }
    let mut right = Vec::with_capacity(l * k * k);
    for im in &i_img {
        for sx in &s_img {
            right.extend(pull_back(e_alg.br(im, sx))?);
        }
    }
    LeibnizAction::new(
        l_alg.clone(),
        k_alg.clone(),
        Tensor3::from_flat(f, [l, k, k], left)?,
        Tensor3::from_flat(f, [k, l, k], right)?,
    )
}

/// `M x| L` with `[(m,x),(n,y)] = ([m,n] + m.y + x.n, [x,y])`, together with
/// its canonical split extension `i(m) = (m,0)`, `p(m,x) = x`, `s(x) = (0,x)`.
pub fn semidirect(act: &LeibnizAction) -> Result<(Arc<LeibnizAlgebra>, SplitExtension)> {
    if !act.validate().all_ok() {
        return Err(Error::Invalid("action fails the Leibniz action axioms".into()));
    }
    let alg = Arc::new(semidirect_algebra(act)?);
    let (m, l) = (act.actee.dim(), act.actor.dim());
    let f = alg.field();
    let i = Matrix::identity(f, m).vstack(&Matrix::zeros(f, l, m))?;
    let p = Matrix::zeros(f, l, m).hstack(&Matrix::identity(f, l))?;
    let s = Matrix::zeros(f, m, l).vstack(&Matrix::identity(f, l))?;
    let ext = SplitExtension::new(
        LinearMorphism::new(act.actee.clone(), alg.clone(), i)?,
        LinearMorphism::new(alg.clone(), act.actor.clone(), p)?,
        LinearMorphism::new(act.actor.clone(), alg.clone(), s)?,
    )?;
    Ok((alg, ext))
}

pub(crate) fn semidirect_algebra(act: &LeibnizAction) -> Result<LeibnizAlgebra> {
    let (m, l) = (act.actee.dim(), act.actor.dim());
    let f = act.actor.field();
    let tensor = Tensor3::from_fn(f, [m + l, m + l, m + l], |a, b| {
        let mut out = f.zeros(m + l);
        match (a < m, b < m) {
            (true, true) => out[..m].clone_from_slice(act.actee.bracket_basis(a, b)),
            (true, false) => out[..m].clone_from_slice(act.right.basis_product(a, b - m)),
            (false, true) => out[..m].clone_from_slice(act.left.basis_product(a - m, b)),
            (false, false) => out[m..].clone_from_slice(act.actor.bracket_basis(a - m, b - m)),
        }
        out
    });
    let names = act
        .actee
        .basis_names()
        .iter()
        .map(|n| format!("({n},0)"))
        .chain(act.actor.basis_names().iter().map(|x| format!("(0,{x})")))
        .collect();
    LeibnizAlgebra::new(tensor, Some(names))
        .map_err(|e| Error::Internal(format!("semidirect product is not Leibniz: {e}")))
}

/// The isomorphism `theta: K x| L -> E, (m, x) -> i(m) + s(x)` and its inverse
/// `e -> (e - s p e, p e)`, where `K x| L` carries the derived action.
pub fn extension_iso(e: &SplitExtension) -> Result<(LinearMorphism, LinearMorphism)> {
    let act = derived_action(e)?;
    let (sd, _) = semidirect(&act)?;
    let f = sd.field();
    let (i, p, s) = (e.i.matrix(), e.p.matrix(), e.s.matrix());
    let theta = i.hstack(s)?;
    let i_inv = i
        .left_inverse()
        .ok_or_else(|| Error::Internal("injective map without a left inverse".into()))?;
    let n = e.middle_alg().dim();
    let residue = Matrix::identity(f, n).sub(&s.mul(p)?)?;
    let theta_inv = i_inv.mul(&residue)?.vstack(p)?;
    let forward = LinearMorphism::new(sd.clone(), e.middle_alg().clone(), theta)?;
    let backward = LinearMorphism::new(e.middle_alg().clone(), sd.clone(), theta_inv)?;
    let round_trip_ok = forward.matrix().mul(backward.matrix())? == Matrix::identity(f, n)
        && backward.matrix().mul(forward.matrix())? == Matrix::identity(f, sd.dim());
    if !round_trip_ok || !forward.check_morphism() || !backward.check_morphism() {
        return Err(Error::Internal("theta is not an isomorphism of Leibniz algebras".into()));
    }
    Ok((forward, backward))
}

impl SplitExtension {
    /// The extension `0 -> L -> L x| L -> L -> 0` of the action of `L` on
    /// itself by brackets.
    pub fn self_extension(a: Arc<LeibnizAlgebra>) -> Result<Self> {
        Ok(semidirect(&LeibnizAction::by_bracket(a))?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures::{a2, abelian, lie2};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(q(), cols, rows.iter().map(|r| r.iter().map(|&x| q().from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn trivial_action_on_abelian_satisfies_everything() {
        let act = LeibnizAction::trivial(Arc::new(a2(q())), Arc::new(abelian(q(), 2))).unwrap();
        assert!(act.validate().all_ok());
    }

    #[test]
    fn self_action_of_a2() {
        let act = LeibnizAction::by_bracket(Arc::new(a2(q())));
        assert_eq!(act.validate().axioms, [true; 6]);
    }

    #[test]
    fn bracket_left_with_zero_right_on_nilpotent_a2_is_still_an_action() {
        // Every triple product in A2 vanishes, so each axiom reduces to 0 = 0.
        let a = Arc::new(a2(q()));
        let act = LeibnizAction::new(a.clone(), a.clone(), a.tensor().clone(), Tensor3::zeros(q(), 2, 2, 2))
            .unwrap();
        assert!(act.validate().all_ok());
    }

    #[test]
    fn bracket_left_with_zero_right_breaks_axiom_two() {
        // [e1,e2] = e2 = -[e2,e1]; at m = e1, x = e1, n = e2:
        // [m, x.n] = [e1, e2] = e2 but [m.x, n] - [m,n].x = 0.
        let a = Arc::new(lie2(q()));
        let act = LeibnizAction::new(a.clone(), a.clone(), a.tensor().clone(), Tensor3::zeros(q(), 2, 2, 2))
            .unwrap();
        let parts = act.parts();
        assert_eq!(parts.residual_at(ActionAxiom::II, 0, 0, 1), vec![q().zero(), q().one()]);
        assert!(!act.validate().holds(ActionAxiom::II));
    }

    #[test]
    fn self_extension_of_a2_is_valid() {
        let e = SplitExtension::self_extension(Arc::new(a2(q()))).unwrap();
        assert!(validate_split_extension(&e));
        assert_eq!(e.middle_alg().dim(), 4);
    }

    #[test]
    fn broken_extensions() {
        let a = Arc::new(a2(q()));
        let e = SplitExtension::self_extension(a.clone()).unwrap();
        let zero_s = LinearMorphism::zero(a.clone(), e.middle_alg().clone()).unwrap();
        let bad = SplitExtension::new(e.i().clone(), e.p().clone(), zero_s).unwrap();
        let r = bad.report();
        assert!(!r.section_ok && !validate_split_extension(&bad));

        let diag_i = mat(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]);
        let i = LinearMorphism::new(a.clone(), e.middle_alg().clone(), diag_i).unwrap();
        let bad = SplitExtension::new(i, e.p().clone(), e.s().clone()).unwrap();
        assert!(!bad.report().exact);
        assert!(!validate_split_extension(&bad));
        assert!(derived_action(&bad).is_err());
    }

    #[test]
    fn derived_action_of_self_extension_is_bracket_action() {
        let a = Arc::new(a2(q()));
        let e = SplitExtension::self_extension(a.clone()).unwrap();
        assert_eq!(derived_action(&e).unwrap(), LeibnizAction::by_bracket(a));
    }

    #[test]
    fn direct_product_extension_gives_trivial_action() {
        let k = Arc::new(a2(q()));
        let l = Arc::new(a2(q()));
        let e_alg = Arc::new(k.direct_product(&l).unwrap());
        let i = Matrix::identity(q(), 2).vstack(&Matrix::zeros(q(), 2, 2)).unwrap();
        let p = Matrix::zeros(q(), 2, 2).hstack(&Matrix::identity(q(), 2)).unwrap();
        let s = p.transpose();
        let e = SplitExtension::new(
            LinearMorphism::new(k.clone(), e_alg.clone(), i).unwrap(),
            LinearMorphism::new(e_alg.clone(), l.clone(), p).unwrap(),
            LinearMorphism::new(l.clone(), e_alg, s).unwrap(),
        )
        .unwrap();
        assert_eq!(derived_action(&e).unwrap(), LeibnizAction::trivial(l, k).unwrap());
    }

    #[test]
    fn semidirect_of_trivial_abelian_action() {
        let a1 = Arc::new(abelian(q(), 1));
        let act = LeibnizAction::trivial(a1.clone(), a1).unwrap();
        let (alg, ext) = semidirect(&act).unwrap();
        assert_eq!(alg.tensor(), abelian(q(), 2).tensor());
        assert!(validate_split_extension(&ext));
        assert_eq!(derived_action(&ext).unwrap(), act);
    }

    #[test]
    fn semidirect_restricts_to_factor_brackets() {
        let a = Arc::new(a2(q()));
        let (alg, _) = semidirect(&LeibnizAction::by_bracket(a.clone())).unwrap();
        let f = q();
        let emb = |v: &[Scalar], first: bool| -> Vec<Scalar> {
            let z = f.zeros(2);
            if first {
                crate::linalg::concat(v, &z)
            } else {
                crate::linalg::concat(&z, v)
            }
        };
        for i in 0..2 {
            for j in 0..2 {
                let (ei, ej) = (a.unit(i), a.unit(j));
                let br = a.bracket_basis(i, j);
                assert_eq!(alg.br(&emb(&ei, true), &emb(&ej, true)), emb(br, true));
                assert_eq!(alg.br(&emb(&ei, false), &emb(&ej, false)), emb(br, false));
            }
        }
    }

    #[test]
    fn semidirect_rejects_invalid_action() {
        let a = Arc::new(lie2(q()));
        let act = LeibnizAction::new(a.clone(), a.clone(), a.tensor().clone(), Tensor3::zeros(q(), 2, 2, 2))
            .unwrap();
        assert!(matches!(semidirect(&act), Err(Error::Invalid(_))));
    }

    #[test]
    fn theta_for_canonical_extension_is_identity() {
        let a = Arc::new(a2(q()));
        let e = SplitExtension::self_extension(a).unwrap();
        let (theta, theta_inv) = extension_iso(&e).unwrap();
        assert_eq!(theta.matrix(), &Matrix::identity(q(), 4));
        assert_eq!(theta_inv.matrix(), &Matrix::identity(q(), 4));
    }

    #[test]
    fn theta_for_twisted_section() {
        // E = A2 x A2 with i(m) = (m, 0), p(a, b) = b and the diagonal section s(x) = (x, x).
        let a = Arc::new(a2(q()));
        let e_alg = Arc::new(a.direct_product(&a).unwrap());
        let i = LinearMorphism::new(a.clone(), e_alg.clone(), mat(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]])).unwrap();
        let p = LinearMorphism::new(e_alg.clone(), a.clone(), mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap();
        let s = LinearMorphism::new(a.clone(), e_alg, mat(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]])).unwrap();
        let e = SplitExtension::new(i, p, s).unwrap();
        assert!(validate_split_extension(&e));
        let act = derived_action(&e).unwrap();
        assert_eq!(act, LeibnizAction::by_bracket(a));
        let (theta, theta_inv) = extension_iso(&e).unwrap();
        assert_eq!(theta.matrix(), &mat(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(
            theta_inv.matrix(),
            &mat(&[&[1, 0, -1, 0], &[0, 1, 0, -1], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
    }
}
