//! Internal groupoids in the category of Leibniz algebras.
//!
//! A groupoid is stored as `(G, Ob, d0, d1, eps)`. Composition and inverses
//! are not data: they are forced to be `h o k = h - eps d0(h) + k` and
//! `g^-1 = eps d0(g) - g + eps d1(g)`, and validation checks that this
//! composition is a morphism of Leibniz algebras on composable pairs.

use std::sync::Arc;

use crate::action::{semidirect, LeibnizAction};
use crate::algebra::{LeibnizAlgebra, LinearMorphism};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{concat, is_zero_vec, pullback_basis, vec_add, vec_sub, AffineSubspace, Matrix, Subspace};
use crate::tensor::Tensor3;
use crate::xmod::{CrossedModule, XModMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupoidReport {
    /// `d0`, `d1`, `eps` are Leibniz algebra morphisms.
    pub maps_ok: bool,
    /// `d0 eps = d1 eps = 1`.
    pub sections_ok: bool,
    /// `[ker d0, ker d1] = [ker d1, ker d0] = 0`.
    pub kernel_bracket_ok: bool,
    /// The derived composition respects brackets on composable pairs.
    pub interchange_ok: bool,
}

impl GroupoidReport {
    pub fn all_ok(&self) -> bool {
        self.maps_ok && self.sections_ok && self.kernel_bracket_ok && self.interchange_ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransitivityClass {
    OneTransitive,
    Transitive,
    TotallyIntransitive,
    SimplyTransitive,
    NoneOfThese,
}

impl TransitivityClass {
    pub fn is_transitive(self) -> bool {
        matches!(self, TransitivityClass::Transitive | TransitivityClass::OneTransitive)
    }

    pub fn label(self) -> &'static str {
        match self {
            TransitivityClass::OneTransitive => "one_transitive",
            TransitivityClass::Transitive => "transitive",
            TransitivityClass::TotallyIntransitive => "totally_intransitive",
            TransitivityClass::SimplyTransitive => "simply_transitive",
            TransitivityClass::NoneOfThese => "none_of_these",
        }
    }
}

/// Linear criteria computed from the joint map `(d0, d1): G -> Ob x Ob`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transitivity {
    /// `(d0, d1)` is onto: every hom-set is nonempty.
    pub transitive: bool,
    /// `ker d0 /\ ker d1 = 0`: every hom-set has at most one arrow.
    pub simply_transitive: bool,
    /// `d0 = d1`: no arrows between distinct objects.
    pub totally_intransitive: bool,
}

impl Transitivity {
    /// Collapses the flags, preferring the strongest statement. A discrete
    /// groupoid is both totally intransitive and simply transitive; it is
    /// reported as totally intransitive.
    pub fn class(&self) -> TransitivityClass {
        match (self.transitive, self.simply_transitive, self.totally_intransitive) {
            (true, true, _) => TransitivityClass::OneTransitive,
            (true, false, _) => TransitivityClass::Transitive,
            (false, _, true) => TransitivityClass::TotallyIntransitive,
            (false, true, false) => TransitivityClass::SimplyTransitive,
            (false, false, false) => TransitivityClass::NoneOfThese,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalGroupoid {
    d0: LinearMorphism,
    d1: LinearMorphism,
    eps: LinearMorphism,
}

impl InternalGroupoid {
    pub fn new(
        arrows: Arc<LeibnizAlgebra>,
        objects: Arc<LeibnizAlgebra>,
        d0: Matrix,
        d1: Matrix,
        eps: Matrix,
    ) -> Result<Self> {
        Ok(InternalGroupoid {
            d0: LinearMorphism::new(arrows.clone(), objects.clone(), d0)?,
            d1: LinearMorphism::new(arrows.clone(), objects.clone(), d1)?,
            eps: LinearMorphism::new(objects, arrows, eps)?,
        })
    }

    /// `L x L` over `L` with `d0(l, l') = l`, `d1(l, l') = l'`, `eps(l) = (l, l)`.
    pub fn pair(l: Arc<LeibnizAlgebra>) -> Result<Self> {
        let f = l.field();
        let n = l.dim();
        let arrows = Arc::new(l.direct_product(&l)?);
        let id = Matrix::identity(f, n);
        let z = Matrix::zeros(f, n, n);
        InternalGroupoid::new(arrows, l, id.hstack(&z)?, z.hstack(&id)?, id.vstack(&id)?)
    }

    /// An algebra viewed as a groupoid with a single (zero) object.
    pub fn one_object(l: Arc<LeibnizAlgebra>) -> Result<Self> {
        let f = l.field();
        let n = l.dim();
        let ob = Arc::new(LeibnizAlgebra::zero(f));
        InternalGroupoid::new(l, ob, Matrix::zeros(f, 0, n), Matrix::zeros(f, 0, n), Matrix::zeros(f, n, 0))
    }

    /// Only identity arrows: `G = Ob`, `d0 = d1 = eps = 1`.
    pub fn discrete(l: Arc<LeibnizAlgebra>) -> Self {
        let id = LinearMorphism::identity(l);
        InternalGroupoid {
            d0: id.clone(),
            d1: id.clone(),
            eps: id,
        }
    }

    pub fn arrows(&self) -> &Arc<LeibnizAlgebra> {
        self.d0.source()
    }

    pub fn objects(&self) -> &Arc<LeibnizAlgebra> {
        self.d0.target()
    }

    pub fn d0(&self) -> &LinearMorphism {
        &self.d0
    }

    pub fn d1(&self) -> &LinearMorphism {
        &self.d1
    }

    pub fn eps(&self) -> &LinearMorphism {
        &self.eps
    }

    /// Composable pairs `{(h, k) : d0(h) = d1(k)}` inside `G (+) G`.
    pub fn composable_pairs(&self) -> Subspace {
        pullback_basis(self.d0.matrix(), self.d1.matrix()).expect("d0 and d1 share a target")
    }

    /// The linear map `(h, k) -> h - eps d0(h) + k` on `G (+) G`.
    pub fn composition_matrix(&self) -> Matrix {
        let f = self.arrows().field();
        let n = self.arrows().dim();
        let e_d0 = self.eps.matrix().mul(self.d0.matrix()).expect("adjacent maps");
        Matrix::identity(f, n)
            .sub(&e_d0)
            .and_then(|m| m.hstack(&Matrix::identity(f, n)))
            .expect("square blocks")
    }

    pub fn validate(&self) -> GroupoidReport {
        let g = self.arrows();
        let f = g.field();
        let m = self.objects().dim();
        let id = Matrix::identity(f, m);
        let sections_ok = self.d0.matrix().mul(self.eps.matrix()).ok() == Some(id.clone())
            && self.d1.matrix().mul(self.eps.matrix()).ok() == Some(id);

        let k0 = self.d0.kernel();
        let k1 = self.d1.kernel();
        let kernel_bracket_ok = k0.basis().iter().all(|a| {
            k1.basis()
                .iter()
                .all(|b| is_zero_vec(&g.br(a, b)) && is_zero_vec(&g.br(b, a)))
        });

        let pairs = self.composable_pairs();
        let comp = self.composition_matrix();
        let n = g.dim();
        let interchange_ok = pairs.basis().iter().all(|u| {
            pairs.basis().iter().all(|v| {
                let br = concat(&g.br(&u[..n], &v[..n]), &g.br(&u[n..], &v[n..]));
                pairs.contains(&br)
                    && comp.mul_vec(&br) == g.br(&comp.mul_vec(u), &comp.mul_vec(v))
            })
        });

        GroupoidReport {
            maps_ok: self.d0.check_morphism() && self.d1.check_morphism() && self.eps.check_morphism(),
            sections_ok,
            kernel_bracket_ok,
            interchange_ok,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid("not an internal groupoid".into()))
        }
    }

    /// `h o k = h - eps d0(h) + k`, defined when `d1(k) = d0(h)`.
    pub fn compose(&self, h: &[Scalar], k: &[Scalar]) -> Result<Vec<Scalar>> {
        self.arrows().check_vector(h)?;
        self.arrows().check_vector(k)?;
        if self.d0.at(h) != self.d1.at(k) {
            return Err(Error::NotComposable);
        }
        Ok(self.compose_unchecked(h, k))
    }

    pub(crate) fn compose_unchecked(&self, h: &[Scalar], k: &[Scalar]) -> Vec<Scalar> {
        vec_add(&vec_sub(h, &self.eps.at(&self.d0.at(h))), k)
    }

    /// `g^-1 = eps d0(g) - g + eps d1(g)`
    pub fn inverse(&self, g: &[Scalar]) -> Result<Vec<Scalar>> {
        self.arrows().check_vector(g)?;
        Ok(self.inverse_unchecked(g))
    }

    pub(crate) fn inverse_unchecked(&self, g: &[Scalar]) -> Vec<Scalar> {
        vec_add(&vec_sub(&self.eps.at(&self.d0.at(g)), g), &self.eps.at(&self.d1.at(g)))
    }

    /// The arrows with source `x`: `eps(x) + ker d0`.
    pub fn star(&self, x: &[Scalar]) -> Result<AffineSubspace> {
        self.objects().check_vector(x)?;
        Ok(AffineSubspace {
            point: self.eps.at(x),
            direction: self.d0.kernel(),
        })
    }

    pub fn transitivity(&self) -> Transitivity {
        let joint = self.d0.matrix().vstack(self.d1.matrix()).expect("same shape");
        let meet = self
            .d0
            .kernel()
            .intersection(&self.d1.kernel())
            .expect("same ambient space");
        Transitivity {
            transitive: joint.is_surjective(),
            simply_transitive: meet.dim() == 0,
            totally_intransitive: self.d0.matrix() == self.d1.matrix(),
        }
    }

    pub fn is_transitive(&self) -> TransitivityClass {
        self.transitivity().class()
    }
}

pub fn validate_groupoid(g: &InternalGroupoid) -> GroupoidReport {
    g.validate()
}

/// Conditions checked for an internal functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupoidMorphismReport {
    pub maps_ok: bool,
    pub commutes_d0: bool,
    pub commutes_d1: bool,
    pub commutes_eps: bool,
}

impl GroupoidMorphismReport {
    pub fn all_ok(&self) -> bool {
        self.maps_ok && self.commutes_d0 && self.commutes_d1 && self.commutes_eps
    }
}

/// An internal functor: Leibniz morphisms on arrows and on objects that
/// commute with `d0`, `d1` and `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    source: InternalGroupoid,
    target: InternalGroupoid,
    on_arrows: LinearMorphism,
    on_objects: LinearMorphism,
}

impl GroupoidMorphism {
    pub fn new(
        source: InternalGroupoid,
        target: InternalGroupoid,
        on_arrows: Matrix,
        on_objects: Matrix,
    ) -> Result<Self> {
        let on_arrows = LinearMorphism::new(source.arrows().clone(), target.arrows().clone(), on_arrows)?;
        let on_objects = LinearMorphism::new(source.objects().clone(), target.objects().clone(), on_objects)?;
        Ok(GroupoidMorphism {
            source,
            target,
            on_arrows,
            on_objects,
        })
    }

    pub fn identity(g: InternalGroupoid) -> Self {
        let on_arrows = LinearMorphism::identity(g.arrows().clone());
        let on_objects = LinearMorphism::identity(g.objects().clone());
        GroupoidMorphism {
            source: g.clone(),
            target: g,
            on_arrows,
            on_objects,
        }
    }

    pub fn source(&self) -> &InternalGroupoid {
        &self.source
    }

    pub fn target(&self) -> &InternalGroupoid {
        &self.target
    }

    pub fn on_arrows(&self) -> &LinearMorphism {
        &self.on_arrows
    }

    pub fn on_objects(&self) -> &LinearMorphism {
        &self.on_objects
    }

    /// `self . first`
    pub fn compose(&self, first: &GroupoidMorphism) -> Result<GroupoidMorphism> {
        if first.target != self.source {
            return Err(Error::Malformed("composite of non-adjacent groupoid morphisms".into()));
        }
        GroupoidMorphism::new(
            first.source.clone(),
            self.target.clone(),
            self.on_arrows.matrix().mul(first.on_arrows.matrix())?,
            self.on_objects.matrix().mul(first.on_objects.matrix())?,
        )
    }

    pub fn report(&self) -> GroupoidMorphismReport {
        let (p, p0) = (self.on_arrows.matrix(), self.on_objects.matrix());
        let (s, t) = (&self.source, &self.target);
        let eq = |a: Result<Matrix>, b: Result<Matrix>| matches!((a, b), (Ok(x), Ok(y)) if x == y);
        GroupoidMorphismReport {
            maps_ok: self.on_arrows.check_morphism() && self.on_objects.check_morphism(),
            commutes_d0: eq(t.d0.matrix().mul(p), p0.mul(s.d0.matrix())),
            commutes_d1: eq(t.d1.matrix().mul(p), p0.mul(s.d1.matrix())),
            commutes_eps: eq(p.mul(s.eps.matrix()), t.eps.matrix().mul(p0)),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.report().all_ok()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_valid() && self.on_arrows.is_bijective() && self.on_objects.is_bijective()
    }

    /// The inverse functor of an isomorphism.
    pub fn inverse(&self) -> Result<GroupoidMorphism> {
        if !self.is_isomorphism() {
            return Err(Error::Invalid("groupoid morphism is not an isomorphism".into()));
        }
        let inv = |m: &LinearMorphism| {
            m.matrix()
                .inverse()
                .ok_or_else(|| Error::Internal("bijective matrix without inverse".into()))
        };
        GroupoidMorphism::new(
            self.target.clone(),
            self.source.clone(),
            inv(&self.on_arrows)?,
            inv(&self.on_objects)?,
        )
    }
}

/// `ker d0`, `Ob(G)`, `d1|ker d0` with `x.g = [eps(x), g]`, `g.x = [g, eps(x)]`.
/// Also returns `ker d0` as a subspace of `G`, whose canonical basis is the
/// basis of the new `L1`.
pub(crate) fn eta_with_kernel(g: &InternalGroupoid) -> Result<(CrossedModule, Subspace)> {
    g.require_valid()?;
    let arrows = g.arrows();
    let f = arrows.field();
    let kernel = g.d0.kernel();
    let l1 = Arc::new(arrows.subalgebra(&kernel)?);
    let l0 = g.objects().clone();
    let k = kernel.dim();
    let coords = |v: Vec<Scalar>| {
        kernel
            .coordinates(&v)
            .ok_or_else(|| Error::Internal("ker d0 is not an ideal".into()))
    };
    let eps_img: Vec<Vec<Scalar>> = (0..l0.dim()).map(|x| g.eps.matrix().column(x)).collect();
    let mut left = Vec::with_capacity(l0.dim() * k * k);
    for ex in &eps_img {
        for b in kernel.basis() {
            left.extend(coords(arrows.br(ex, b))?);
        }
    }
    let mut right = Vec::with_capacity(l0.dim() * k * k);
    for b in kernel.basis() {
        for ex in &eps_img {
            right.extend(coords(arrows.br(b, ex))?);
        }
    }
    let action = LeibnizAction::new(
        l0.clone(),
        l1.clone(),
        Tensor3::from_flat(f, [l0.dim(), k, k], left)?,
        Tensor3::from_flat(f, [k, l0.dim(), k], right)?,
    )?;
    let boundary = g.d1.matrix().mul(&kernel.inclusion())?;
    let x = CrossedModule::new(LinearMorphism::new(l1, l0, boundary)?, action)?;
    if !x.is_valid() {
        return Err(Error::Internal("eta produced an invalid crossed module".into()));
    }
    Ok((x, kernel))
}

/// The crossed module of an internal groupoid.
pub fn eta(g: &InternalGroupoid) -> Result<CrossedModule> {
    Ok(eta_with_kernel(g)?.0)
}

/// The internal groupoid `L1 x| L0` of a crossed module, with
/// `d0(l1, l0) = l0`, `d1(l1, l0) = d(l1) + l0`, `eps(l0) = (0, l0)`.
pub fn delta(x: &CrossedModule) -> Result<InternalGroupoid> {
    x.require_valid()?;
    let (arrows, _) = semidirect(x.action())?;
    let f = arrows.field();
    let (n1, n0) = (x.l1().dim(), x.l0().dim());
    let id0 = Matrix::identity(f, n0);
    let d0 = Matrix::zeros(f, n0, n1).hstack(&id0)?;
    let d1 = x.boundary().matrix().hstack(&id0)?;
    let eps = Matrix::zeros(f, n1, n0).vstack(&id0)?;
    let g = InternalGroupoid::new(arrows, x.l0().clone(), d0, d1, eps)?;
    if !g.is_valid() {
        return Err(Error::Internal("delta produced an invalid groupoid".into()));
    }
    Ok(g)
}

/// The isomorphism `x -> eta(delta(x))`, `l1 -> (l1, 0)` and the identity on `L0`.
pub fn roundtrip_eta_delta(x: &CrossedModule) -> Result<XModMorphism> {
    let g = delta(x)?;
    let (back, kernel) = eta_with_kernel(&g)?;
    let f = x.l1().field();
    let n0 = x.l0().dim();
    let columns = (0..x.l1().dim())
        .map(|i| {
            kernel
                .coordinates(&concat(&x.l1().unit(i), &f.zeros(n0)))
                .ok_or_else(|| Error::Internal("(l1, 0) outside ker d0".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f1 = Matrix::from_columns(f, kernel.dim(), &columns)?;
    let m = XModMorphism::new(x.clone(), back, f1, Matrix::identity(f, n0))?;
    if !m.report().all_ok() || !m.f1().is_bijective() || !m.f0().is_bijective() {
        return Err(Error::Internal("eta delta round trip is not an isomorphism".into()));
    }
    Ok(m)
}

/// The isomorphism `G -> delta(eta(G))`, `g -> (g - eps d0(g), d0(g))` and the
/// identity on objects.
pub fn roundtrip_delta_eta(g: &InternalGroupoid) -> Result<GroupoidMorphism> {
    let (x, kernel) = eta_with_kernel(g)?;
    let back = delta(&x)?;
    let f = g.arrows().field();
    let columns = (0..g.arrows().dim())
        .map(|i| {
            let e = g.arrows().unit(i);
            let d0e = g.d0.at(&e);
            let star_part = vec_sub(&e, &g.eps.at(&d0e));
            let k = kernel
                .coordinates(&star_part)
                .ok_or_else(|| Error::Internal("g - eps d0 g outside ker d0".into()))?;
            Ok(concat(&k, &d0e))
        })
        .collect::<Result<Vec<_>>>()?;
    let on_arrows = Matrix::from_columns(f, back.arrows().dim(), &columns)?;
    let iso = GroupoidMorphism::new(g.clone(), back, on_arrows, Matrix::identity(f, g.objects().dim()))?;
    if !iso.is_isomorphism() {
        return Err(Error::Internal("delta eta round trip is not an isomorphism".into()));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures::{a2, abelian};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    fn all_true() -> GroupoidReport {
        GroupoidReport {
            maps_ok: true,
            sections_ok: true,
            kernel_bracket_ok: true,
            interchange_ok: true,
        }
    }

    #[test]
    fn one_object_abelian_groupoid() {
        let g = InternalGroupoid::one_object(Arc::new(abelian(q(), 2))).unwrap();
        assert_eq!(g.validate(), all_true());
        assert_eq!(g.star(&[]).unwrap().direction, Subspace::full(q(), 2));
        assert_eq!(g.is_transitive(), TransitivityClass::Transitive);
    }

    #[test]
    fn one_object_on_non_abelian_fails_kernel_condition() {
        let g = InternalGroupoid::one_object(Arc::new(a2(q()))).unwrap();
        let r = g.validate();
        assert!(r.maps_ok && r.sections_ok);
        assert!(!r.kernel_bracket_ok && !r.interchange_ok);
    }

    #[test]
    fn pair_groupoid_of_a2() {
        let g = InternalGroupoid::pair(Arc::new(a2(q()))).unwrap();
        assert_eq!(g.validate(), all_true());
        assert_eq!(g.is_transitive(), TransitivityClass::OneTransitive);
        let star = g.star(&v(&[0, 0])).unwrap();
        assert_eq!(star.direction.dim(), 2);
        assert!(star.contains(&v(&[0, 0, 3, -1])));
        assert!(!star.contains(&v(&[1, 0, 0, 0])));
    }

    #[test]
    fn degenerate_and_corrupted_pair_data() {
        let a = Arc::new(a2(q()));
        let g = InternalGroupoid::pair(a.clone()).unwrap();
        // d1 := d0: the structure maps are fine but ker d0 = ker d1 is not abelian.
        let same = InternalGroupoid::new(
            g.arrows().clone(),
            a.clone(),
            g.d0().matrix().clone(),
            g.d0().matrix().clone(),
            g.eps().matrix().clone(),
        )
        .unwrap();
        let r = same.validate();
        assert!(r.maps_ok && r.sections_ok && !r.kernel_bracket_ok);
        // eps(l) = (l, 0) breaks d1 eps = 1.
        let eps = Matrix::identity(q(), 2).vstack(&Matrix::zeros(q(), 2, 2)).unwrap();
        let bad = InternalGroupoid::new(
            g.arrows().clone(),
            a.clone(),
            g.d0().matrix().clone(),
            g.d1().matrix().clone(),
            eps,
        )
        .unwrap();
        let r = bad.validate();
        assert!(r.maps_ok && !r.sections_ok);
        // eps(e2) = (2 e2, 2 e2) is not a morphism.
        let eps = Matrix::from_rows(q(), 2, vec![v(&[1, 0]), v(&[0, 2]), v(&[1, 0]), v(&[0, 2])]).unwrap();
        let bad = InternalGroupoid::new(g.arrows().clone(), a, g.d0().matrix().clone(), g.d1().matrix().clone(), eps)
            .unwrap();
        assert!(!bad.validate().maps_ok);
    }

    #[test]
    fn pair_groupoid_composition_and_inverse() {
        let g = InternalGroupoid::pair(Arc::new(a2(q()))).unwrap();
        // (l', l'') o (l, l') = (l, l'') with l = e1, l' = e2, l'' = e1 + e2.
        let k = v(&[1, 0, 0, 1]);
        let h = v(&[0, 1, 1, 1]);
        assert_eq!(g.compose(&h, &k).unwrap(), v(&[1, 0, 1, 1]));
        assert_eq!(g.compose(&k, &h), Err(Error::NotComposable));
        assert_eq!(g.inverse(&k).unwrap(), v(&[0, 1, 1, 0]));
    }

    #[test]
    fn identities_are_units_and_self_inverse() {
        let g = InternalGroupoid::pair(Arc::new(a2(q()))).unwrap();
        let h = v(&[2, -1, 5, 3]);
        let right_unit = g.eps.at(&g.d0.at(&h));
        let left_unit = g.eps.at(&g.d1.at(&h));
        assert_eq!(g.compose(&h, &right_unit).unwrap(), h);
        assert_eq!(g.compose(&left_unit, &h).unwrap(), h);
        let e = g.eps.at(&v(&[4, 7]));
        assert_eq!(g.inverse(&e).unwrap(), e);
    }

    #[test]
    fn discrete_groupoid_is_totally_intransitive() {
        let g = InternalGroupoid::discrete(Arc::new(a2(q())));
        assert!(g.is_valid());
        let t = g.transitivity();
        assert!(t.totally_intransitive && t.simply_transitive && !t.transitive);
        assert_eq!(t.class(), TransitivityClass::TotallyIntransitive);
    }

    #[test]
    fn eta_of_pair_groupoid_is_identity_like() {
        let a = Arc::new(a2(q()));
        let x = eta(&InternalGroupoid::pair(a.clone()).unwrap()).unwrap();
        assert_eq!(x.boundary().matrix(), &Matrix::identity(q(), 2));
        assert_eq!(x.l1().tensor(), a.tensor());
        assert_eq!(x.action().left(), a.tensor());
        assert_eq!(x.action().right(), a.tensor());
    }

    #[test]
    fn eta_of_one_object_groupoid() {
        let l = Arc::new(abelian(q(), 2));
        let x = eta(&InternalGroupoid::one_object(l).unwrap()).unwrap();
        assert_eq!(x.l0().dim(), 0);
        assert_eq!(x.l1().dim(), 2);
        assert!(x.action().left().is_zero() && x.action().right().is_zero());
    }

    #[test]
    fn eta_rejects_invalid_groupoid() {
        let g = InternalGroupoid::one_object(Arc::new(a2(q()))).unwrap();
        assert!(matches!(eta(&g), Err(Error::Invalid(_))));
    }

    #[test]
    fn delta_of_identity_crossed_module() {
        let a = Arc::new(a2(q()));
        let g = delta(&CrossedModule::identity(a)).unwrap();
        assert_eq!(g.arrows().dim(), 4);
        assert_eq!(g.d1().apply(&v(&[1, 2, 3, 4])).unwrap(), v(&[4, 6]));
        let star = g.star(&v(&[0, 0])).unwrap();
        assert_eq!(star.direction.basis(), &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
    }

    #[test]
    fn delta_of_abelian_over_zero_is_one_object() {
        let l = Arc::new(abelian(q(), 2));
        let x = CrossedModule::zero_boundary(l.clone(), Arc::new(LeibnizAlgebra::zero(q()))).unwrap();
        let g = delta(&x).unwrap();
        assert_eq!(g, InternalGroupoid::one_object(Arc::new(g.arrows().as_ref().clone())).unwrap());
        assert_eq!(g.arrows().tensor(), l.tensor());
    }

    #[test]
    fn delta_rejects_invalid_crossed_module() {
        let a = Arc::new(a2(q()));
        let x = CrossedModule::new(LinearMorphism::zero(a.clone(), a.clone()).unwrap(), LeibnizAction::trivial(a.clone(), a).unwrap())
            .unwrap();
        assert!(matches!(delta(&x), Err(Error::Invalid(_))));
    }

    #[test]
    fn zero_boundary_gives_totally_intransitive_groupoid() {
        let x = CrossedModule::zero_boundary(Arc::new(abelian(q(), 2)), Arc::new(a2(q()))).unwrap();
        assert_eq!(delta(&x).unwrap().is_transitive(), TransitivityClass::TotallyIntransitive);
    }

    #[test]
    fn round_trips_on_small_examples() {
        let a = Arc::new(a2(q()));
        let x = CrossedModule::identity(a.clone());
        let m = roundtrip_eta_delta(&x).unwrap();
        assert_eq!(m.f1().matrix(), &Matrix::identity(q(), 2));

        let zero = CrossedModule::identity(Arc::new(LeibnizAlgebra::zero(q())));
        let m = roundtrip_eta_delta(&zero).unwrap();
        assert_eq!(m.f1().matrix().rows(), 0);

        let pair = InternalGroupoid::pair(a).unwrap();
        let iso = roundtrip_delta_eta(&pair).unwrap();
        // (l, l') -> (l' - l, l)
        let expected = Matrix::from_rows(
            q(),
            4,
            vec![v(&[-1, 0, 1, 0]), v(&[0, -1, 0, 1]), v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])],
        )
        .unwrap();
        assert_eq!(iso.on_arrows().matrix(), &expected);

        let one = InternalGroupoid::one_object(Arc::new(abelian(q(), 2))).unwrap();
        let iso = roundtrip_delta_eta(&one).unwrap();
        assert_eq!(iso.on_arrows().matrix(), &Matrix::identity(q(), 2));

        let semi = delta(&x).unwrap();
        let iso = roundtrip_delta_eta(&semi).unwrap();
        assert_eq!(iso.on_arrows().matrix(), &Matrix::identity(q(), 4));
    }
}
