//! Covering morphisms, groupoid actions, action groupoids and covering
//! crossed modules.

use std::sync::Arc;

use crate::algebra::{LeibnizAlgebra, LinearMorphism};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groupoid::{delta, eta_with_kernel, roundtrip_delta_eta, roundtrip_eta_delta, GroupoidMorphism, InternalGroupoid};
use crate::linalg::{concat, pullback_basis, Matrix, Subspace};
use crate::xmod::XModMorphism;

/// `g~ -> (p(g~), d0(g~))`, from `G~` into `G (+) Ob(G~)`.
fn star_map(p: &GroupoidMorphism) -> Matrix {
    p.on_arrows()
        .matrix()
        .vstack(p.source().d0().matrix())
        .expect("both maps leave the arrows of the source")
}

/// `{(g, x~) : d0(g) = p0(x~)}`
fn star_pullback(p: &GroupoidMorphism) -> Subspace {
    pullback_basis(p.target().d0().matrix(), p.on_objects().matrix()).expect("shared object algebra")
}

/// True iff `(p, d0)` is a linear isomorphism onto the pullback of `d0` and
/// `p0`. Invalid morphisms are never coverings.
pub fn check_covering(p: &GroupoidMorphism) -> bool {
    if !p.is_valid() {
        return false;
    }
    let m = star_map(p);
    m.is_injective() && m.rank() == star_pullback(p).dim()
}

fn require_covering(p: &GroupoidMorphism) -> Result<()> {
    if check_covering(p) {
        Ok(())
    } else {
        Err(Error::Invalid("not a covering morphism".into()))
    }
}

/// The unique arrow `g~` with `p(g~) = g` and `d0(g~) = x~`.
pub fn lift(p: &GroupoidMorphism, g: &[Scalar], at: &[Scalar]) -> Result<Vec<Scalar>> {
    p.target().arrows().check_vector(g)?;
    p.source().objects().check_vector(at)?;
    require_covering(p)?;
    if p.target().d0().at(g) != p.on_objects().at(at) {
        return Err(Error::BasePointMismatch);
    }
    lift_unchecked(&star_map(p), &concat(g, at))
}

fn lift_unchecked(star: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
    star.solve(v)?
        .ok_or_else(|| Error::Internal("pullback element without a lift".into()))
}

/// The lifting function as a matrix from `G (+) Ob(G~)` to `G~`, defined on
/// the pullback of `d0` and `p0`: a left inverse of `(p, d0)`.
pub fn lifting_matrix(p: &GroupoidMorphism) -> Result<Matrix> {
    require_covering(p)?;
    star_map(p)
        .left_inverse()
        .ok_or_else(|| Error::Internal("injective map without left inverse".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupoidActionReport {
    /// `w(g.l) = d1(g)`
    pub a1: bool,
    /// `eps(w(l)).l = l`
    pub a2: bool,
    /// `(h o g).l = h.(g.l)`
    pub a3: bool,
    /// `w` is a morphism and the action respects brackets on the pullback.
    pub morphism_ok: bool,
}

impl GroupoidActionReport {
    pub fn all_ok(&self) -> bool {
        self.a1 && self.a2 && self.a3 && self.morphism_ok
    }
}

/// An action of an internal groupoid `G` on an algebra `L` over `w: L -> Ob(G)`.
/// The action is a linear map on the pullback `G x_{d0,w} L`, stored as a
/// matrix in the coordinates of the canonical basis of that subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidAction {
    groupoid: InternalGroupoid,
    omega: LinearMorphism,
    pullback: Subspace,
    act: Matrix,
}

impl GroupoidAction {
    pub fn new(groupoid: InternalGroupoid, algebra: Arc<LeibnizAlgebra>, omega: Matrix, act: Matrix) -> Result<Self> {
        let omega = LinearMorphism::new(algebra.clone(), groupoid.objects().clone(), omega)?;
        let pullback = pullback_basis(groupoid.d0().matrix(), omega.matrix())?;
        if act.field() != algebra.field() {
            return Err(Error::FieldMismatch(act.field().to_string(), algebra.field().to_string()));
        }
        crate::error::ensure_dim("action rows", algebra.dim(), act.rows())?;
        crate::error::ensure_dim("action columns (pullback dimension)", pullback.dim(), act.cols())?;
        Ok(GroupoidAction {
            groupoid,
            omega,
            pullback,
            act,
        })
    }

    /// `G` acting on `Ob(G)` over the identity by `g.x = d1(g)`.
    pub fn canonical(groupoid: InternalGroupoid) -> Result<Self> {
        let f = groupoid.arrows().field();
        let ob = groupoid.objects().clone();
        let omega = Matrix::identity(f, ob.dim());
        let pullback = pullback_basis(groupoid.d0().matrix(), &omega)?;
        let act = groupoid
            .d1()
            .matrix()
            .hstack(&Matrix::zeros(f, ob.dim(), ob.dim()))?
            .mul(&pullback.inclusion())?;
        GroupoidAction::new(groupoid, ob, omega, act)
    }

    pub fn groupoid(&self) -> &InternalGroupoid {
        &self.groupoid
    }

    pub fn algebra(&self) -> &Arc<LeibnizAlgebra> {
        self.omega.source()
    }

    pub fn omega(&self) -> &LinearMorphism {
        &self.omega
    }

    /// `{(g, l) : d0(g) = w(l)}` inside `G (+) L`.
    pub fn pullback(&self) -> &Subspace {
        &self.pullback
    }

    pub fn act_matrix(&self) -> &Matrix {
        &self.act
    }

    /// `g.l`, defined when `d0(g) = w(l)`.
    pub fn apply(&self, g: &[Scalar], l: &[Scalar]) -> Result<Vec<Scalar>> {
        self.groupoid.arrows().check_vector(g)?;
        self.algebra().check_vector(l)?;
        self.act_on(&concat(g, l)).ok_or(Error::BasePointMismatch)
    }

    /// The action on a vector of `G (+) L`, if it lies in the pullback.
    fn act_on(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.pullback.coordinates(v).map(|c| self.act.mul_vec(&c))
    }

    pub fn validate(&self) -> GroupoidActionReport {
        let g = &self.groupoid;
        let l = self.algebra();
        let n = g.arrows().dim();
        let basis = self.pullback.basis();

        let a1 = basis
            .iter()
            .all(|u| self.omega.at(&self.act.mul_vec(&self.pullback.coordinates(u).unwrap())) == g.d1().at(&u[..n]));

        let a2 = (0..l.dim()).all(|i| {
            let e = l.unit(i);
            let unit = g.eps().at(&self.omega.at(&e));
            self.act_on(&concat(&unit, &e)) == Some(e)
        });

        // Triples (h, g, l) with d0 h = d1 g and d0 g = w(l).
        let f = g.arrows().field();
        let (m, k) = (g.objects().dim(), l.dim());
        let top = g
            .d0()
            .matrix()
            .hstack(&g.d1().matrix().neg())
            .and_then(|t| t.hstack(&Matrix::zeros(f, m, k)))
            .expect("matching rows");
        let bottom = Matrix::zeros(f, m, n)
            .hstack(g.d0().matrix())
            .and_then(|b| b.hstack(&self.omega.matrix().neg()))
            .expect("matching rows");
        let triples = top.vstack(&bottom).expect("matching columns").kernel();
        let a3 = triples.basis().iter().all(|t| {
            let (h, gg, x) = (&t[..n], &t[n..2 * n], &t[2 * n..]);
            let lhs = self.act_on(&concat(&g.compose_unchecked(h, gg), x));
            let rhs = self.act_on(&concat(gg, x)).and_then(|gx| self.act_on(&concat(h, &gx)));
            lhs.is_some() && lhs == rhs
        });

        let product = g.arrows().direct_product(l);
        let morphism_ok = self.omega.check_morphism()
            && product.is_ok_and(|prod| {
                basis.iter().all(|u| {
                    basis.iter().all(|v| {
                        let au = self.act_on(u).unwrap();
                        let av = self.act_on(v).unwrap();
                        self.act_on(&prod.br(u, v)) == Some(l.br(&au, &av))
                    })
                })
            });

        GroupoidActionReport { a1, a2, a3, morphism_ok }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_ok()
    }
}

pub fn validate_gpd_action(a: &GroupoidAction) -> GroupoidActionReport {
    a.validate()
}

/// `G x| L`: arrows the pullback subalgebra of `G x L` (in pullback
/// coordinates), objects `L`, `d0(g, l) = l`, `d1(g, l) = g.l`,
/// `eps(l) = (eps w(l), l)`; together with the covering `q(g, l) = g`.
pub fn action_groupoid(a: &GroupoidAction) -> Result<(InternalGroupoid, GroupoidMorphism)> {
    a.groupoid.require_valid()?;
    if !a.is_valid() {
        return Err(Error::Invalid("groupoid action fails its axioms".into()));
    }
    let g = &a.groupoid;
    let l = a.algebra();
    let f = l.field();
    let (n, k) = (g.arrows().dim(), l.dim());
    let product = g.arrows().direct_product(l)?;
    let arrows = Arc::new(product.subalgebra(&a.pullback)?);
    let incl = a.pullback.inclusion();

    let d0 = Matrix::zeros(f, k, n).hstack(&Matrix::identity(f, k))?.mul(&incl)?;
    let d1 = a.act.clone();
    let eps_cols = (0..k)
        .map(|i| {
            let e = l.unit(i);
            a.pullback
                .coordinates(&concat(&g.eps().at(&a.omega.at(&e)), &e))
                .ok_or_else(|| Error::Internal("identity arrow outside the pullback".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let eps = Matrix::from_columns(f, a.pullback.dim(), &eps_cols)?;
    let ag = InternalGroupoid::new(arrows, l.clone(), d0, d1, eps)?;
    if !ag.is_valid() {
        return Err(Error::Internal("action groupoid is not an internal groupoid".into()));
    }
    let q_arrows = Matrix::identity(f, n).hstack(&Matrix::zeros(f, n, k))?.mul(&incl)?;
    let q = GroupoidMorphism::new(ag.clone(), g.clone(), q_arrows, a.omega.matrix().clone())?;
    if !check_covering(&q) {
        return Err(Error::Internal("projection from the action groupoid is not a covering".into()));
    }
    Ok((ag, q))
}

/// The action of `G` on `Ob(G~)` over `p0` given by `g.x~ = d1(lift(g, x~))`.
pub fn covering_to_action(p: &GroupoidMorphism) -> Result<GroupoidAction> {
    require_covering(p)?;
    let star = star_map(p);
    let pullback = star_pullback(p);
    let d1 = p.source().d1().matrix();
    let cols = pullback
        .basis()
        .iter()
        .map(|u| Ok(d1.mul_vec(&lift_unchecked(&star, u)?)))
        .collect::<Result<Vec<_>>>()?;
    let act = Matrix::from_columns(p.source().objects().field(), p.source().objects().dim(), &cols)?;
    let a = GroupoidAction::new(
        p.target().clone(),
        p.source().objects().clone(),
        p.on_objects().matrix().clone(),
        act,
    )?;
    if !a.is_valid() {
        return Err(Error::Internal("action induced by a covering fails its axioms".into()));
    }
    Ok(a)
}

/// The isomorphism `G~ -> G x| Ob(G~)`, `g~ -> (p(g~), d0(g~))`, and its
/// inverse. Both are checked to lie over `G`.
pub fn roundtrip_cov_action(p: &GroupoidMorphism) -> Result<(GroupoidMorphism, GroupoidMorphism)> {
    let a = covering_to_action(p)?;
    let (ag, q) = action_groupoid(&a)?;
    let star = star_map(p);
    let pullback = &a.pullback;
    let cols = (0..p.source().arrows().dim())
        .map(|i| {
            pullback
                .coordinates(&star.column(i))
                .ok_or_else(|| Error::Internal("(p, d0) leaves the pullback".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = star.field();
    let forward = GroupoidMorphism::new(
        p.source().clone(),
        ag,
        Matrix::from_columns(f, pullback.dim(), &cols)?,
        Matrix::identity(f, p.source().objects().dim()),
    )?;
    let backward = forward.inverse()?;
    let over = q.compose(&forward)?;
    if over.on_arrows() != p.on_arrows() || over.on_objects() != p.on_objects() {
        return Err(Error::Internal("round trip isomorphism does not lie over G".into()));
    }
    Ok((forward, backward))
}

/// The restriction of a groupoid morphism to stars at zero, as a morphism
/// `eta(G~) -> eta(G)`.
pub fn eta_morphism(p: &GroupoidMorphism) -> Result<XModMorphism> {
    if !p.is_valid() {
        return Err(Error::Invalid("not a groupoid morphism".into()));
    }
    let (source, src_kernel) = eta_with_kernel(p.source())?;
    let (target, tgt_kernel) = eta_with_kernel(p.target())?;
    let cols = src_kernel
        .basis()
        .iter()
        .map(|k| {
            tgt_kernel
                .coordinates(&p.on_arrows().at(k))
                .ok_or_else(|| Error::Internal("functor does not preserve stars at zero".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f1 = Matrix::from_columns(p.target().arrows().field(), tgt_kernel.dim(), &cols)?;
    XModMorphism::new(source, target, f1, p.on_objects().matrix().clone())
}

/// `f1 x f0: delta(X~) -> delta(X)`.
pub fn delta_morphism(m: &XModMorphism) -> Result<GroupoidMorphism> {
    if !m.report().all_ok() {
        return Err(Error::Invalid("not a crossed module morphism".into()));
    }
    let source = delta(m.source())?;
    let target = delta(m.target())?;
    let on_arrows = m.f1().matrix().block_diag(m.f0().matrix())?;
    GroupoidMorphism::new(source, target, on_arrows, m.f0().matrix().clone())
}

/// A crossed module morphism whose `L1` component is an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringXModMorphism(XModMorphism);

impl CoveringXModMorphism {
    pub fn new(m: XModMorphism) -> Result<Self> {
        if check_covering_xmod(&m) {
            Ok(CoveringXModMorphism(m))
        } else {
            Err(Error::Invalid("not a covering crossed module morphism".into()))
        }
    }

    pub fn morphism(&self) -> &XModMorphism {
        &self.0
    }

    pub fn into_inner(self) -> XModMorphism {
        self.0
    }
}

pub fn check_covering_xmod(m: &XModMorphism) -> bool {
    m.report().all_ok() && m.f1().is_bijective()
}

pub fn gpd_cov_to_xmod_cov(p: &GroupoidMorphism) -> Result<CoveringXModMorphism> {
    require_covering(p)?;
    let m = eta_morphism(p)?;
    CoveringXModMorphism::new(m).map_err(|_| Error::Internal("covering restricted to stars is not bijective".into()))
}

pub fn xmod_cov_to_gpd_cov(m: &CoveringXModMorphism) -> Result<GroupoidMorphism> {
    let p = delta_morphism(&m.0)?;
    if !check_covering(&p) {
        return Err(Error::Internal("product map of a covering crossed module is not a covering".into()));
    }
    let sp = xmod_lifting_matrix(m)?;
    let star = star_map(&p);
    if sp.mul(&star)? != Matrix::identity(star.field(), star.cols()) {
        return Err(Error::Internal("lifting map does not invert (p, d0)".into()));
    }
    Ok(p)
}

/// The lifting function of `f1 x f0` written through `f1^-1`:
/// `((x, m), m~) -> (f1^-1(x), m~)`.
pub fn xmod_lifting_matrix(m: &CoveringXModMorphism) -> Result<Matrix> {
    let m = &m.0;
    let f = m.f1().matrix().field();
    let inv = m
        .f1()
        .matrix()
        .inverse()
        .ok_or_else(|| Error::Internal("covering with singular f1".into()))?;
    let (n1, n0) = (m.target().l1().dim(), m.target().l0().dim());
    let k0 = m.source().l0().dim();
    let top = inv.hstack(&Matrix::zeros(f, n1, n0 + k0))?;
    let bottom = Matrix::zeros(f, k0, n1 + n0).hstack(&Matrix::identity(f, k0))?;
    top.vstack(&bottom)
}

/// `eta(delta(.))` applied to a covering crossed module is conjugate to the
/// original through the unit isomorphisms.
pub fn xmod_cov_roundtrip_ok(m: &CoveringXModMorphism) -> Result<bool> {
    let back = gpd_cov_to_xmod_cov(&xmod_cov_to_gpd_cov(m)?)?;
    let src = roundtrip_eta_delta(m.0.source())?;
    let tgt = roundtrip_eta_delta(m.0.target())?;
    let lhs = back.0.compose(&src)?;
    let rhs = tgt.compose(&m.0)?;
    Ok(lhs.f1().matrix() == rhs.f1().matrix() && lhs.f0().matrix() == rhs.f0().matrix())
}

/// `delta(eta(.))` applied to a covering is conjugate to the original
/// through the unit isomorphisms.
pub fn gpd_cov_roundtrip_ok(p: &GroupoidMorphism) -> Result<bool> {
    let back = xmod_cov_to_gpd_cov(&gpd_cov_to_xmod_cov(p)?)?;
    let src = roundtrip_delta_eta(p.source())?;
    let tgt = roundtrip_delta_eta(p.target())?;
    let lhs = back.compose(&src)?;
    let rhs = tgt.compose(p)?;
    Ok(lhs.on_arrows().matrix() == rhs.on_arrows().matrix() && lhs.on_objects().matrix() == rhs.on_objects().matrix())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoveringClass {
    pub transitive: bool,
    pub universal: bool,
}

/// `universal` uses the fibre criterion `ker d0 /\ ker d1 = 0` on `G~`.
pub fn covering_class(p: &GroupoidMorphism) -> Result<CoveringClass> {
    require_covering(p)?;
    let transitive = p.source().is_transitive().is_transitive() && p.target().is_transitive().is_transitive();
    Ok(CoveringClass {
        transitive,
        universal: transitive && p.source().transitivity().simply_transitive,
    })
}
