//! Crossed modules of Leibniz algebras and their morphisms.

use std::sync::Arc;

use crate::action::{ActionParts, LeibnizAction};
use crate::algebra::{same_field, LeibnizAlgebra, LinearMorphism};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{is_zero_vec, vec_sub, Matrix, Subspace};

/// The four equations making up LXM1 and LXM2 (`a` in `L0`, `b, c` in `L1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum XModCondition {
    /// `d(a.b) = [a, d b]`
    EquivariantLeft,
    /// `d(b.a) = [d b, a]`
    EquivariantRight,
    /// `b.(d c) = [b, c]`
    PeifferRight,
    /// `(d c).b = [c, b]`
    PeifferLeft,
}

#[derive(Clone, Copy)]
pub(crate) struct XModParts<'a> {
    pub boundary: &'a Matrix,
    pub action: ActionParts<'a>,
}

impl<'a> XModParts<'a> {
    fn l1(&self) -> &LeibnizAlgebra {
        self.action.actee
    }

    fn l0(&self) -> &LeibnizAlgebra {
        self.action.actor
    }

    pub fn residuals(&self, cond: XModCondition) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let (n1, n0) = (self.l1().dim(), self.l0().dim());
        let (outer, inner) = match cond {
            XModCondition::EquivariantLeft | XModCondition::EquivariantRight => (n0, n1),
            XModCondition::PeifferRight | XModCondition::PeifferLeft => (n1, n1),
        };
        (0..outer).flat_map(move |a| (0..inner).map(move |b| self.residual_at(cond, a, b)))
    }

    fn residual_at(&self, cond: XModCondition, a: usize, b: usize) -> Vec<Scalar> {
        let d = self.boundary;
        match cond {
            XModCondition::EquivariantLeft => {
                let (x, m) = (self.l0().unit(a), self.l1().unit(b));
                vec_sub(&d.mul_vec(&self.action.lam(&x, &m)), &self.l0().br(&x, &d.column(b)))
            }
            XModCondition::EquivariantRight => {
                let (x, m) = (self.l0().unit(a), self.l1().unit(b));
                vec_sub(&d.mul_vec(&self.action.rho(&m, &x)), &self.l0().br(&d.column(b), &x))
            }
            XModCondition::PeifferRight => {
                let m = self.l1().unit(a);
                vec_sub(&self.action.rho(&m, &d.column(b)), self.l1().bracket_basis(a, b))
            }
            XModCondition::PeifferLeft => {
                let m = self.l1().unit(a);
                vec_sub(&self.action.lam(&d.column(b), &m), self.l1().bracket_basis(b, a))
            }
        }
    }

    pub fn holds(&self, cond: XModCondition) -> bool {
        self.residuals(cond).all(|r| is_zero_vec(&r))
    }
}

/// Per-condition outcome of [`validate_xmod`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XModReport {
    pub morphism_ok: bool,
    pub action_ok: bool,
    pub lxm1: bool,
    pub lxm2: bool,
}

impl XModReport {
    pub fn all_ok(&self) -> bool {
        self.morphism_ok && self.action_ok && self.lxm1 && self.lxm2
    }
}

/// `(L1, L0, d)` with an action of `L0` on `L1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    boundary: LinearMorphism,
    action: LeibnizAction,
}

impl CrossedModule {
    pub fn new(boundary: LinearMorphism, action: LeibnizAction) -> Result<Self> {
        if action.actee() != boundary.source() || action.actor() != boundary.target() {
            return Err(Error::Malformed(
                "crossed module action must be of L0 = target(d) on L1 = source(d)".into(),
            ));
        }
        Ok(CrossedModule { boundary, action })
    }

    /// `(L, L, 1_L)` with `L` acting on itself by brackets.
    pub fn identity(a: Arc<LeibnizAlgebra>) -> Self {
        CrossedModule {
            boundary: LinearMorphism::identity(a.clone()),
            action: LeibnizAction::by_bracket(a),
        }
    }

    /// `(L1, L0, 0)` with trivial action.
    pub fn zero_boundary(l1: Arc<LeibnizAlgebra>, l0: Arc<LeibnizAlgebra>) -> Result<Self> {
        let boundary = LinearMorphism::zero(l1.clone(), l0.clone())?;
        CrossedModule::new(boundary, LeibnizAction::trivial(l0, l1)?)
    }

    pub fn l1(&self) -> &Arc<LeibnizAlgebra> {
        self.boundary.source()
    }

    pub fn l0(&self) -> &Arc<LeibnizAlgebra> {
        self.boundary.target()
    }

    pub fn boundary(&self) -> &LinearMorphism {
        &self.boundary
    }

    pub fn action(&self) -> &LeibnizAction {
        &self.action
    }

    pub(crate) fn parts(&self) -> XModParts<'_> {
        XModParts {
            boundary: self.boundary.matrix(),
            action: self.action.parts(),
        }
    }

    pub fn validate(&self) -> XModReport {
        let parts = self.parts();
        XModReport {
            morphism_ok: self.boundary.check_morphism(),
            action_ok: self.action.validate().all_ok(),
            lxm1: parts.holds(XModCondition::EquivariantLeft) && parts.holds(XModCondition::EquivariantRight),
            lxm2: parts.holds(XModCondition::PeifferRight) && parts.holds(XModCondition::PeifferLeft),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid("not a crossed module".into()))
        }
    }
}

pub fn validate_xmod(x: &CrossedModule) -> XModReport {
    x.validate()
}

/// `ker d` and whether it is abelian; the latter is computed, not assumed.
pub fn kernel_of_boundary(x: &CrossedModule) -> (Subspace, bool) {
    let k = x.boundary.kernel();
    let l1 = x.l1();
    let abelian = k
        .basis()
        .iter()
        .all(|a| k.basis().iter().all(|b| is_zero_vec(&l1.br(a, b))));
    (k, abelian)
}

/// Conditions checked by [`validate_xmod_morphism`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XModMorphismReport {
    pub maps_ok: bool,
    pub commutes: bool,
    pub left_equivariant: bool,
    pub right_equivariant: bool,
}

impl XModMorphismReport {
    pub fn all_ok(&self) -> bool {
        self.maps_ok && self.commutes && self.left_equivariant && self.right_equivariant
    }
}

/// `(f1, f0): (L1, L0, d) -> (M1, M0, d')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    f1: LinearMorphism,
    f0: LinearMorphism,
}

impl XModMorphism {
    pub fn new(source: CrossedModule, target: CrossedModule, f1: Matrix, f0: Matrix) -> Result<Self> {
        same_field(source.l1().field(), target.l1().field())?;
        let f1 = LinearMorphism::new(source.l1().clone(), target.l1().clone(), f1)?;
        let f0 = LinearMorphism::new(source.l0().clone(), target.l0().clone(), f0)?;
        Ok(XModMorphism {
            source,
            target,
            f1,
            f0,
        })
    }

    pub fn identity(x: CrossedModule) -> Self {
        let f1 = LinearMorphism::identity(x.l1().clone());
        let f0 = LinearMorphism::identity(x.l0().clone());
        XModMorphism {
            source: x.clone(),
            target: x,
            f1,
            f0,
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn f1(&self) -> &LinearMorphism {
        &self.f1
    }

    pub fn f0(&self) -> &LinearMorphism {
        &self.f0
    }

    /// `self . first`
    pub fn compose(&self, first: &XModMorphism) -> Result<XModMorphism> {
        if first.target != self.source {
            return Err(Error::Malformed("composite of non-adjacent crossed-module morphisms".into()));
        }
        XModMorphism::new(
            first.source.clone(),
            self.target.clone(),
            self.f1.matrix().mul(first.f1.matrix())?,
            self.f0.matrix().mul(first.f0.matrix())?,
        )
    }

    pub fn report(&self) -> XModMorphismReport {
        let (src, tgt) = (&self.source, &self.target);
        let (f1, f0) = (&self.f1, &self.f0);
        let commutes = f0.matrix().mul(src.boundary.matrix()).ok()
            == tgt.boundary.matrix().mul(f1.matrix()).ok();
        let (n1, n0) = (src.l1().dim(), src.l0().dim());
        let mut left = true;
        let mut right = true;
        for a in 0..n0 {
            let x = src.l0().unit(a);
            let fx = f0.at(&x);
            for b in 0..n1 {
                let m = src.l1().unit(b);
                let fm = f1.at(&m);
                left &= f1.at(&src.action.parts().lam(&x, &m)) == tgt.action.parts().lam(&fx, &fm);
                right &= f1.at(&src.action.parts().rho(&m, &x)) == tgt.action.parts().rho(&fm, &fx);
            }
        }
        XModMorphismReport {
            maps_ok: f1.check_morphism() && f0.check_morphism(),
            commutes,
            left_equivariant: left,
            right_equivariant: right,
        }
    }
}

pub fn validate_xmod_morphism(m: &XModMorphism) -> bool {
    m.report().all_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures::{a2, abelian};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn all_true() -> XModReport {
        XModReport {
            morphism_ok: true,
            action_ok: true,
            lxm1: true,
            lxm2: true,
        }
    }

    #[test]
    fn identity_crossed_module_is_valid() {
        let x = CrossedModule::identity(Arc::new(a2(q())));
        assert_eq!(validate_xmod(&x), all_true());
        let (k, abelian) = kernel_of_boundary(&x);
        assert_eq!(k.dim(), 0);
        assert!(abelian);
    }

    #[test]
    fn zero_boundary_on_abelian_is_valid() {
        let x = CrossedModule::zero_boundary(Arc::new(abelian(q(), 2)), Arc::new(a2(q()))).unwrap();
        assert_eq!(validate_xmod(&x), all_true());
        let (k, abelian) = kernel_of_boundary(&x);
        assert_eq!(k.dim(), 2);
        assert!(abelian);
    }

    #[test]
    fn identity_boundary_with_trivial_action_fails_lxm2() {
        let a = Arc::new(a2(q()));
        let x = CrossedModule::new(
            LinearMorphism::identity(a.clone()),
            LeibnizAction::trivial(a.clone(), a).unwrap(),
        )
        .unwrap();
        let r = validate_xmod(&x);
        assert!(r.morphism_ok && r.action_ok && !r.lxm2);
        // LXM1 fails as well: d(e1.e1) = 0 but [e1, d e1] = e2.
        assert!(!r.lxm1);
    }

    #[test]
    fn morphism_checks() {
        let a = Arc::new(a2(q()));
        let x = CrossedModule::identity(a.clone());
        assert!(validate_xmod_morphism(&XModMorphism::identity(x.clone())));

        let z = Arc::new(LeibnizAlgebra::zero(q()));
        let zero_x = CrossedModule::identity(z);
        let to_zero = XModMorphism::new(x.clone(), zero_x, Matrix::zeros(q(), 0, 2), Matrix::zeros(q(), 0, 2)).unwrap();
        assert!(validate_xmod_morphism(&to_zero));

        let bad = XModMorphism::new(x.clone(), x.clone(), Matrix::identity(q(), 2), Matrix::zeros(q(), 2, 2)).unwrap();
        let r = bad.report();
        assert!(!r.commutes);
        assert!(!validate_xmod_morphism(&bad));
    }

    #[test]
    fn composition_of_valid_morphisms() {
        let x = CrossedModule::identity(Arc::new(a2(q())));
        let id = XModMorphism::identity(x.clone());
        let z = CrossedModule::identity(Arc::new(LeibnizAlgebra::zero(q())));
        let to_zero = XModMorphism::new(x, z, Matrix::zeros(q(), 0, 2), Matrix::zeros(q(), 0, 2)).unwrap();
        let c = to_zero.compose(&id).unwrap();
        assert!(validate_xmod_morphism(&c));
        assert!(id.compose(&to_zero).is_err());
    }
}
