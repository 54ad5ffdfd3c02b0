//! Named small structures used throughout the tests, the CLI and the docs.

use std::sync::Arc;

use crate::action::{LeibnizAction, SplitExtension};
use crate::algebra::{LeibnizAlgebra, LinearMorphism};
use crate::covering::GroupoidAction;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groupoid::{GroupoidMorphism, InternalGroupoid};
use crate::io::Structure;
use crate::tensor::Tensor3;
use crate::xmod::{CrossedModule, XModMorphism};

/// Dimension 2 with `[e1, e1] = e2` and every other bracket zero.
pub fn a2(field: FieldSpec) -> LeibnizAlgebra {
    let t = Tensor3::from_entries(field, [2, 2, 2], [(0, 0, 1, field.one())]).expect("in bounds");
    LeibnizAlgebra::new(t, None).expect("A2 is Leibniz")
}

/// Abelian of dimension `n`.
pub fn abelian(field: FieldSpec, n: usize) -> LeibnizAlgebra {
    LeibnizAlgebra::abelian(field, n)
}

/// The non-abelian two dimensional Lie algebra `[e1, e2] = e2 = -[e2, e1]`.
pub fn lie2(field: FieldSpec) -> LeibnizAlgebra {
    let t = Tensor3::from_entries(
        field,
        [2, 2, 2],
        [(0, 1, 1, field.one()), (1, 0, 1, field.from_i64(-1))],
    )
    .expect("in bounds");
    LeibnizAlgebra::new(t, None).expect("Lie algebras are Leibniz")
}

/// Dimension 2 with only `[e2, e1] = e2`: Leibniz but not Lie.
pub fn r2(field: FieldSpec) -> LeibnizAlgebra {
    let t = Tensor3::from_entries(field, [2, 2, 2], [(1, 0, 1, field.one())]).expect("in bounds");
    LeibnizAlgebra::new(t, None).expect("R2 is Leibniz")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub payload: Structure,
}

fn fx(name: &str, payload: Structure) -> Fixture {
    Fixture {
        name: name.to_string(),
        payload,
    }
}

/// The fixture set over the rationals.
pub fn fixtures() -> Vec<Fixture> {
    fixtures_over(FieldSpec::Rational)
}

/// The fixture set over `field`, in a fixed order. Every entry is validated
/// before it is returned.
pub fn fixtures_over(field: FieldSpec) -> Vec<Fixture> {
    build(field).expect("fixtures are well formed")
}

fn build(f: FieldSpec) -> Result<Vec<Fixture>> {
    let zero = Arc::new(LeibnizAlgebra::zero(f));
    let ab1 = Arc::new(abelian(f, 1));
    let ab2 = Arc::new(abelian(f, 2));
    let a = Arc::new(a2(f));
    let lie = Arc::new(lie2(f));
    let r = Arc::new(r2(f));

    let pair_a2 = InternalGroupoid::pair(a.clone())?;
    let pair_ab2 = InternalGroupoid::pair(ab2.clone())?;
    let one_ab2 = InternalGroupoid::one_object(ab2.clone())?;
    let disc_a2 = InternalGroupoid::discrete(a.clone());
    let idx_a2 = CrossedModule::identity(a.clone());

    let mut out = vec![
        fx("Zero", Structure::Algebra(zero.as_ref().clone())),
        fx("Ab(1)", Structure::Algebra(ab1.as_ref().clone())),
        fx("Ab(2)", Structure::Algebra(ab2.as_ref().clone())),
        fx("A2", Structure::Algebra(a.as_ref().clone())),
        fx("Lie2", Structure::Algebra(lie.as_ref().clone())),
        fx("R2", Structure::Algebra(r.as_ref().clone())),
        fx("Id(A2)", Structure::Morphism(LinearMorphism::identity(a.clone()))),
        fx("SelfAct(A2)", Structure::Action(LeibnizAction::by_bracket(a.clone()))),
        fx("SelfAct(Lie2)", Structure::Action(LeibnizAction::by_bracket(lie.clone()))),
        fx("SelfExt(A2)", Structure::Extension(SplitExtension::self_extension(a.clone())?)),
        fx("SelfExt(Ab(2))", Structure::Extension(SplitExtension::self_extension(ab2.clone())?)),
        fx("SelfExt(R2)", Structure::Extension(SplitExtension::self_extension(r.clone())?)),
        fx("IdX(A2)", Structure::XMod(idx_a2.clone())),
        fx("IdX(Lie2)", Structure::XMod(CrossedModule::identity(lie.clone()))),
        fx("ZeroX(Ab(2),A2)", Structure::XMod(CrossedModule::zero_boundary(ab2.clone(), a.clone())?)),
        fx("IdXMor(IdX(A2))", Structure::XModMorphism(XModMorphism::identity(idx_a2))),
        fx("PairGpd(A2)", Structure::Groupoid(pair_a2.clone())),
        fx("PairGpd(Ab(2))", Structure::Groupoid(pair_ab2.clone())),
        fx("OneObj(Ab(2))", Structure::Groupoid(one_ab2.clone())),
        fx("Discrete(A2)", Structure::Groupoid(disc_a2.clone())),
        fx("IdCover(PairGpd(A2))", Structure::GpdMorphism(GroupoidMorphism::identity(pair_a2.clone()))),
        fx("IdCover(PairGpd(Ab(2)))", Structure::GpdMorphism(GroupoidMorphism::identity(pair_ab2))),
        fx("IdCover(OneObj(Ab(2)))", Structure::GpdMorphism(GroupoidMorphism::identity(one_ab2))),
        fx("IdCover(Discrete(A2))", Structure::GpdMorphism(GroupoidMorphism::identity(disc_a2))),
        fx("CanonAct(PairGpd(A2))", Structure::GpdAction(GroupoidAction::canonical(pair_a2)?)),
    ];
    for fixture in &mut out {
        if !fixture.payload.is_valid() {
            return Err(Error::Internal(format!("fixture {} failed validation", fixture.name)));
        }
    }
    out.shrink_to_fit();
    Ok(out)
}

/// Looks a fixture up by name.
pub fn fixture(name: &str, field: FieldSpec) -> Option<Fixture> {
    fixtures_over(field).into_iter().find(|f| f.name == name)
}

/// The groupoids among the fixtures.
pub fn fixture_groupoids(field: FieldSpec) -> Vec<(String, InternalGroupoid)> {
    fixtures_over(field)
        .into_iter()
        .filter_map(|f| match f.payload {
            Structure::Groupoid(g) => Some((f.name, g)),
            _ => None,
        })
        .collect()
}

/// The crossed modules among the fixtures.
pub fn fixture_xmods(field: FieldSpec) -> Vec<(String, CrossedModule)> {
    fixtures_over(field)
        .into_iter()
        .filter_map(|f| match f.payload {
            Structure::XMod(x) => Some((f.name, x)),
            _ => None,
        })
        .collect()
}
