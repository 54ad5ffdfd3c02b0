//! Exact computations with finite-dimensional Leibniz algebras, their
//! actions and crossed modules, and internal groupoids and coverings built
//! from them. Scalars are exact rationals or residues modulo a prime.

pub mod action;
pub mod algebra;
pub mod covering;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod tensor;
pub mod xmod;

pub use action::{
    derived_action, extension_iso, semidirect, validate_action, validate_split_extension, ActionAxiom,
    ActionReport, ExtensionReport, LeibnizAction, SplitExtension,
};
pub use algebra::{check_morphism, direct_product, is_ideal, validate_algebra, AlgebraReport, LeibnizAlgebra, LinearMorphism};
pub use covering::{
    action_groupoid, check_covering, check_covering_xmod, covering_class, covering_to_action, gpd_cov_to_xmod_cov,
    lift, roundtrip_cov_action, validate_gpd_action, xmod_cov_to_gpd_cov, CoveringClass, CoveringXModMorphism,
    GroupoidAction, GroupoidActionReport,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use groupoid::{
    delta, eta, roundtrip_delta_eta, roundtrip_eta_delta, validate_groupoid, GroupoidMorphism,
    GroupoidMorphismReport, GroupoidReport, InternalGroupoid, Transitivity, TransitivityClass,
};
pub use io::{parse, serialize, Document, Kind, Report, Structure};
pub use linalg::{is_bijective, kernel_image, pullback_basis, solve, AffineSubspace, Matrix, Subspace};
pub use tensor::Tensor3;
pub use xmod::{
    kernel_of_boundary, validate_xmod, validate_xmod_morphism, CrossedModule, XModMorphism, XModMorphismReport,
    XModReport,
};
