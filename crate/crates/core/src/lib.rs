//! Exact Maurer–Cartan computations in weight-nilpotent dglas, dgas, L∞ and
//! A∞ algebras, including the gauge action computed by several independent
//! routes.

pub mod error;
pub mod freealg;
pub mod gauge;
pub mod graded;
pub mod scalar;
pub mod structure;
pub mod trees;

pub use error::{Error, Result};
pub use freealg::{
    build_cylinder, build_representing, cylinder_gauge, exp_bracket_derivation, gauge_via_exp,
    Alphabet, DerivationTable, Flavor, FreeElement, RepresentingAlgebra,
};
pub use gauge::{
    bernoulli, gauge_closed, gauge_dga, gauge_trees_a, gauge_trees_l, homotopy_witness_check,
    ls_interval, sullivan_witness, verify_ls, NcAlgebra, NcPolynomial,
};
pub use graded::{Generator, GradedElement};
pub use scalar::Scalar;
pub use structure::{AlgebraSpec, Kind, McConvention, PolyPath, SpecBuilder, ValidationReport};

/// Arbitrary-precision rationals, the default scalar field.
pub type Rational = num_rational::BigRational;
/// Machine-size rationals for small fast computations.
pub type SmallRational = num_rational::Ratio<i64>;
