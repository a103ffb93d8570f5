//! Exact finite-scale measure algebra.
//!
//! Finite Boolean and probability algebras with their morphisms, Stone
//! duality and the Loomis–Sikorski delete spaces, the function-algebra
//! duality `L∞ ⊣ Idem`, canonical (Stone) models, disintegration and
//! relative products, a lazily audited Kolmogorov extension engine, and an
//! exhaustive category-law checker that verifies all of the above on
//! enumerated instances.
//!
//! Every quantity is generic over [`scalar::Scalar`]; the exact field
//! [`scalar::Rational`] is the default and the only one the law suites
//! accept as evidence. The `…Q` and `…F64` aliases below fix the field.

pub mod boolalg;
pub mod canmodel;
pub mod disint;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod funcalg;
pub mod gen;
pub mod ident;
pub mod kolmo;
pub mod lawcheck;
pub mod proba;
pub mod scalar;
pub mod stoned;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

pub type ProbAlgebraQ = proba::ProbAlgebra<Rational>;
pub type ProbAlgebraF64 = proba::ProbAlgebra<f64>;
pub type ProbMorphismQ = proba::ProbMorphism<Rational>;
pub type ProbMorphismF64 = proba::ProbMorphism<f64>;
pub type MeasuredBoolQ = proba::MeasuredBool<Rational>;
pub type MeasuredBoolF64 = proba::MeasuredBool<f64>;
pub type FuncAlgQ = funcalg::FuncAlg<Rational>;
pub type FuncAlgF64 = funcalg::FuncAlg<f64>;
pub type KernelQ = disint::Kernel<Rational>;
pub type KernelF64 = disint::Kernel<f64>;
pub type ConcreteModelQ = canmodel::ConcreteModel<Rational>;
pub type CylinderMeasureQ = kolmo::CylinderMeasure<Rational>;
