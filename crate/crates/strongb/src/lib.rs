//! Verification workbench for hyperreflexivity-constant estimates.
//!
//! The crate has two halves that meet in the reporting layer:
//!
//! * **Certified Fourier arithmetic on the circle** ([`fourier`], [`tensor`],
//!   [`witness`], [`constants`]): trigonometric polynomials carrying rigorous
//!   error budgets, used to machine-check a chain of twelve inequalities
//!   behind a closed-form hyperreflexivity bound and to evaluate that bound.
//! * **Finite-dimensional estimation** ([`findim`]): small normed algebras,
//!   Hochschild cochain calculus, and one-sided estimators for subspace
//!   distances, strong-property-(B) ratios, and commutant reflexivity, used
//!   to probe the same inequalities where exact computation is possible.
//!
//! Everything numeric is generic over the scalar via [`scalar::Real`];
//! `f64` aliases are exported at the crate root. All randomized estimators
//! take explicit seeds and produce byte-identical reports for identical
//! inputs.

pub mod constants;
pub mod findim;
pub mod fourier;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod witness;

pub use scalar::{real, Cx, Real};

/// Double-precision certified circle-function element.
pub type FourierElement64 = fourier::FourierElement<f64>;
/// Double-precision symmetric arc.
pub type Interval64 = fourier::Interval<f64>;
/// Double-precision two-variable trigonometric polynomial.
pub type TensorElement64 = tensor::TensorElement<f64>;
/// Double-precision structure-constant algebra.
pub type Algebra64 = findim::algebra::AlgebraSpec<f64>;
/// Double-precision bimodule over a structure-constant algebra.
pub type Bimodule64 = findim::algebra::BimoduleSpec<f64>;
/// Double-precision multilinear map between coordinate spaces.
pub type MultilinearMap64 = findim::multilinear::MultilinearMap<f64>;
/// Double-precision norm designator.
pub type NormKind64 = findim::norms::NormKind<f64>;
