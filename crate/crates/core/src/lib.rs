//! Seminorms interpolating between the `A`-numerical radius and the
//! `A`-operator seminorm, and the Birkhoff–James orthogonality they induce,
//! for operators on a finite-dimensional semi-Hilbertian space.
//!
//! Given a positive semidefinite `A` and `λ ∈ [0, 1]`,
//!
//! ```text
//!     ‖T‖_(A,λ) = sup { √(λ‖Tx‖²_A + (1−λ)|⟨Tx, x⟩_A|²) : ‖x‖_A = 1 }.
//! ```
//!
//! All numerical routines are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which the harness and CLI use.

pub mod engine;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod orthogonality;
pub mod scalar;
pub mod semispace;

pub use engine::{Lambda, Mode, OptimizerConfig};
pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Complex = num_complex::Complex<f64>;
pub type ComplexMatrix = linalg::Matrix<f64>;
pub type ComplexMatrix32 = linalg::Matrix<f32>;
pub type HermitianEigen = linalg::HermitianEigen<f64>;
pub type PositiveOperator = semispace::PositiveOperator<f64>;
pub type PositiveOperator32 = semispace::PositiveOperator<f32>;
pub type ReducedOperator = semispace::ReducedOperator<f64>;
pub type EvalResult = engine::EvalResult<f64>;
pub type EvalResult32 = engine::EvalResult<f32>;
pub type OrthogonalityVerdict = orthogonality::OrthogonalityVerdict<f64>;
pub type EqualityReport = orthogonality::EqualityReport<f64>;
pub type ThetaConditionReport = orthogonality::ThetaConditionReport<f64>;
