//! Evaluation, ray asymptotics and verification tools for the entire functions
//!
//! ```text
//! F(z) = Fp int_0^inf t^beta exp(i t^alpha - i z t) dt,   Im z < 0,
//! ```
//!
//! continued to the whole complex plane, for `alpha > 1` and complex `beta`.
//! Hadamard finite parts regularize the integral at the origin when
//! `Re beta <= -1`.

pub mod asymptotics;
pub mod cli;
pub mod domain;
pub mod evaluator;
pub mod gamma;
pub mod quad;
pub mod saddle;
pub mod series;
pub mod tauberian;
pub mod verification;

pub use domain::{EvalPoint, ParamError, Params, ResonancePair};
pub use num_complex::Complex64;
pub use quad::{QuadConfig, QuadResult};
