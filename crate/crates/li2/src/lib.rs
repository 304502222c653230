//! Evaluation of the dilogarithm Li₂ on ℂ ∖ [1, ∞) through a series obtained
//! by applying a generalized binomial transform to the Maclaurin summand,
//! together with the sequence- and recurrence-level machinery behind it.
//!
//! The crate is organized in four layers:
//!
//! * [`scalar`] — a precision-generic scalar contract ([`Scalar`], [`Real`])
//!   with binary64, double-double extended precision, and complex
//!   instantiations, plus compensated summation with condition-number
//!   tracking ([`KahanSum`]).
//! * [`seq`] — finite sequence prefixes, shift operators, the generalized
//!   binomial transform `B(α, β)` and its algebraic laws, and the Euler-type
//!   summation identity.
//! * [`recurrence`] — linear recurrences with polynomial coefficients and the
//!   mechanical transform of such a recurrence under `B(α, β)`.
//! * [`dilog`] — the Li₂ evaluator: the `W` summand recursion, functional
//!   identity dispatch, and convergence-rate utilities.
//!
//! ```
//! use li2::{li2, Complex};
//!
//! let v = li2(Complex::new(-1.0, 0.0)).unwrap();
//! assert!((v.value.re + std::f64::consts::PI.powi(2) / 12.0).abs() < 1e-15);
//! ```

pub mod dilog;
pub mod recurrence;
pub mod scalar;
pub mod seq;

pub use dilog::{
    circle_sweep, dispatch, li2, li2_via, li2_with, min_rate, optimal_alpha, CutPolicy,
    DilogError, DilogResult, EvalOptions, Identity, RateReport, SweepPoint,
};
pub use scalar::{Complex, Dd, KahanSum, Real, Scalar};
pub use seq::TransformParams;
