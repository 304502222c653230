//! Precision-generic scalar contract and compensated summation.
//!
//! Everything downstream (transforms, recurrences, the Li₂ evaluator) is
//! written against two traits:
//!
//! * [`Real`] — an ordered floating-point type: binary64 (`f64`) or the
//!   double-double type [`Dd`] (≈106-bit significand).
//! * [`Scalar`] — a real or complex field over some `Real`, with the handful
//!   of operations the algorithms need: arithmetic, absolute value, principal
//!   logarithm and square root, conjugation, and the unit roundoff of the
//!   working precision.
//!
//! Complex scalars honor the sign of zero in the imaginary part, so limits
//! onto a branch cut can be taken from either side.

mod complex;
mod dd;
mod kahan;

pub use complex::Complex;
pub use dd::Dd;
pub use kahan::KahanSum;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An ordered floating-point type usable as the real part of a [`Scalar`].
pub trait Real:
    Copy
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact for integers and dyadic rationals representable in binary64.
    fn from_f64(v: f64) -> Self;
    /// Nearest binary64 value.
    fn to_f64(self) -> f64;
    /// Unit roundoff `u` of the working precision (2⁻⁵³ for binary64), the
    /// relative error of a single correctly rounded operation.
    fn unit_roundoff() -> Self;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    /// Four-quadrant arctangent of `self / x`, honoring signed zero.
    fn atan2(self, x: Self) -> Self;
    fn cos(self) -> Self;
    fn pi() -> Self;
    fn infinity() -> Self;
    /// Smallest positive normal value; used as an underflow guard.
    fn tiny() -> Self;
    fn is_finite(self) -> bool;
    fn is_nan(self) -> bool;
    fn is_sign_negative(self) -> bool;
    fn copysign(self, sign: Self) -> Self;

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

/// A real or complex scalar under the precision-generic contract.
///
/// `abs` returns a [`Real`] (the modulus); `ln` and `sqrt` are principal
/// branches for complex instantiations and the usual real functions
/// otherwise.
pub trait Scalar:
    Copy
    + Debug
    + Display
    + PartialEq
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    type Real: Real;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn from_real(re: Self::Real) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    /// Modulus; `abs(x) ≥ 0`, with equality iff `x = 0`.
    fn abs(self) -> Self::Real;
    fn conj(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn is_finite(self) -> bool;

    /// For complex types, a copy of `self` with the imaginary part replaced
    /// by a signed zero (`+0` unless `negative`), used to approach a branch
    /// cut from a chosen side. Real types return `None`: the one-sided limit
    /// is not representable.
    fn with_signed_zero_im(self, negative: bool) -> Option<Self>;

    fn unit_roundoff() -> Self::Real {
        Self::Real::unit_roundoff()
    }

    fn is_zero(self) -> bool {
        self == Self::zero()
    }

    /// Equality within an absolute tolerance measured in the modulus.
    fn approx_eq(self, other: Self, tol: Self::Real) -> bool {
        (self - other).abs() <= tol
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn unit_roundoff() -> Self {
        // 2^-53; f64::EPSILON is the spacing 2^-52.
        f64::EPSILON / 2.0
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn infinity() -> Self {
        f64::INFINITY
    }
    fn tiny() -> Self {
        f64::MIN_POSITIVE
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn is_nan(self) -> bool {
        f64::is_nan(self)
    }
    fn is_sign_negative(self) -> bool {
        f64::is_sign_negative(self)
    }
    fn copysign(self, sign: Self) -> Self {
        f64::copysign(self, sign)
    }
}

impl Scalar for f64 {
    type Real = f64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_real(re: f64) -> Self {
        re
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn with_signed_zero_im(self, _negative: bool) -> Option<Self> {
        None
    }
}

impl Scalar for Dd {
    type Real = Dd;

    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(v: f64) -> Self {
        Dd::from_f64(v)
    }
    fn from_real(re: Dd) -> Self {
        re
    }
    fn re(self) -> Dd {
        self
    }
    fn im(self) -> Dd {
        Dd::ZERO
    }
    fn abs(self) -> Dd {
        Real::abs(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn ln(self) -> Self {
        Real::ln(self)
    }
    fn sqrt(self) -> Self {
        Real::sqrt(self)
    }
    fn is_finite(self) -> bool {
        Real::is_finite(self)
    }
    fn with_signed_zero_im(self, _negative: bool) -> Option<Self> {
        None
    }
}
