//! Complex numbers over any [`Real`], with principal-branch logarithm and
//! square root that honor the sign of zero in the imaginary part. Rolling our
//! own (rather than pulling in a complex-number crate) keeps the type generic
//! over the crate's `Real` contract, which binary64 and double-double both
//! satisfy.

use super::{Real, Scalar};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Complex<R> {
    #[inline]
    pub fn new(re: R, im: R) -> Self {
        Complex { re, im }
    }

    #[inline]
    pub fn from_re(re: R) -> Self {
        Complex {
            re,
            im: R::zero(),
        }
    }

    pub fn i() -> Self {
        Complex {
            re: R::zero(),
            im: R::one(),
        }
    }

    /// Modulus, scaled to avoid overflow for widely ranged components.
    pub fn modulus(self) -> R {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a == R::zero() && b == R::zero() {
            return R::zero();
        }
        let m = a.max(b);
        if !m.is_finite() {
            return m;
        }
        let (p, q) = (a / m, b / m);
        m * (p * p + q * q).sqrt()
    }

    pub fn arg(self) -> R {
        self.im.atan2(self.re)
    }
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // Smith's algorithm: scale by the larger denominator component.
        if o.re.abs() >= o.im.abs() {
            let r = o.im / o.re;
            let d = o.re + o.im * r;
            Complex::new((self.re + self.im * r) / d, (self.im - self.re * r) / d)
        } else {
            let r = o.re / o.im;
            let d = o.re * r + o.im;
            Complex::new((self.re * r + self.im) / d, (self.im * r - self.re) / d)
        }
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Complex::new(-self.re, -self.im)
    }
}

impl<R: Real> Scalar for Complex<R> {
    type Real = R;

    fn zero() -> Self {
        Complex::new(R::zero(), R::zero())
    }
    fn one() -> Self {
        Complex::new(R::one(), R::zero())
    }
    fn from_f64(v: f64) -> Self {
        Complex::from_re(R::from_f64(v))
    }
    fn from_real(re: R) -> Self {
        Complex::from_re(re)
    }
    fn re(self) -> R {
        self.re
    }
    fn im(self) -> R {
        self.im
    }
    fn abs(self) -> R {
        self.modulus()
    }
    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    /// Principal logarithm: `ln|z| + i arg(z)` with `arg ∈ (−π, π]`; the sign
    /// of a zero imaginary part selects the side of the negative real axis.
    fn ln(self) -> Self {
        let m = self.modulus();
        Complex::new(m.ln(), self.arg())
    }

    /// Principal square root (branch cut on the negative real axis).
    fn sqrt(self) -> Self {
        let zero = R::zero();
        if self.re == zero && self.im == zero {
            return Complex::new(zero, self.im);
        }
        if self.im == zero && !self.im.is_sign_negative() && self.re >= zero {
            return Complex::new(self.re.sqrt(), self.im);
        }
        let m = self.modulus();
        let two = R::from_f64(2.0);
        let w = ((m + self.re.abs()) / two).sqrt();
        if self.re >= zero {
            Complex::new(w, self.im / (w + w))
        } else {
            Complex::new(self.im.abs() / (w + w), w.copysign(self.im))
        }
    }

    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn with_signed_zero_im(self, negative: bool) -> Option<Self> {
        let z = if negative {
            -R::zero()
        } else {
            R::zero()
        };
        Some(Complex::new(self.re, z))
    }
}

impl<R: Real> fmt::Display for Complex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dd;

    type C = Complex<f64>;

    #[test]
    fn field_ops() {
        let a = C::new(1.0, -2.0);
        let b = C::new(-3.0, 0.5);
        assert_eq!(a + b, C::new(-2.0, -1.5));
        assert_eq!(a * b, C::new(-3.0 + 1.0, 0.5 + 6.0));
        let q = a / b;
        let back = q * b;
        assert!((back - a).abs() < 1e-15);
    }

    #[test]
    fn principal_log_branch() {
        // ln(-1 ± 0i) = ±iπ: the signed zero picks the side of the cut.
        let above = C::new(-1.0, 0.0).ln();
        let below = C::new(-1.0, -0.0).ln();
        assert_eq!(above.im, std::f64::consts::PI);
        assert_eq!(below.im, -std::f64::consts::PI);
        // The two sides differ by 2πi in the imaginary component.
        assert_eq!(above.im - below.im, 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn sqrt_branches_and_signed_zero() {
        let z = C::new(-4.0, 0.0).sqrt();
        assert_eq!((z.re, z.im), (0.0, 2.0));
        let z = C::new(-4.0, -0.0).sqrt();
        assert_eq!((z.re, z.im), (0.0, -2.0));
        let w = C::new(3.0, -4.0);
        let r = w.sqrt();
        assert!((r * r - w).abs() < 1e-14);
        assert!(r.re >= 0.0);
        // sqrt of a signed zero keeps the imaginary sign and stays finite.
        let z = C::new(0.0, -0.0).sqrt();
        assert_eq!(z.re, 0.0);
        assert!(z.im == 0.0 && z.im.is_sign_negative());
    }

    #[test]
    fn ln_exp_consistency_dd() {
        let z = Complex::<Dd>::new(Dd::from_f64(-2.5), Dd::from_f64(1.25));
        let l = z.ln();
        // Rebuild z from polar parts computed in double-double.
        let m = Real::exp(l.re);
        let (s, c) = l.im.sin_cos();
        let back = Complex::new(m * c, m * s);
        assert!((back - z).abs().to_f64() < 1e-29);
    }

    #[test]
    fn dd_log_negative_real_two_pi_jump() {
        let above = Complex::<Dd>::new(Dd::from_f64(-3.0), Dd::ZERO).ln();
        let below = Complex::<Dd>::new(Dd::from_f64(-3.0), -Dd::ZERO).ln();
        let jump = above.im - below.im;
        assert!(Real::abs(jump - Dd::PI.scale_pow2(2.0)).to_f64() < 1e-30);
    }
}
