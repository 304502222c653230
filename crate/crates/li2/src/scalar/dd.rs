//! Double-double arithmetic: an unevaluated sum of two binary64 values
//! giving roughly a 106-bit significand. This is the crate's extended
//! precision; reference oracles in the test suites run on it.
//!
//! The arithmetic kernels (two-sum, two-product via fused multiply-add,
//! renormalization) are the standard error-free transformations. Elementary
//! functions are computed from a binary64 seed followed by one Newton
//! correction carried out in double-double, which leaves them accurate to a
//! small multiple of the unit roundoff — plenty for their role here.

use super::Real;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Double-double value `hi + lo` with `hi = fl(hi + lo)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires `|a| >= |b|` or `a == 0`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Exact two-term sum of binary64 values.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Multiplication by a power of two, exact.
    #[inline]
    pub fn scale_pow2(self, s: f64) -> Dd {
        debug_assert!(s.abs().log2().fract() == 0.0);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    fn sin_cos_reduced(r: Dd) -> (Dd, Dd) {
        // Taylor series; caller guarantees |r| <= pi/4 + slack.
        let r2 = r * r;
        let mut sin = r;
        let mut term = r;
        let mut k = 1.0;
        for _ in 0..16 {
            term = term * r2 / Dd::from_f64(-(k + 1.0) * (k + 2.0));
            sin = sin + term;
            k += 2.0;
        }
        let mut cos = Dd::ONE;
        term = Dd::ONE;
        k = 0.0;
        for _ in 0..16 {
            term = term * r2 / Dd::from_f64(-(k + 1.0) * (k + 2.0));
            cos = cos + term;
            k += 2.0;
        }
        (sin, cos)
    }

    /// Sine and cosine for |t| up to a few multiples of π.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let q = (self.hi / Dd::FRAC_PI_2.hi).round();
        let r = self - Dd::FRAC_PI_2 * Dd::from_f64(q);
        let (s, c) = Dd::sin_cos_reduced(r);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, other: Dd) -> Dd {
        self + (-other)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - other * Dd::from_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other * Dd::from_f64(q2);
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Real for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(v: f64) -> Self {
        Dd::from_f64(v)
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn unit_roundoff() -> Self {
        Dd::from_f64(2.0_f64.powi(-104))
    }

    fn abs(self) -> Self {
        if self.hi.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self == Dd::ZERO {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        // Binary64 seed plus one Newton step carried out in double-double.
        let y = Dd::from_f64(self.hi.sqrt());
        let delta = (self - y * y).hi * (0.5 / y.hi);
        y + Dd::from_f64(delta)
    }

    fn ln(self) -> Self {
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        if self == Dd::ZERO {
            return Dd::from_f64(f64::NEG_INFINITY);
        }
        if !Real::is_finite(self) {
            return Dd::from_f64(self.hi.ln());
        }
        // self = m * 2^e with m in [1/√2, √2); ln m from the atanh series
        // 2 Σ t^{2k+1}/(2k+1) with t = (m−1)/(m+1), |t| ≤ 0.172.
        let mut e = ((self.hi.to_bits() >> 52) & 0x7ff) as i64 - 1023;
        let mut m = self.scale_pow2(2.0_f64.powi(-e as i32));
        if m.hi >= std::f64::consts::SQRT_2 {
            m = m.scale_pow2(0.5);
            e += 1;
        }
        let t = (m - Dd::ONE) / (m + Dd::ONE);
        let t2 = t * t;
        let mut term = t;
        let mut sum = t;
        for k in 1..=22 {
            term = term * t2;
            sum = sum + term / Dd::from_f64((2 * k + 1) as f64);
        }
        Dd::LN_2 * Dd::from_f64(e as f64) + sum.scale_pow2(2.0)
    }

    fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        // exp(v) = 2^m exp(r), r = v - m ln 2, then Taylor on r / 2^6.
        let m = (self.hi / Dd::LN_2.hi).round();
        let r = self - Dd::LN_2 * Dd::from_f64(m);
        let w = r.scale_pow2(2.0_f64.powi(-6));
        let mut sum = Dd::ONE + w;
        let mut term = w;
        for k in 2..=14 {
            term = term * w / Dd::from_f64(k as f64);
            sum = sum + term;
        }
        for _ in 0..6 {
            sum = sum * sum;
        }
        sum.scale_pow2(2.0_f64.powi(m as i32))
    }

    fn atan2(self, x: Dd) -> Self {
        let y = self;
        if y == Dd::ZERO {
            // Preserve the f64 conventions for signed zero on the axes.
            return if x.hi.is_sign_negative() {
                if y.hi.is_sign_negative() {
                    -Dd::PI
                } else {
                    Dd::PI
                }
            } else {
                Dd::from_f64(y.hi.atan2(x.hi))
            };
        }
        if x == Dd::ZERO {
            return if y.hi > 0.0 {
                Dd::FRAC_PI_2
            } else {
                -Dd::FRAC_PI_2
            };
        }
        // Newton refinement of the binary64 seed z0:
        // f(z) = y cos z - x sin z, z1 = z0 + f(z0) / (y sin z0 + x cos z0).
        let z0 = y.hi.atan2(x.hi);
        let (s, c) = Dd::from_f64(z0).sin_cos();
        let num = y * c - x * s;
        let den = y * s + x * c;
        Dd::from_f64(z0) + num / den
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn pi() -> Self {
        Dd::PI
    }
    fn infinity() -> Self {
        Dd::from_f64(f64::INFINITY)
    }
    fn tiny() -> Self {
        Dd::from_f64(f64::MIN_POSITIVE)
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn copysign(self, sign: Dd) -> Self {
        if self.hi.is_sign_negative() == sign.hi.is_sign_negative() {
            self
        } else {
            -self
        }
    }
}

impl Dd {
    /// Decimal string with `digits` significant digits, scientific form.
    pub fn to_decimal(self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.hi.is_nan() {
            return "NaN".to_string();
        }
        if !self.hi.is_finite() {
            return if self.hi > 0.0 { "inf" } else { "-inf" }.to_string();
        }
        if self.hi == 0.0 {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let neg = self.hi < 0.0;
        let mut v = Real::abs(self);
        let mut e10 = 0i32;
        let ten = Dd::from_f64(10.0);
        // Normalize into [1, 10).
        while v.hi >= 10.0 {
            v = v / ten;
            e10 += 1;
        }
        while v.hi < 1.0 {
            v = v * ten;
            e10 -= 1;
        }
        let mut digs: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = (v.hi.floor() as i64).clamp(0, 9) as u8;
            digs.push(d);
            v = (v - Dd::from_f64(d as f64)) * ten;
        }
        // Round the extra digit away.
        if digs[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    digs.insert(0, 1);
                    e10 += 1;
                    break;
                }
                i -= 1;
                if digs[i] == 9 {
                    digs[i] = 0;
                } else {
                    digs[i] += 1;
                    break;
                }
            }
        }
        digs.truncate(digits);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push((b'0' + digs[0]) as char);
        if digits > 1 {
            s.push('.');
            for &d in &digs[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&e10.to_string());
        s
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(32))
    }
}
