//! Compensated summation with condition-number accumulation.
//!
//! The compensation is Neumaier's variant of Kahan's scheme: the correction
//! term also absorbs the case where an incoming term dominates the running
//! sum, so low-order bits survive even when a large partial sum cancels away
//! (e.g. the terms `1, 1e-17, -1` sum to exactly `1e-17`). The accumulated
//! quotient Σ|tₖ| / |Σ tₖ| is the condition number of the sum; the rounding
//! error of the compensated sum is bounded by the unit roundoff times twice
//! that condition number.

use super::{Real, Scalar};

/// Compensated accumulator tracking the running sum, the correction term,
/// the plain sum of absolute values, and the term count.
#[derive(Clone, Copy, Debug)]
pub struct KahanSum<S: Scalar> {
    sum: S,
    compensation: S,
    abs_sum: S::Real,
    count: usize,
}

impl<S: Scalar> Default for KahanSum<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> KahanSum<S> {
    pub fn new() -> Self {
        KahanSum {
            sum: S::zero(),
            compensation: S::zero(),
            abs_sum: S::Real::zero(),
            count: 0,
        }
    }

    /// Add one term. The absolute-value accumulator uses plain addition: it
    /// only feeds a diagnostic quotient.
    pub fn add(&mut self, term: S) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation = self.compensation + ((self.sum - t) + term);
        } else {
            self.compensation = self.compensation + ((term - t) + self.sum);
        }
        self.sum = t;
        self.abs_sum = self.abs_sum + term.abs();
        self.count += 1;
    }

    /// The compensated sum of all terms so far.
    pub fn value(&self) -> S {
        self.sum + self.compensation
    }

    /// Σ|tₖ| accumulated with plain addition.
    pub fn abs_sum(&self) -> S::Real {
        self.abs_sum
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Condition number Σ|tₖ| / |Σ tₖ|, at least 1 whenever the sum is
    /// nonzero; `None` when the sum is zero (undefined). In exact arithmetic
    /// the quotient cannot fall below 1; a rounded quotient can by an ulp,
    /// so it is clamped.
    pub fn condition_number(&self) -> Option<S::Real> {
        let v = self.value().abs();
        if v == S::Real::zero() {
            None
        } else {
            Some((self.abs_sum / v).max(S::Real::one()))
        }
    }

    /// Relative rounding-error bound `2 u κ` (unit roundoff times twice the
    /// condition number); `None` when the sum is zero.
    pub fn relative_error_bound(&self) -> Option<S::Real> {
        let two = S::Real::from_f64(2.0);
        self.condition_number()
            .map(|kappa| two * S::unit_roundoff() * kappa)
    }

    /// Absolute rounding-error bound `2 u κ |Σ tₖ|`; `None` when the sum is
    /// zero.
    pub fn error_bound(&self) -> Option<S::Real> {
        self.relative_error_bound().map(|r| r * self.value().abs())
    }
}

impl<S: Scalar> Extend<S> for KahanSum<S> {
    fn extend<I: IntoIterator<Item = S>>(&mut self, iter: I) {
        for t in iter {
            self.add(t);
        }
    }
}
