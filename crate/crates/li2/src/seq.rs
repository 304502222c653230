//! Finite sequence prefixes and the generalized binomial transform.
//!
//! Sequences are plain slices indexed from 0 (`f[0]` is F₀). The transform
//! `B(α, β)` maps F to `n ↦ Σ_{k=0}^{n} C(n,k) α^{n−k} β^k F_k`; its algebra
//! (composition, inverse, adjoint) and the Euler-type summation identity
//! `Σ F_k = Σ (B(α,1) F)_k / (α+1)^{k+1}` live here.

use crate::scalar::{KahanSum, Scalar};
use thiserror::Error;

/// The pair (α, β) parameterizing the transform `B(α, β)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformParams<S> {
    pub alpha: S,
    pub beta: S,
}

#[derive(Debug, Error, PartialEq)]
pub enum TransformError {
    /// `forward_shift` of a single-element prefix would be empty.
    #[error("empty result")]
    EmptyResult,
    /// β = 0: the transform has no inverse.
    #[error("not invertible: beta = 0")]
    NotInvertible,
    /// The prefix is too short for the requested truncated evaluation.
    #[error("insufficient prefix: need more than {needed} terms, have {len}")]
    InsufficientPrefix { needed: usize, len: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum EulerSumError<S: Scalar> {
    /// α = −1 makes the summation weight 1/(α+1)^{k+1} blow up.
    #[error("divergent weight: alpha = -1")]
    DivergentWeight,
    /// The prefix ran out before the partial sums settled; carries the
    /// partial sum and its diagnostics.
    #[error("not converged after {} terms", .0.terms_used)]
    NotConverged(EulerSum<S>),
}

impl<S: Scalar> TransformParams<S> {
    pub fn new(alpha: S, beta: S) -> Self {
        TransformParams { alpha, beta }
    }

    /// (0, 1), the identity transform.
    pub fn identity() -> Self {
        TransformParams {
            alpha: S::zero(),
            beta: S::one(),
        }
    }

    /// Parameters of the composition `B(self) ∘ B(inner)`:
    /// (α + α′β, ββ′) for self = (α, β), inner = (α′, β′).
    pub fn compose(self, inner: Self) -> Self {
        TransformParams {
            alpha: self.alpha + inner.alpha * self.beta,
            beta: self.beta * inner.beta,
        }
    }

    /// Parameters of the inverse transform, (−α/β, 1/β); requires β ≠ 0.
    pub fn invert(self) -> Result<Self, TransformError> {
        if self.beta.is_zero() {
            return Err(TransformError::NotInvertible);
        }
        Ok(TransformParams {
            alpha: -self.alpha / self.beta,
            beta: S::one() / self.beta,
        })
    }
}

/// Backward shift: prepend a zero, `(0, F₀, …, F_{N−1})`.
pub fn backward_shift<S: Scalar>(f: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(f.len());
    if f.is_empty() {
        return out;
    }
    out.push(S::zero());
    out.extend_from_slice(&f[..f.len() - 1]);
    out
}

/// Forward shift: drop the first element, `(F₁, …, F_N)`.
pub fn forward_shift<S: Scalar>(f: &[S]) -> Result<Vec<S>, TransformError> {
    if f.len() < 2 {
        return Err(TransformError::EmptyResult);
    }
    Ok(f[1..].to_vec())
}

/// Index multiplication: `n ↦ n·F_n`.
pub fn index_multiply<S: Scalar>(f: &[S]) -> Vec<S> {
    f.iter()
        .enumerate()
        .map(|(n, &v)| S::from_f64(n as f64) * v)
        .collect()
}

/// The generalized binomial transform `B(α, β)`:
/// `result[n] = Σ_{k=0}^{n} C(n,k) α^{n−k} β^k F_k`.
///
/// Direct O(N²) evaluation; the binomial coefficients come from the Pascal
/// row recurrence in the working precision (exact in binary64 through row
/// 56, exact far beyond the operating range in double-double).
pub fn binomial_transform<S: Scalar>(f: &[S], p: TransformParams<S>) -> Vec<S> {
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    let mut row: Vec<S> = Vec::with_capacity(n); // C(n, k) for the current n
    // beta_pow[k] = β^k F_k, reused across rows.
    let mut weighted: Vec<S> = Vec::with_capacity(n);
    let mut beta_pow = S::one();
    for (n_idx, &fk) in f.iter().enumerate() {
        weighted.push(beta_pow * fk);
        beta_pow = beta_pow * p.beta;
        // Extend the Pascal row from C(n-1, ·) to C(n, ·).
        row.push(S::one());
        for k in (1..n_idx).rev() {
            let s = row[k] + row[k - 1];
            row[k] = s;
        }
        let mut acc = S::zero();
        let mut alpha_pow = S::one(); // α^{n-k}, built from k = n down to 0
        for k in (0..=n_idx).rev() {
            acc = acc + row[k] * alpha_pow * weighted[k];
            alpha_pow = alpha_pow * p.alpha;
        }
        out.push(acc);
    }
    out
}

/// Truncated adjoint transform:
/// `result[n] = Σ_{k=n}^{N} C(k,n) α^{k−n} β^n F_k` for `n ≤ n_max`.
///
/// The adjoint is an infinite sum; this evaluates the partial sum over the
/// available prefix, so the caller owns the truncation error.
pub fn adjoint_transform<S: Scalar>(
    f: &[S],
    p: TransformParams<S>,
    n_max: usize,
) -> Result<Vec<S>, TransformError> {
    if n_max >= f.len() {
        return Err(TransformError::InsufficientPrefix {
            needed: n_max + 1,
            len: f.len(),
        });
    }
    let n_terms = f.len();
    // Pascal triangle rows 0..N, built additively (exact while in range).
    let mut triangle: Vec<Vec<S>> = Vec::with_capacity(n_terms);
    for k in 0..n_terms {
        let mut row = vec![S::one(); k + 1];
        for j in 1..k {
            row[j] = triangle[k - 1][j - 1] + triangle[k - 1][j];
        }
        triangle.push(row);
    }
    let mut out = Vec::with_capacity(n_max + 1);
    let mut beta_pow = S::one();
    // n indexes a column of the triangle, not a row.
    #[allow(clippy::needless_range_loop)]
    for n in 0..=n_max {
        let mut acc = S::zero();
        let mut alpha_pow = S::one();
        for k in n..n_terms {
            acc = acc + triangle[k][n] * alpha_pow * f[k];
            alpha_pow = alpha_pow * p.alpha;
        }
        out.push(acc * beta_pow);
        beta_pow = beta_pow * p.beta;
    }
    Ok(out)
}

/// Result of an Euler-type accelerated summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerSum<S: Scalar> {
    pub value: S,
    pub terms_used: usize,
    pub condition_number: Option<S::Real>,
}

/// Accelerated evaluation of `Σ_k F_k` through the summation identity
/// `Σ F_k = Σ (B(α,1) F)_k / (α+1)^{k+1}` (the β = 1 reduction: the summand
/// depends on α and β only through their quotient).
///
/// Terms are accumulated with compensated summation until two consecutive
/// terms fall below `tol` times the running sum, or the prefix is exhausted
/// (an error carrying the partial sum).
pub fn euler_sum<S: Scalar>(
    f: &[S],
    alpha: S,
    tol: S::Real,
) -> Result<EulerSum<S>, EulerSumError<S>> {
    let weight_base = alpha + S::one();
    if weight_base.is_zero() {
        return Err(EulerSumError::DivergentWeight);
    }
    let transformed = binomial_transform(f, TransformParams::new(alpha, S::one()));
    let mut acc = KahanSum::<S>::new();
    let mut weight = S::one() / weight_base;
    let mut small_in_a_row = 0;
    for &g in &transformed {
        let term = g * weight;
        acc.add(term);
        weight = weight / weight_base;
        if term.abs() <= tol * acc.value().abs() {
            small_in_a_row += 1;
            if small_in_a_row >= 2 {
                return Ok(EulerSum {
                    value: acc.value(),
                    terms_used: acc.count(),
                    condition_number: acc.condition_number(),
                });
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(EulerSumError::NotConverged(EulerSum {
        value: acc.value(),
        terms_used: acc.count(),
        condition_number: acc.condition_number(),
    }))
}
