//! Linear recurrences with polynomial coefficients, and their mechanical
//! transformation under the generalized binomial transform.
//!
//! A [`Recurrence`] of order r asserts `Σ_{j=0}^{r} P_j(n) · F[n+j] = 0` for
//! all `n ≥ offset`, with each `P_j` a polynomial in the index. The set of
//! such sequences is closed under `B(α, β)`; [`transform_recurrence`] makes
//! the closure executable: it conjugates the recurrence operator through the
//! transform using the two operator identities
//!
//! ```text
//! B M   = M (I − α S) B          (index multiplication M)
//! β B S* = (S* − α I) B          (forward shift S*)
//! ```
//!
//! and renormalizes the result into forward-only form, recording how many
//! backward shifts were eliminated as the validity offset of the output.
//!
//! Coefficients live in the crate's numeric [`Scalar`] types, not a symbolic
//! ring; soundness is checked by annihilation testing rather than symbolic
//! identity.

mod schema;

pub use schema::{recurrence_from_json, recurrence_to_json, RecurrenceFile, SchemaError};

use crate::scalar::{Real, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RecurrenceError {
    #[error("leading coefficient polynomial must not be identically zero")]
    ZeroLeadingCoefficient,
    #[error("not invertible transform: beta = 0")]
    NotInvertible,
    #[error("singular leading coefficient at n = {n}")]
    SingularLeadingCoefficient { n: usize },
    #[error("insufficient prefix: need at least {needed} terms, have {len}")]
    InsufficientPrefix { needed: usize, len: usize },
    #[error("algebra error: {0}")]
    AlgebraError(&'static str),
}

/// Polynomial in the sequence index n, dense ascending coefficients with
/// exact trailing zeros trimmed. The zero polynomial has no coefficients and
/// degree `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Polynomial::new(vec![c])
    }

    /// Coefficients of small integers, a convenience for tests and fixtures.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| S::from_f64(c as f64)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: S) -> S {
        let mut acc = S::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_index(&self, n: usize) -> S {
        self.eval(S::from_f64(n as f64))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (i, &c) in short.iter().enumerate() {
            out[i] = out[i] + c;
        }
        Polynomial::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, s: S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-S::one())
    }

    /// The composed polynomial `n ↦ p(n + k)`.
    pub fn shift_arg(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        // Horner in the polynomial ring: fold with multiplication by (n + k).
        let shift = Polynomial::new(vec![S::from_f64(k as f64), S::one()]);
        let mut acc = Polynomial::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Polynomial::constant(c));
        }
        acc
    }
}

/// Order-r linear recurrence `Σ_{j=0}^{r} P_j(n) F[n+j] = 0` for `n ≥ offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence<S> {
    coeffs: Vec<Polynomial<S>>,
    offset: usize,
}

impl<S: Scalar> Recurrence<S> {
    /// `coeffs[j]` is `P_j`; the leading polynomial must not be identically
    /// zero.
    pub fn new(coeffs: Vec<Polynomial<S>>, offset: usize) -> Result<Self, RecurrenceError> {
        if coeffs.len() < 2 || coeffs.last().is_none_or(|p| p.is_zero()) {
            return Err(RecurrenceError::ZeroLeadingCoefficient);
        }
        Ok(Recurrence { coeffs, offset })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn coefficients(&self) -> &[Polynomial<S>] {
        &self.coeffs
    }

    /// Largest degree among the coefficient polynomials.
    pub fn max_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

/// Operator in normal form `Σ_j c_j(n) σ^j`, acting on sequences as
/// `(L F)[n] = Σ_j c_j(n) F[n+j]`. Positive j is the forward shift, negative
/// j the backward shift (with the zero-padding convention at the low end).
/// All index-multiplications are kept to the left of all shifts; composition
/// commutes them with `σ^a ∘ c(n) = c(n + a) ∘ σ^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOperator<S> {
    terms: BTreeMap<i64, Polynomial<S>>,
}

impl<S: Scalar> ShiftOperator<S> {
    pub fn zero() -> Self {
        ShiftOperator {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, Polynomial::constant(S::one()));
        ShiftOperator { terms }
    }

    pub fn term(shift: i64, poly: Polynomial<S>) -> Self {
        let mut op = ShiftOperator::zero();
        op.add_term(shift, poly);
        op
    }

    fn add_term(&mut self, shift: i64, poly: Polynomial<S>) {
        if poly.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(shift)
            .or_insert_with(Polynomial::zero)
            .add(&poly);
        if entry.is_zero() {
            self.terms.remove(&shift);
        } else {
            self.terms.insert(shift, entry);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Polynomial<S>> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, p) in &other.terms {
            out.add_term(j, p.clone());
        }
        out
    }

    pub fn scale(&self, s: S) -> Self {
        let mut out = ShiftOperator::zero();
        for (&j, p) in &self.terms {
            out.add_term(j, p.scale(s));
        }
        out
    }

    /// Operator composition `self ∘ other` (apply `other` first):
    /// `(c(n) σ^a) ∘ (d(n) σ^b) = c(n) d(n + a) σ^{a+b}`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = ShiftOperator::zero();
        for (&a, c) in &self.terms {
            for (&b, d) in &other.terms {
                out.add_term(a + b, c.mul(&d.shift_arg(a)));
            }
        }
        out
    }

    pub fn pow(&self, p: usize) -> Self {
        let mut acc = ShiftOperator::identity();
        for _ in 0..p {
            acc = acc.compose(self);
        }
        acc
    }

    /// View a recurrence as the operator `Σ_j P_j(n) σ^j` (forward shifts
    /// only), left-composed with `σ^offset` so the operator annihilates on
    /// the full index range whenever the recurrence holds from its offset.
    pub fn from_recurrence(rec: &Recurrence<S>) -> Self {
        let m = rec.offset() as i64;
        let mut op = ShiftOperator::zero();
        for (j, p) in rec.coefficients().iter().enumerate() {
            op.add_term(j as i64 + m, p.shift_arg(m));
        }
        op
    }

    /// Renormalize into a forward-only recurrence. A term `c(n) σ^{-s}`
    /// references `F[n - s]`, so the relation is re-based at `m = n - j_min`;
    /// the number of backward shifts eliminated becomes the validity offset.
    pub fn into_recurrence(self) -> Result<Recurrence<S>, RecurrenceError> {
        if self.terms.is_empty() {
            return Err(RecurrenceError::AlgebraError(
                "operator vanished during normalization",
            ));
        }
        let j_min = *self.terms.keys().next().unwrap();
        let j_max = *self.terms.keys().next_back().unwrap();
        if j_max == j_min {
            return Err(RecurrenceError::AlgebraError(
                "operator has a single shift: no recurrence relation",
            ));
        }
        let base = j_min.min(0);
        let s = -base; // backward shifts eliminated
        let len = (j_max - base) as usize + 1;
        let mut coeffs = vec![Polynomial::zero(); len];
        for (&j, p) in &self.terms {
            coeffs[(j - base) as usize] = p.shift_arg(s);
        }
        Recurrence::new(coeffs, s as usize)
    }

    /// Apply to a prefix on the indices where every referenced element
    /// exists: `result[i]` corresponds to `n = i + max(0, -j_min)`.
    pub fn apply(&self, f: &[S]) -> Vec<S> {
        if self.terms.is_empty() {
            return vec![S::zero(); f.len()];
        }
        let j_min = *self.terms.keys().next().unwrap();
        let j_max = *self.terms.keys().next_back().unwrap();
        let lo = 0.max(-j_min) as usize;
        if (f.len() as i64) <= j_max.max(0) {
            return Vec::new();
        }
        let hi = (f.len() as i64 - 1 - j_max.max(0)) as usize;
        let mut out = Vec::new();
        for n in lo..=hi {
            let mut acc = S::zero();
            for (&j, p) in &self.terms {
                acc = acc + p.eval_index(n) * f[(n as i64 + j) as usize];
            }
            out.push(acc);
        }
        out
    }
}

/// Coefficients `c_0(n) … c_p(n)` with `k^p C(n,k) = Σ_j c_j(n) C(n−j,k)`,
/// built by iterating the identity `k C(n,k) = n C(n,k) − n C(n−1,k)`.
pub fn binomial_reduction<S: Scalar>(p: usize) -> Vec<Polynomial<S>> {
    let n_poly = Polynomial::<S>::from_ints(&[0, 1]);
    let mut cs: Vec<Polynomial<S>> = vec![Polynomial::constant(S::one())];
    for _ in 0..p {
        let mut next = vec![Polynomial::zero(); cs.len() + 1];
        for (j, c) in cs.iter().enumerate() {
            // k · C(n−j, k) = (n−j) C(n−j, k) − (n−j) C(n−j−1, k)
            let weight = n_poly.add(&Polynomial::constant(S::from_f64(-(j as f64))));
            let prod = c.mul(&weight);
            next[j] = next[j].add(&prod);
            next[j + 1] = next[j + 1].add(&prod.neg());
        }
        cs = next;
    }
    cs
}

/// Recurrence annihilating `B(α, β) F` for every F annihilated by `rec`.
///
/// Each monomial `n^p σ^j` of the input operator maps to
/// `(M(I − α S))^p · β^{−j} (σ − α I)^j`; the result is renormalized into
/// forward-only form. Output coefficients are not reduced by common factors
/// (inexact polynomial division is ill-posed over floating scalars), so the
/// output is equivalent to, not necessarily syntactically equal to, any
/// hand-normalized form.
pub fn transform_recurrence<S: Scalar>(
    rec: &Recurrence<S>,
    params: crate::seq::TransformParams<S>,
) -> Result<Recurrence<S>, RecurrenceError> {
    if params.beta.is_zero() {
        return Err(RecurrenceError::NotInvertible);
    }
    let alpha = params.alpha;
    let beta = params.beta;
    let input = ShiftOperator::from_recurrence(rec);

    // M (I − α S): n at shift 0 and −α n at shift −1.
    let m_conj = {
        let mut op = ShiftOperator::term(0, Polynomial::from_ints(&[0, 1]));
        op.add_term(-1, Polynomial::new(vec![S::zero(), -alpha]));
        op
    };
    // (S* − α I).
    let shift_conj = {
        let mut op = ShiftOperator::term(1, Polynomial::constant(S::one()));
        op.add_term(0, Polynomial::constant(-alpha));
        op
    };

    let max_pow = input
        .terms()
        .values()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let max_shift = input.terms().keys().next_back().copied().unwrap_or(0).max(0) as usize;

    let mut m_pows = Vec::with_capacity(max_pow + 1);
    let mut acc = ShiftOperator::identity();
    for _ in 0..=max_pow {
        m_pows.push(acc.clone());
        acc = acc.compose(&m_conj);
    }
    let mut s_pows = Vec::with_capacity(max_shift + 1);
    let mut acc = ShiftOperator::identity();
    for _ in 0..=max_shift {
        s_pows.push(acc.clone());
        acc = acc.compose(&shift_conj);
    }

    let inv_beta = S::one() / beta;
    let mut out = ShiftOperator::zero();
    for (&j, poly) in input.terms() {
        debug_assert!(j >= 0, "input operator has forward shifts only");
        let mut beta_factor = S::one();
        for _ in 0..j {
            beta_factor = beta_factor * inv_beta;
        }
        for (p, &a) in poly.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let conj = m_pows[p].compose(&s_pows[j as usize]);
            out = out.add(&conj.scale(a * beta_factor));
        }
    }
    out.into_recurrence()
}

/// Extend `initial` to `count` terms by forward recursion,
/// `F[n+r] = −(Σ_{j<r} P_j(n) F[n+j]) / P_r(n)`.
pub fn generate_from_recurrence<S: Scalar>(
    rec: &Recurrence<S>,
    initial: &[S],
    count: usize,
) -> Result<Vec<S>, RecurrenceError> {
    let r = rec.order();
    let needed = r + rec.offset();
    if initial.len() < needed {
        return Err(RecurrenceError::InsufficientPrefix {
            needed,
            len: initial.len(),
        });
    }
    let mut out = initial.to_vec();
    out.truncate(count.max(initial.len()));
    while out.len() < count {
        let n = out.len() - r;
        let lead = rec.coefficients()[r].eval_index(n);
        if lead.is_zero() {
            return Err(RecurrenceError::SingularLeadingCoefficient { n });
        }
        let mut acc = S::zero();
        for (j, p) in rec.coefficients().iter().enumerate().take(r) {
            acc = acc + p.eval_index(n) * out[n + j];
        }
        out.push(-acc / lead);
    }
    out.truncate(count);
    Ok(out)
}

/// Scale-free residual of how nearly `rec` is satisfied by the prefix:
/// `max_n |Σ_j P_j(n) F[n+j]| / (Σ_j |P_j(n) F[n+j]| + tiny)`, in [0, 1].
pub fn annihilation_residual<S: Scalar>(
    rec: &Recurrence<S>,
    f: &[S],
) -> Result<S::Real, RecurrenceError> {
    let r = rec.order();
    let needed = r + 1 + rec.offset();
    if f.len() < needed {
        return Err(RecurrenceError::InsufficientPrefix {
            needed,
            len: f.len(),
        });
    }
    let tiny = S::Real::tiny();
    let mut worst = S::Real::zero();
    for n in rec.offset()..=(f.len() - 1 - r) {
        let mut sum = S::zero();
        let mut abs = S::Real::zero();
        for (j, p) in rec.coefficients().iter().enumerate() {
            let t = p.eval_index(n) * f[n + j];
            sum = sum + t;
            abs = abs + t.abs();
        }
        let ratio = sum.abs() / (abs + tiny);
        worst = worst.max(ratio);
    }
    Ok(worst)
}
