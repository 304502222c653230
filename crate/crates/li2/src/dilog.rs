//! Evaluation of Li₂ on ℂ ∖ [1, ∞).
//!
//! The Maclaurin summand `Q_k = x^{k+1}/(k+1)²` is p-recursive; pushing it
//! through the binomial transform with α = −x/2 and weighting by
//! `1/(α+1)^{k+1}` yields a summand `W` satisfying a three-term recursion
//! with closed-form initial values. The resulting series `Σ W_k` converges
//! linearly at rate `|x/(x−2)|` everywhere in the half-plane Re(x) < 1, and
//! two functional identities (reflection through 1−x and the reciprocal
//! formula through 1/x) move any point off the cut into that half-plane.
//! The evaluator picks whichever of the three routes minimizes the rate.
//!
//! Everything is generic over [`Scalar`]: real or complex, binary64 or
//! double-double.

use crate::recurrence::{Polynomial, Recurrence};
use crate::scalar::{Complex, KahanSum, Real, Scalar};
use thiserror::Error;

/// Evaluation route used for a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// Direct summation of the accelerated series at x.
    Direct,
    /// Li₂(x) = π²/6 − ln(x) ln(1−x) − Li₂(1−x).
    Reflection,
    /// Li₂(x) = −π²/6 − ln(−x)²/2 − Li₂(1/x).
    Reciprocal,
    /// Exact value at x = 0 or x = 1.
    ClosedForm,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Direct => "direct",
            Identity::Reflection => "reflection",
            Identity::Reciprocal => "reciprocal",
            Identity::ClosedForm => "closed_form",
        }
    }
}

/// How to treat real arguments on the branch cut [1, ∞).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutPolicy {
    /// Refuse: any value on the cut is a branch convention the caller owns.
    #[default]
    Error,
    /// Evaluate the limit from above, x + i0.
    Above,
    /// Evaluate the limit from below, x − i0.
    Below,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Cap on summed terms; well below this on the whole convergence region,
    /// so hitting it signals a usage error rather than a tuning failure.
    pub max_terms: usize,
    pub cut: CutPolicy,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_terms: 500,
            cut: CutPolicy::Error,
        }
    }
}

/// A computed value with its summation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilogResult<S: Scalar> {
    pub value: S,
    pub terms_used: usize,
    /// Σ|W_k| / |Σ W_k| of the series actually summed; `None` if no series
    /// was summed (closed forms) or the sum is zero.
    pub condition_number: Option<S::Real>,
    /// Absolute error bound: 2uκ|Σ W_k| plus 2u per arithmetic step of the
    /// identity applied on top of the series.
    pub error_bound: S::Real,
    pub identity: Identity,
    /// Transform parameter of the series actually summed (−z/2 for the
    /// mapped argument z).
    pub alpha: S,
}

/// Linear convergence rates of the three candidate routes at a point;
/// invalid candidates report infinity.
#[derive(Clone, Copy, Debug)]
pub struct RateReport<R> {
    pub direct: R,
    pub reflection: R,
    pub reciprocal: R,
    pub chosen: Identity,
}

#[derive(Clone, Debug, Error)]
pub enum DilogError<S: Scalar> {
    #[error("pole in parameterization: x = 2")]
    Pole,
    #[error("outside convergence region: Re(x) must be < 1")]
    OutsideConvergenceRegion,
    #[error("on branch cut [1, inf)")]
    OnBranchCut,
    #[error("not converged after {} terms", .0.terms_used)]
    NotConverged(Box<DilogResult<S>>),
}

fn pi_squared_over_6<S: Scalar>() -> S::Real {
    let pi = S::Real::pi();
    pi * pi / S::Real::from_f64(6.0)
}

fn two<S: Scalar>() -> S {
    S::from_f64(2.0)
}

/// Initial values of the accelerated summand:
/// W₀ = x/(1−x/2), W₁ = −x²/(4(1−x/2)²), W₂ = x³/(9(1−x/2)³).
pub fn w_initial<S: Scalar>(x: S) -> Result<(S, S, S), DilogError<S>> {
    if x == two::<S>() {
        return Err(DilogError::Pole);
    }
    let d = S::one() - x / two::<S>();
    let w0 = x / d;
    let w1 = -(x * x) / (S::from_f64(4.0) * d * d);
    let w2 = x * x * x / (S::from_f64(9.0) * d * d * d);
    Ok((w0, w1, w2))
}

/// One step of the summand recursion: given W_n, W_{n+1}, W_{n+2}, returns
/// W_{n+3} from
///
/// ```text
/// (x−2)³ (n+4)² W_{n+3} = −x³ (n+1)(n+2) W_n
///                        + x² (x−2) (n+2)² W_{n+1}
///                        + x (x−2)² (n+3)(n+4) W_{n+2}
/// ```
pub fn w_step<S: Scalar>(x: S, n: usize, w_n: S, w_n1: S, w_n2: S) -> Result<S, DilogError<S>> {
    if x == two::<S>() {
        return Err(DilogError::Pole);
    }
    let nf = |k: usize| S::from_f64((n + k) as f64);
    let xm2 = x - two::<S>();
    let num = -(x * x * x) * nf(1) * nf(2) * w_n
        + x * x * xm2 * nf(2) * nf(2) * w_n1
        + x * xm2 * xm2 * nf(3) * nf(4) * w_n2;
    Ok(num / (xm2 * xm2 * xm2 * nf(4) * nf(4)))
}

/// Sum `Σ_k W_k` with compensated accumulation. Stops once two consecutive
/// terms fall at or below the unit roundoff times the running sum.
/// Requires Re(x) < 1 (strict).
pub fn sum_w_series<S: Scalar>(x: S, max_terms: usize) -> Result<DilogResult<S>, DilogError<S>> {
    // Strict half-plane test; a NaN argument also lands in the error arm.
    let converges = x.re() < S::Real::one();
    if !converges {
        return Err(DilogError::OutsideConvergenceRegion);
    }
    let (w0, w1, w2) = w_initial(x)?;
    let mut window = [w0, w1, w2];
    let mut acc = KahanSum::<S>::new();
    let mut small_in_a_row = 0;
    let mut k = 0usize;
    let u = S::unit_roundoff();
    while k < max_terms {
        let term = if k < 3 {
            window[k]
        } else {
            let next = w_step(x, k - 3, window[0], window[1], window[2])?;
            window = [window[1], window[2], next];
            next
        };
        acc.add(term);
        k += 1;
        if term.abs() <= u * acc.value().abs() {
            small_in_a_row += 1;
            if small_in_a_row >= 2 {
                let value = acc.value();
                return Ok(DilogResult {
                    value,
                    terms_used: k,
                    condition_number: acc.condition_number(),
                    error_bound: acc.error_bound().unwrap_or(S::Real::zero()),
                    identity: Identity::Direct,
                    alpha: -x / two::<S>(),
                });
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(DilogError::NotConverged(Box::new(DilogResult {
        value: acc.value(),
        terms_used: k,
        condition_number: acc.condition_number(),
        error_bound: acc.error_bound().unwrap_or(S::Real::zero()),
        identity: Identity::Direct,
        alpha: -x / two::<S>(),
    })))
}

/// Linear convergence rate |z / (2 − z)| of the direct series at z.
fn rate_at<S: Scalar>(z: S) -> S::Real {
    let denom = (two::<S>() - z).abs();
    if denom == S::Real::zero() {
        return S::Real::infinity();
    }
    z.abs() / denom
}

fn on_real_segment<S: Scalar>(x: S, lo: f64, hi: f64) -> bool {
    x.im() == S::Real::zero()
        && x.re() >= S::Real::from_f64(lo)
        && x.re() <= S::Real::from_f64(hi)
}

/// Pick the evaluation route minimizing the convergence rate among the valid
/// candidates {x, 1−x, 1/x}; ties prefer direct, then reflection (fewer
/// logarithm evaluations mean a smaller constant error).
///
/// Points on the cut [1, ∞) are refused: every route's value there depends
/// on a branch convention the caller must choose through [`CutPolicy`].
pub fn dispatch<S: Scalar>(x: S) -> Result<RateReport<S::Real>, DilogError<S>> {
    if x.im() == S::Real::zero() && x.re() >= S::Real::one() {
        return Err(DilogError::OnBranchCut);
    }
    candidate_rates(x)
}

/// Rate comparison without the cut refusal; used after a [`CutPolicy`] has
/// injected the signed zero that fixes the branch.
fn candidate_rates<S: Scalar>(x: S) -> Result<RateReport<S::Real>, DilogError<S>> {
    let inf = S::Real::infinity();
    let one_r = S::Real::one();

    let direct = if x.re() < one_r { rate_at(x) } else { inf };
    let reflection = if x.re() > S::Real::zero() && !x.is_zero() && x != S::one() {
        rate_at(S::one() - x)
    } else {
        inf
    };
    let recip = S::one() / x;
    let reciprocal = if !on_real_segment(x, 0.0, 1.0) && !x.is_zero() && recip.re() < one_r {
        rate_at(recip)
    } else {
        inf
    };

    let mut chosen = Identity::Direct;
    let mut best = direct;
    if reflection < best {
        chosen = Identity::Reflection;
        best = reflection;
    }
    if reciprocal < best {
        chosen = Identity::Reciprocal;
        best = reciprocal;
    }
    let any_valid = best < inf;
    if !any_valid {
        return Err(DilogError::OnBranchCut);
    }
    Ok(RateReport {
        direct,
        reflection,
        reciprocal,
        chosen,
    })
}

fn combine<S: Scalar>(
    x: S,
    z: S,
    identity: Identity,
    series: DilogResult<S>,
) -> DilogResult<S> {
    let u = S::unit_roundoff();
    let two_u = S::Real::from_f64(2.0) * u;
    let pi26 = S::from_real(pi_squared_over_6::<S>());
    let (value, extra) = match identity {
        Identity::Direct => (series.value, S::Real::zero()),
        Identity::Reflection => {
            // z is 1−x with the branch side preserved; recomputing it here
            // would drop the signed zero.
            let logs = x.ln() * z.ln();
            (
                pi26 - logs - series.value,
                two_u * (pi26.abs() + logs.abs()),
            )
        }
        Identity::Reciprocal => {
            let l = (-x).ln();
            let half_log_sq = l * l / two::<S>();
            (
                -pi26 - half_log_sq - series.value,
                two_u * (pi26.abs() + half_log_sq.abs()),
            )
        }
        Identity::ClosedForm => (series.value, S::Real::zero()),
    };
    DilogResult {
        value,
        error_bound: series.error_bound + extra,
        identity,
        ..series
    }
}

fn mapped_argument<S: Scalar>(x: S, identity: Identity) -> S {
    let z = match identity {
        Identity::Direct | Identity::ClosedForm => return x,
        Identity::Reflection => S::one() - x,
        Identity::Reciprocal => S::one() / x,
    };
    if x.im() != S::Real::zero() {
        return z;
    }
    // Both maps reverse the side of the real axis, but IEEE zero arithmetic
    // does not (0 − 0 = +0): re-inject the flipped signed zero so one-sided
    // limits survive the mapping.
    let flipped = !x.im().is_sign_negative();
    z.with_signed_zero_im(flipped).unwrap_or(z)
}

fn closed_form<S: Scalar>(value: S) -> DilogResult<S> {
    let u = S::unit_roundoff();
    DilogResult {
        value,
        terms_used: 0,
        condition_number: None,
        error_bound: S::Real::from_f64(2.0) * u * value.abs(),
        identity: Identity::ClosedForm,
        alpha: S::zero(),
    }
}

/// Li₂ with explicit options; see [`li2`].
pub fn li2_with<S: Scalar>(x: S, opts: &EvalOptions) -> Result<DilogResult<S>, DilogError<S>> {
    if x.is_zero() {
        return Ok(closed_form(S::zero()));
    }
    if x == S::one() {
        return Ok(closed_form(S::from_real(pi_squared_over_6::<S>())));
    }
    let x = adjust_for_cut(x, opts.cut)?;
    let report = candidate_rates(x)?;
    li2_via(x, report.chosen, opts)
}

/// Li₂ evaluated through one specific route. The route's series argument
/// must satisfy Re < 1, otherwise `OutsideConvergenceRegion` comes back.
pub fn li2_via<S: Scalar>(
    x: S,
    identity: Identity,
    opts: &EvalOptions,
) -> Result<DilogResult<S>, DilogError<S>> {
    let x = adjust_for_cut(x, opts.cut)?;
    let z = mapped_argument(x, identity);
    match sum_w_series(z, opts.max_terms) {
        Ok(series) => Ok(combine(x, z, identity, series)),
        Err(DilogError::NotConverged(partial)) => Err(DilogError::NotConverged(Box::new(
            combine(x, z, identity, *partial),
        ))),
        Err(e) => Err(e),
    }
}

fn adjust_for_cut<S: Scalar>(x: S, policy: CutPolicy) -> Result<S, DilogError<S>> {
    let on_open_cut = x.im() == S::Real::zero() && x.re() > S::Real::one();
    if !on_open_cut {
        return Ok(x);
    }
    match policy {
        CutPolicy::Error => Err(DilogError::OnBranchCut),
        CutPolicy::Above => x.with_signed_zero_im(false).ok_or(DilogError::OnBranchCut),
        CutPolicy::Below => x.with_signed_zero_im(true).ok_or(DilogError::OnBranchCut),
    }
}

/// The dilogarithm. Short-circuits x ∈ {0, 1}, otherwise dispatches to the
/// fastest-converging route and sums the accelerated series.
///
/// Real argument types require x ≤ 1; points on the open cut (1, ∞) are an
/// error under the default [`CutPolicy`] and a one-sided limit under the
/// others (complex types only: the limit has a nonzero imaginary part).
pub fn li2<S: Scalar>(x: S) -> Result<DilogResult<S>, DilogError<S>> {
    li2_with(x, &EvalOptions::default())
}

/// Rate-minimizing transform parameter for the series at x, with the rate it
/// achieves.
///
/// The optimum equalizes the two decay moduli (|α| = |α+x|) and minimizes
/// |α|/|α+1| on that bisector line; the minimizer is the tangency point of
/// an Apollonius circle of the pair {0, −1} with the bisector, giving rate
/// |x| / (|x−1| + 1). Both tangency branches are evaluated and the smaller
/// rate wins. For real x the bisector degenerates to the symmetric choice
/// α = −x/2 with rate |x/(x−2)|.
pub fn optimal_alpha<S: Scalar>(x: S) -> Result<(S, S::Real), DilogError<S>> {
    let zero = S::Real::zero();
    if x.im() == zero {
        if x.re() >= S::Real::one() {
            return Err(DilogError::OnBranchCut);
        }
        let alpha = -x / two::<S>();
        return Ok((alpha, rate_at(x)));
    }
    let modulus = x.abs();
    let a2 = modulus * modulus;
    let r_dist = (x - S::one()).abs();
    let one = S::Real::one();
    let half = S::Real::from_f64(0.5);

    let mut best: Option<(S, S::Real)> = None;
    for denom in [r_dist + one, r_dist - one] {
        if denom.abs() <= S::Real::tiny() {
            continue;
        }
        let c = modulus / denom.abs();
        let convergent = c < one;
        if !convergent {
            continue;
        }
        let m = c * c / (one - c * c);
        // Project the Apollonius center (m, 0) onto the bisector of {0, −x}.
        let d_over_mod = (m * x.re() + a2 * half) / a2;
        let alpha = S::from_real(m) - x * S::from_real(d_over_mod);
        let rate = alpha.abs().max((alpha + x).abs()) / (alpha + S::one()).abs();
        if best.is_none_or(|(_, r)| rate < r) {
            best = Some((alpha, rate));
        }
    }
    // Degenerate geometry: fall back to the symmetric parameter.
    Ok(best.unwrap_or_else(|| {
        let alpha = -x / two::<S>();
        (alpha, rate_at(x))
    }))
}

/// Minimum of the squared optimal convergence rate for x = 1 + R e^{iω}:
/// `min((2R cos ω + R² + 1)/(R−1)², (2R cos ω + R² + 1)/(R+1)²)`.
///
/// The two branches are the squared rates of the two tangency candidates in
/// [`optimal_alpha`]; the achieved optimal rate is the square root of this
/// value. At R = 1 the first branch is singular and the second is returned.
pub fn min_rate<R: Real>(radius: R, omega: R) -> R {
    let one = R::one();
    let two = R::from_f64(2.0);
    let a = two * radius * omega.cos() + radius * radius + one;
    let plus = (radius + one) * (radius + one);
    let second = a / plus;
    if radius == one {
        return second;
    }
    let minus = (radius - one) * (radius - one);
    (a / minus).min(second)
}

/// Recurrence of the Maclaurin summand `Q_k = x^{k+1}/(k+1)²`:
/// `(n+2)² Q[n+1] − x (n+1)² Q[n] = 0`.
pub fn q_recurrence<S: Scalar>(x: S) -> Recurrence<S> {
    let p0 = Polynomial::from_ints(&[1, 2, 1]).scale(-x); // −x(n+1)²
    let p1 = Polynomial::from_ints(&[4, 4, 1]); // (n+2)²
    Recurrence::new(vec![p0, p1], 0).expect("leading coefficient nonzero")
}

/// Recurrence of the accelerated summand W (see [`w_step`]); x ≠ 2.
pub fn w_recurrence<S: Scalar>(x: S) -> Result<Recurrence<S>, DilogError<S>> {
    if x == two::<S>() {
        return Err(DilogError::Pole);
    }
    let xm2 = x - two::<S>();
    let p0 = Polynomial::from_ints(&[2, 3, 1]).scale(x * x * x); // x³(n+1)(n+2)
    let p1 = Polynomial::from_ints(&[4, 4, 1]).scale(-(x * x) * xm2); // −x²(x−2)(n+2)²
    let p2 = Polynomial::from_ints(&[12, 7, 1]).scale(-x * xm2 * xm2); // −x(x−2)²(n+3)(n+4)
    let p3 = Polynomial::from_ints(&[16, 8, 1]).scale(xm2 * xm2 * xm2); // (x−2)³(n+4)²
    Ok(Recurrence::new(vec![p0, p1, p2, p3], 0).expect("leading coefficient nonzero"))
}

/// Closed-form order-3 recurrence satisfied by `B(α, 1) Q` — the reference
/// the mechanical [`crate::recurrence::transform_recurrence`] is checked
/// against:
///
/// ```text
/// P₀(n) = −α²(α+x)(n+1)(n+2)
/// P₁(n) = α(n+2)((3α+2x)n + 8α+5x)
/// P₂(n) = −(3α+x)n² − (19α+6x)n − 30α − 9x
/// P₃(n) = (n+4)²
/// ```
pub fn transformed_q_recurrence<S: Scalar>(x: S, alpha: S) -> Recurrence<S> {
    let three = S::from_f64(3.0);
    let p0 = Polynomial::from_ints(&[2, 3, 1]).scale(-(alpha * alpha) * (alpha + x));
    let p1 = {
        let inner = Polynomial::new(vec![
            S::from_f64(8.0) * alpha + S::from_f64(5.0) * x,
            three * alpha + two::<S>() * x,
        ]);
        Polynomial::from_ints(&[2, 1]).mul(&inner).scale(alpha)
    };
    let p2 = Polynomial::new(vec![
        -(S::from_f64(30.0) * alpha + S::from_f64(9.0) * x),
        -(S::from_f64(19.0) * alpha + S::from_f64(6.0) * x),
        -(three * alpha + x),
    ]);
    let p3 = Polynomial::from_ints(&[16, 8, 1]);
    Recurrence::new(vec![p0, p1, p2, p3], 0).expect("leading coefficient nonzero")
}

/// One evaluated point of a circle sweep.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub theta: f64,
    pub x: Complex<f64>,
    pub outcome: Result<DilogResult<Complex<f64>>, DilogError<Complex<f64>>>,
}

/// Evaluate Li₂ at `radius·e^{iθ}` for θ_j = 2πj/points, j = 1 … points−1.
/// The endpoints θ ∈ {0, 2π} are excluded: at radius ≥ 1 they land on the
/// branch cut.
pub fn circle_sweep(radius: f64, points: usize, opts: &EvalOptions) -> Vec<SweepPoint> {
    (1..points)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / points as f64;
            let x = Complex::new(radius * theta.cos(), radius * theta.sin());
            SweepPoint {
                theta,
                x,
                outcome: li2_with(x, opts),
            }
        })
        .collect()
}
