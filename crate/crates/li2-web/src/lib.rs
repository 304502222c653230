//! Browser bindings for the dilogarithm library. Three operations back the
//! demo page: point evaluation, circle sweeps (term counts and condition
//! numbers against the angle), and convergence-rate exploration. Each
//! returns a JSON string so the page needs no generated glue types; the
//! plain functions compile and test natively.

use li2::{
    circle_sweep, dispatch, li2_with, optimal_alpha, Complex, CutPolicy, DilogError, EvalOptions,
    Scalar,
};
use wasm_bindgen::prelude::wasm_bindgen;

fn cut_policy(on_cut: &str) -> CutPolicy {
    match on_cut {
        "above" => CutPolicy::Above,
        "below" => CutPolicy::Below,
        _ => CutPolicy::Error,
    }
}

fn err_json(message: impl ToString) -> String {
    serde_json::json!({ "ok": false, "error": message.to_string() }).to_string()
}

/// Evaluate Li₂ at `re + im·i`; `on_cut` is one of `error|above|below`.
pub fn eval_point_json(re: f64, im: f64, on_cut: &str) -> String {
    let opts = EvalOptions {
        cut: cut_policy(on_cut),
        ..Default::default()
    };
    match li2_with(Complex::new(re, im), &opts) {
        Ok(r) => serde_json::json!({
            "ok": true,
            "re": r.value.re,
            "im": r.value.im,
            "terms": r.terms_used,
            "condition_number": r.condition_number,
            "error_bound": r.error_bound,
            "identity": r.identity.as_str(),
            "alpha_re": r.alpha.re,
            "alpha_im": r.alpha.im,
        })
        .to_string(),
        Err(e) => err_json(e),
    }
}

/// Li₂ on the circle of the given radius: one row per angle with the term
/// count, condition number, and identity used, plus the maxima.
pub fn sweep_json(radius: f64, points: u32) -> String {
    if !(0.0..=1e6).contains(&radius) || !(2..=16384).contains(&points) {
        return err_json("radius must be in [0, 1e6] and points in [2, 16384]");
    }
    let pts = circle_sweep(radius, points as usize, &EvalOptions::default());
    let mut rows = Vec::with_capacity(pts.len());
    let mut max_terms = 0usize;
    let mut max_cond = 0.0f64;
    for p in &pts {
        match &p.outcome {
            Ok(r) => {
                max_terms = max_terms.max(r.terms_used);
                if let Some(c) = r.condition_number {
                    max_cond = max_cond.max(c);
                }
                rows.push(serde_json::json!({
                    "theta": p.theta,
                    "terms": r.terms_used,
                    "cond": r.condition_number,
                    "identity": r.identity.as_str(),
                    "re": r.value.re,
                    "im": r.value.im,
                }));
            }
            Err(DilogError::NotConverged(partial)) => rows.push(serde_json::json!({
                "theta": p.theta,
                "terms": -1,
                "cond": partial.condition_number,
                "identity": partial.identity.as_str(),
                "re": partial.value.re,
                "im": partial.value.im,
            })),
            Err(e) => return err_json(format!("theta = {}: {e}", p.theta)),
        }
    }
    serde_json::json!({
        "ok": true,
        "max_terms": max_terms,
        "max_cond": max_cond,
        "rows": rows,
    })
    .to_string()
}

/// Convergence rates of the three evaluation routes at a point, together
/// with the rate-optimal transform parameter and the symmetric default.
pub fn rates_json(re: f64, im: f64) -> String {
    let x = Complex::new(re, im);
    let report = match dispatch(x) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let finite = |v: f64| if v.is_finite() { Some(v) } else { None };
    let sym = -x / Complex::new(2.0, 0.0);
    let sym_rate = x.abs() / (Complex::new(2.0, 0.0) - x).abs();
    let (opt, opt_rate) = match optimal_alpha(x) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    serde_json::json!({
        "ok": true,
        "direct": finite(report.direct),
        "reflection": finite(report.reflection),
        "reciprocal": finite(report.reciprocal),
        "chosen": report.chosen.as_str(),
        "alpha_sym_re": sym.re,
        "alpha_sym_im": sym.im,
        "rate_sym": sym_rate,
        "alpha_opt_re": opt.re,
        "alpha_opt_im": opt.im,
        "rate_opt": opt_rate,
    })
    .to_string()
}

#[wasm_bindgen]
pub fn eval_point(re: f64, im: f64, on_cut: &str) -> String {
    eval_point_json(re, im, on_cut)
}

#[wasm_bindgen]
pub fn sweep(radius: f64, points: u32) -> String {
    sweep_json(radius, points)
}

#[wasm_bindgen]
pub fn rates(re: f64, im: f64) -> String {
    rates_json(re, im)
}
