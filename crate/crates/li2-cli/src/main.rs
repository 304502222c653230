//! Command line for the dilogarithm library: point evaluation, circle
//! sweeps (CSV), and recurrence transformation (JSON in, JSON out).
//!
//! Exit codes: 0 success, 1 I/O or malformed input, 2 domain error,
//! 3 non-convergence.

use clap::{Args, Parser, Subcommand, ValueEnum};
use li2::recurrence::{recurrence_from_json, recurrence_to_json, transform_recurrence};
use li2::{
    circle_sweep, li2_with, Complex, CutPolicy, Dd, DilogError, DilogResult, EvalOptions, Real,
    Scalar, TransformParams,
};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "li2", about = "Dilogarithm evaluation via an accelerated series", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Li2 at one complex point.
    Eval(EvalArgs),
    /// Evaluate Li2 on a circle and write one CSV row per angle.
    Sweep(SweepArgs),
    /// Transform a recurrence under the generalized binomial transform.
    Transform(TransformArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Real part of the argument.
    #[arg(long, allow_hyphen_values = true)]
    re: f64,
    /// Imaginary part of the argument.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    im: f64,
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    precision: Precision,
    /// Emit a single JSON object instead of text.
    #[arg(long)]
    json: bool,
    /// Treatment of real arguments on the branch cut [1, inf).
    #[arg(long, value_enum, default_value_t = OnCut::Error)]
    on_cut: OnCut,
    #[arg(long, default_value_t = 500)]
    max_terms: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of grid divisions; angles are 2*pi*j/points for j = 1..points-1.
    #[arg(long, default_value_t = 720)]
    points: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Output CSV path.
    #[arg(long)]
    out: String,
    #[arg(long, default_value_t = 500)]
    max_terms: usize,
}

#[derive(Args)]
struct TransformArgs {
    /// Path to the recurrence JSON file.
    #[arg(long)]
    recurrence: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_im: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    beta_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta_im: f64,
    /// Output JSON path.
    #[arg(long)]
    out: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    F64,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnCut {
    Error,
    Above,
    Below,
}

impl From<OnCut> for CutPolicy {
    fn from(c: OnCut) -> CutPolicy {
        match c {
            OnCut::Error => CutPolicy::Error,
            OnCut::Above => CutPolicy::Above,
            OnCut::Below => CutPolicy::Below,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Transform(args) => cmd_transform(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn exit_code_for<S: Scalar>(err: &DilogError<S>) -> u8 {
    match err {
        DilogError::NotConverged(_) => 3,
        _ => 2,
    }
}

/// 17 significant digits: the shortest length that round-trips binary64.
fn fmt17(v: f64) -> String {
    format!("{:.16e}", v)
}

struct EvalReport {
    value_re: String,
    value_im: String,
    value_re_f64: f64,
    value_im_f64: f64,
    terms: usize,
    condition_number: Option<f64>,
    error_bound: f64,
    error_bound_repr: String,
    identity: &'static str,
    alpha_re: String,
    alpha_im: String,
}

fn report_c64(r: &DilogResult<Complex<f64>>) -> EvalReport {
    EvalReport {
        value_re: fmt17(r.value.re),
        value_im: fmt17(r.value.im),
        value_re_f64: r.value.re,
        value_im_f64: r.value.im,
        terms: r.terms_used,
        condition_number: r.condition_number,
        error_bound: r.error_bound,
        error_bound_repr: fmt17(r.error_bound),
        identity: r.identity.as_str(),
        alpha_re: fmt17(r.alpha.re),
        alpha_im: fmt17(r.alpha.im),
    }
}

/// Extended precision prints 33 significant digits (the double-double
/// analogue of 17 for binary64); JSON carries the nearest binary64.
fn report_cdd(r: &DilogResult<Complex<Dd>>) -> EvalReport {
    EvalReport {
        value_re: r.value.re.to_decimal(33),
        value_im: r.value.im.to_decimal(33),
        value_re_f64: r.value.re.to_f64(),
        value_im_f64: r.value.im.to_f64(),
        terms: r.terms_used,
        condition_number: r.condition_number.map(|c| c.to_f64()),
        error_bound: r.error_bound.to_f64(),
        error_bound_repr: r.error_bound.to_decimal(6),
        identity: r.identity.as_str(),
        alpha_re: r.alpha.re.to_decimal(33),
        alpha_im: r.alpha.im.to_decimal(33),
    }
}

fn print_report(rep: &EvalReport, json: bool) {
    if json {
        let obj = serde_json::json!({
            "re": rep.value_re_f64,
            "im": rep.value_im_f64,
            "terms": rep.terms,
            "condition_number": rep.condition_number,
            "error_bound": rep.error_bound,
            "identity": rep.identity,
        });
        println!("{obj}");
    } else {
        println!("value       = {} + {}i", rep.value_re, rep.value_im);
        println!("terms       = {}", rep.terms);
        match rep.condition_number {
            Some(c) => println!("condition   = {}", fmt17(c)),
            None => println!("condition   = n/a"),
        }
        println!("error_bound = {}", rep.error_bound_repr);
        println!("identity    = {}", rep.identity);
        println!("alpha       = {} + {}i", rep.alpha_re, rep.alpha_im);
    }
}

fn cmd_eval(args: EvalArgs) -> CmdResult {
    let opts = EvalOptions {
        max_terms: args.max_terms,
        cut: args.on_cut.into(),
    };
    match args.precision {
        Precision::F64 => {
            let x = Complex::new(args.re, args.im);
            let r = li2_with(x, &opts).map_err(|e| (exit_code_for(&e), e.to_string()))?;
            print_report(&report_c64(&r), args.json);
        }
        Precision::Extended => {
            let x = Complex::new(Dd::from_f64(args.re), Dd::from_f64(args.im));
            let r = li2_with(x, &opts).map_err(|e| (exit_code_for(&e), e.to_string()))?;
            print_report(&report_cdd(&r), args.json);
        }
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    if args.points < 2 {
        return Err((1, "sweep needs at least 2 grid divisions".to_string()));
    }
    let opts = EvalOptions {
        max_terms: args.max_terms,
        cut: CutPolicy::Error,
    };
    let pts = circle_sweep(args.radius, args.points, &opts);

    let mut csv = String::from("theta,re_x,im_x,re_li2,im_li2,terms,cond,identity\n");
    let mut max_terms = 0usize;
    let mut max_cond = 0.0f64;
    let mut any_failed = false;
    for p in &pts {
        let (value, terms, cond, identity) = match &p.outcome {
            Ok(r) => (r.value, r.terms_used as i64, r.condition_number, r.identity),
            Err(DilogError::NotConverged(partial)) => {
                any_failed = true;
                (partial.value, -1, partial.condition_number, partial.identity)
            }
            Err(e) => return Err((2, format!("theta = {}: {e}", p.theta))),
        };
        if terms >= 0 {
            max_terms = max_terms.max(terms as usize);
        }
        if let Some(c) = cond {
            max_cond = max_cond.max(c);
        }
        let cond_field = cond.map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            p.theta,
            p.x.re,
            p.x.im,
            value.re,
            value.im,
            terms,
            cond_field,
            identity.as_str()
        )
        .expect("string write");
    }
    std::fs::write(&args.out, csv).map_err(|e| (1, format!("cannot write {}: {e}", args.out)))?;
    println!(
        "wrote {} rows to {}; max terms = {max_terms}, max cond = {max_cond:.6}",
        pts.len(),
        args.out
    );
    if any_failed {
        return Err((3, "some points did not converge (rows with terms = -1)".to_string()));
    }
    Ok(())
}

fn cmd_transform(args: TransformArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.recurrence)
        .map_err(|e| (1, format!("cannot read {}: {e}", args.recurrence)))?;
    let rec = recurrence_from_json(&text).map_err(|e| (1, e.to_string()))?;
    let params = TransformParams::new(
        Complex::new(args.alpha_re, args.alpha_im),
        Complex::new(args.beta_re, args.beta_im),
    );
    if params.beta.is_zero() {
        return Err((2, "beta = 0: transform is not invertible".to_string()));
    }
    let out = transform_recurrence(&rec, params).map_err(|e| (2, e.to_string()))?;
    let mut json = recurrence_to_json(&out);
    json.push('\n');
    std::fs::write(&args.out, json).map_err(|e| (1, format!("cannot write {}: {e}", args.out)))?;
    println!(
        "transformed order {} (offset {}) -> order {} (offset {}), written to {}",
        rec.order(),
        rec.offset(),
        out.order(),
        out.offset(),
        args.out
    );
    Ok(())
}
