//! The `qmzv` command line: `expand`, `series`, `verify` and `limit`.
//!
//! [`run`] takes the full argument vector and returns the exit code: 0 on
//! success, 1 when a check fails, 2 on a usage error. Output goes to the
//! given writers so the binary and the tests share one code path.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qmzv::coeffs::parse_rational;
use qmzv::evaluator::{numeric_eval, numeric_eval_exact, zeta_numeric, EvalConfig, Evaluator, Model, Pathway};
use qmzv::identities::{run_suite, suite_names, verify_limit_of, CheckReport, SuiteConfig};
use qmzv::products::{q_product, q_product_h, quasi_shuffle, shuffle, ProductKind};
use qmzv::words::{parse_w, parse_x, parse_y, parse_ytilde, Composition, LinComb, YWord};
use qmzv::{Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "qmzv", version, about = "Double q-shuffle algebra of modified q-multiple zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand the product of two words.
    Expand(ExpandArgs),
    /// Truncated q-series, or a numeric value with --q0.
    Series(SeriesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Approach of (1-q)^shift times a sum of values to a target as q -> 1.
    Limit(LimitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// shuffle, stuffle, qshuffle, qstuffle, qshuffle-graded or qstuffle-graded
    #[arg(long, default_value = "qshuffle")]
    product: String,
    /// First factor: `p y d y`, `z(1,-1)`, `y(2,1)`, or `x0 x1` for shuffle
    u: String,
    /// Second factor, same grammar as the first
    v: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// `z(n1,...,nk)` or a W-word such as `p^2 y d y`
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// sum, jackson or both
    #[arg(long, default_value = "sum")]
    pathway: String,
    /// modified, nonmodified or schlesinger
    #[arg(long, default_value = "modified")]
    model: String,
    /// Evaluate numerically at this point, e.g. `1/2` or `0.3`
    #[arg(long, allow_hyphen_values = true)]
    q0: Option<String>,
    #[arg(long, default_value_t = 200)]
    term_cap: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    max_depth: usize,
    /// Exponent range `lo..hi` (hi excluded) or `lo..=hi`
    #[arg(long, default_value = "-2..3", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 80)]
    term_cap: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// A value `z(...)`; repeat to sum several
    #[arg(long, required = true)]
    word: Vec<String>,
    /// Power of (1-q) multiplying the non-modified values
    #[arg(long, default_value_t = 0)]
    shift: i64,
    /// Comma-separated points in (0, 1)
    #[arg(long, default_value = "0.9,0.99,0.999")]
    grid: String,
    /// Defaults to the classical value of a single convergent word
    #[arg(long)]
    target: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Failure modes of a command, mapped to exit codes by [`run_with`].
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PathwayMismatch { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

/// Runs the binary on `argv` (including the program name) with the
/// process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Expand(a) => expand(&a),
        Command::Series(a) => series(&a),
        Command::Verify(a) => verify(&a),
        Command::Limit(a) => limit(&a),
    };
    match result {
        Ok((text, pass)) => {
            let _ = writeln!(out, "{text}");
            if pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nRun `qmzv --help` for the grammar.");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal inconsistency: {msg}");
            1
        }
    }
}

fn render(format: Format, text: String, doc: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&doc).expect("JSON values always serialize"),
    }
}

/// A composition together with the notation it was written in.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Notation {
    Ytilde,
    W,
}

fn parse_composition(text: &str) -> std::result::Result<(Composition, Notation), Failure> {
    let t = text.trim_start();
    if t.starts_with("z(") {
        Ok((parse_ytilde(text)?, Notation::Ytilde))
    } else if t.starts_with("y(") {
        Ok((Composition(parse_y(text)?.0), Notation::Ytilde))
    } else {
        Ok((parse_w(text)?, Notation::W))
    }
}

fn word_text(w: &Composition, n: Notation) -> String {
    match n {
        Notation::Ytilde => w.format_ytilde(),
        Notation::W => w.format_w_compact(),
    }
}

fn expand(a: &ExpandArgs) -> Outcome {
    let kind = ProductKind::from_str(&a.product)?;
    let (text, result) = if kind == ProductKind::ShuffleX {
        let (u, v) = (parse_x(&a.u)?, parse_x(&a.v)?);
        let l = shuffle(&u, &v);
        (l.to_string(), l.to_json())
    } else {
        let (u, nu) = parse_composition(&a.u)?;
        let (v, _) = parse_composition(&a.v)?;
        let fmt = |w: &Composition| word_text(w, nu);
        match kind {
            ProductKind::QuasiShuffle => {
                let l: LinComb<Composition, Rational> = quasi_shuffle(&u, &v);
                (l.display_with(fmt), l.to_json())
            }
            k if k.is_graded() => {
                let l = q_product_h(k, &u, &v)?;
                (l.display_with(fmt), l.to_json())
            }
            k => {
                let l = q_product(k, &u, &v)?;
                (l.display_with(fmt), l.to_json())
            }
        }
    };
    let doc = json!({"product": kind.name(), "u": a.u, "v": a.v, "result": result, "text": text});
    Ok((render(a.format, text, doc), true))
}

fn parse_q0(text: &str) -> std::result::Result<Rational, Failure> {
    if let Ok(r) = parse_rational(text) {
        return Ok(r);
    }
    let f: f64 = text
        .parse()
        .map_err(|_| Failure::Usage(format!("--q0 expects a rational or a float, got {text:?}")))?;
    Rational::from_float(f).ok_or_else(|| Failure::Usage(format!("--q0 must be finite, got {text:?}")))
}

fn series(a: &SeriesArgs) -> Outcome {
    let (w, _) = parse_composition(&a.word)?;
    let pathway = Pathway::from_str(&a.pathway)?;
    let model = Model::from_str(&a.model)?;
    let label = w.format_ytilde();
    match &a.q0 {
        Some(q0) => {
            let cfg = EvalConfig {
                order: a.order,
                pathway,
                model,
                q0: parse_q0(q0)?,
                term_cap: a.term_cap,
                tolerance: a.tol,
            };
            let is_float = parse_rational(q0).is_err();
            let (value, tail, terms) = if is_float {
                let v = numeric_eval(&w, &cfg)?;
                (json!(v.value), v.tail_bound, v.terms)
            } else {
                let v = numeric_eval_exact(&w, &cfg)?;
                (json!(v.value_text()), v.tail_bound, v.terms)
            };
            let approx = if is_float { value.as_f64().unwrap_or(f64::NAN) } else { numeric_eval(&w, &cfg)?.value };
            let text = format!("{label} at q = {q0} ({model}): {approx:.15e} (tail bound {tail:.3e}, {terms} terms)");
            let doc = json!({
                "word": label, "model": model.to_string(), "q0": q0,
                "value": value, "approx": approx, "tail_bound": tail, "terms": terms,
            });
            Ok((render(a.format, text, doc), true))
        }
        None => {
            if model == Model::Schlesinger {
                return Err(Failure::Usage("the schlesinger model is numeric only; pass --q0 with |q0| > 1".into()));
            }
            let s = Evaluator::new(a.order, pathway).eval(&w, model)?;
            let coeffs: Vec<String> = (0..=a.order).map(|d| qmzv::coeffs::format_rational(&s.coeff(d))).collect();
            let text = format!("{label} = {s}\ncoeffs [{}]", coeffs.join(","));
            let doc = json!({
                "word": label, "model": model.to_string(), "pathway": pathway.to_string(),
                "series": serde_json::to_value(&s).expect("series serialize"),
            });
            Ok((render(a.format, text, doc), true))
        }
    }
}

fn parse_range(text: &str) -> std::result::Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("--range expects lo..hi or lo..=hi, got {text:?}"));
    let (lo, hi, inclusive) = if let Some((l, h)) = text.split_once("..=") {
        (l, h, true)
    } else if let Some((l, h)) = text.split_once("..") {
        (l, h, false)
    } else {
        return Err(bad());
    };
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    let hi = if inclusive { hi } else { hi - 1 };
    if lo > hi {
        return Err(Failure::Usage(format!("--range {text:?} is empty")));
    }
    Ok((lo, hi))
}

fn summary(reports: &[CheckReport]) -> (usize, usize, usize) {
    let failing = reports.iter().filter(|r| r.gates() && !r.pass).count();
    let notes = reports.iter().filter(|r| r.advisory && !r.pass).count();
    (reports.len(), failing, notes)
}

fn verify(a: &VerifyArgs) -> Outcome {
    if !suite_names().contains(&a.suite.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown suite {:?}; expected one of {}",
            a.suite,
            suite_names().join(", ")
        )));
    }
    let (lo, hi) = parse_range(&a.range)?;
    let cfg = SuiteConfig {
        order: a.order,
        max_depth: a.max_depth,
        lo,
        hi,
        seed: a.seed,
        term_cap: a.term_cap,
        tolerance: a.tol,
    };
    let reports = run_suite(&a.suite, &cfg)?;
    let (total, failing, notes) = summary(&reports);
    let pass = failing == 0;
    let mut lines: Vec<String> = reports.iter().map(CheckReport::to_text).collect();
    lines.push(format!(
        "{}: {total} checks, {failing} failing, {notes} erratum notes",
        if pass { "PASS" } else { "FAIL" }
    ));
    let doc = json!({
        "suite": a.suite,
        "config": {"order": a.order, "max_depth": a.max_depth, "range": [lo, hi], "seed": a.seed,
                   "term_cap": a.term_cap, "tol": a.tol},
        "pass": pass,
        "summary": {"checks": total, "failing": failing, "erratum_notes": notes},
        "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
    });
    Ok((render(a.format, lines.join("\n"), doc), pass))
}

fn limit(a: &LimitArgs) -> Outcome {
    let mut comb = LinComb::zero();
    for text in &a.word {
        comb.add_term(parse_composition(text)?.0, Rational::from_integer(1.into()));
    }
    let grid: Vec<f64> = a
        .grid
        .split(',')
        .map(|g| g.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--grid expects comma-separated floats, got {:?}", a.grid)))?;
    let target = match a.target {
        Some(t) => t,
        None => {
            let words: Vec<&Composition> = comb.iter().map(|(w, _)| w).collect();
            match words.as_slice() {
                [w] if a.shift == 0 && qmzv::evaluator::is_convergent_classical(w.exps()) => {
                    zeta_numeric(&YWord(w.exps().to_vec()), 1 << 20)?.value
                }
                _ => return Err(Failure::Usage("--target is required unless a single convergent word is given".into())),
            }
        }
    };
    let label: Vec<String> = comb.iter().map(|(w, _)| w.format_ytilde()).collect();
    let label = match a.shift {
        0 => label.join(" + "),
        s => format!("(1-q)^{s} ({})", label.join(" + ")),
    };
    let report = verify_limit_of(&label, &comb, a.shift, &grid, target, a.tol);
    let mut text = report.to_text();
    for n in &report.notes {
        text.push_str(&format!("\n  {n}"));
    }
    Ok((render(a.format, text, report.to_json()), report.pass))
}
