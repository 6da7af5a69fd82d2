//! `mzv`: evaluate multiple zeta values, print closed forms, run the
//! identity suites, check Stirling rows and probe the lemma integrals.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on parse, domain or
//! configuration errors.

mod cache;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mzv_core::quadrature::{self, IntegrandSpec};
use mzv_core::series::{self, TruncationOptions};
use mzv_core::symbolic::{canonicalize, closed_form, expr_eval, Counterpart, FamilyTag};
use mzv_core::verify::{run_suite_with, RunConfig};
use mzv_core::{BigReal, EvalResult, MzvError, Precision, Target};

use cache::{cache_key, Cache};
use config::{FileConfig, Overrides, Settings};

#[derive(Parser, Debug)]
#[command(name = "mzv", version, about = "Multiple zeta values, Euler sums and polylogarithms at 1/2")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "MZV_PREC")]
    prec: Option<u32>,
    /// Outer cutoff N for direct summation.
    #[arg(long, global = true)]
    cutoff: Option<u64>,
    /// Result cache (JSON lines).
    #[arg(long, global = true, env = "MZV_CACHE")]
    cache: Option<PathBuf>,
    /// key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for verification (0 = automatic).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Accel,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate `zeta(...)`, `zetastar(...)` or `li(...)` (at 1/2).
    Eval {
        target: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Print a family closed form with a numeric cross-check.
    ClosedForm {
        family: String,
        params: Vec<String>,
        /// Print the expression as built, without canonicalization.
        #[arg(long)]
        raw: bool,
    },
    /// Run identity suites and write a report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Multiplies every case tolerance.
        #[arg(long)]
        tolerance_scale: Option<f64>,
    },
    /// Check s(n,k) = (n-1)! ζ_{n-1}({1}_{k-1}) for n up to `max`.
    Stirling {
        #[arg(long)]
        max: u32,
    },
    /// Integrate a lemma integrand and compare with its closed form.
    /// Negative endpoints are written as decimals (`-0.5`) or after `--`.
    #[command(allow_negative_numbers = true)]
    Quad {
        id: String,
        params: Vec<String>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<MzvError> for Failure {
    fn from(e: MzvError) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("mzv: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, MzvError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let tolerance_scale = match &cli.command {
        Command::Verify { tolerance_scale, .. } => *tolerance_scale,
        _ => None,
    };
    let over = Overrides { prec: cli.prec, cutoff: cli.cutoff, cache: cli.cache.clone(), jobs: cli.jobs, tolerance_scale };
    config::resolve(&over, &file)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", p.display()) }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure { code: 2, message: e.to_string() })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let s = settings(cli)?;
    match &cli.command {
        Command::Eval { target, method } => cmd_eval(cli, &s, target, *method),
        Command::ClosedForm { family, params, raw } => cmd_closed_form(cli, &s, family, params, *raw),
        Command::Verify { suite, .. } => cmd_verify(cli, &s, suite),
        Command::Stirling { max } => cmd_stirling(cli, *max),
        Command::Quad { id, params } => cmd_quad(cli, &s, id, params),
    }
}

fn digits(prec: Precision) -> usize {
    prec.trusted_digits()
}

/// Significant digits of `v` that its error bound supports, capped by the
/// precision.
fn supported_digits(v: &BigReal, err: &BigReal, prec: Precision) -> usize {
    let cap = digits(prec);
    let (v, e) = (v.to_f64().abs(), err.to_f64());
    if e <= 0.0 || v == 0.0 || !e.is_finite() {
        return cap;
    }
    let d = (v.log10() - e.log10()).floor();
    (d.max(1.0) as usize).min(cap)
}

fn evaluate(target: &Target, method: MethodArg, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult, MzvError> {
    match target {
        Target::LiHalf(exps) => series::eval_mpl_half(exps, prec),
        Target::Zeta(ix) => match method {
            MethodArg::Auto => series::eval(ix, opts, prec),
            MethodArg::Direct => series::eval_direct(ix, opts, prec),
            MethodArg::Accel => series::eval_accelerated(ix, opts, prec),
        },
    }
}

fn cmd_eval(cli: &Cli, s: &Settings, text: &str, method: MethodArg) -> Outcome {
    let target: Target = text.trim().parse()?;
    let (kind, method_name) = match (&target, method) {
        (Target::LiHalf(_), _) => ("li", "geometric"),
        (Target::Zeta(_), MethodArg::Auto) => ("zeta", "auto"),
        (Target::Zeta(_), MethodArg::Direct) => ("zeta", "direct"),
        (Target::Zeta(_), MethodArg::Accel) => ("zeta", "accel"),
    };
    let key = cache_key(kind, &target.to_string(), method_name, s.prec.bits(), s.opts.cutoff);
    let mut cache = s.cache.as_deref().map(Cache::open).transpose()?;
    let hit = cache.as_ref().and_then(|c| c.get(&key)).cloned();
    let (result, status) = match hit {
        Some(e) => {
            let value = BigReal::parse_decimal(&e.value, s.prec)?;
            let err = BigReal::parse_decimal(&e.err, s.prec)?;
            let m = serde_json::from_value(json!(e.method)).map_err(|x| MzvError::Syntax(format!("cache entry method: {x}")))?;
            (EvalResult::new(value, err, m, 0), "hit")
        }
        None => {
            let r = evaluate(&target, method, &s.opts, s.prec)?;
            if let Some(c) = cache.as_mut() {
                c.append(key, r.value.to_exact_decimal(), r.err.to_exact_decimal(), r.method.name().into())?;
            }
            (r, if cache.is_some() { "miss" } else { "off" })
        }
    };
    let value = result.value.to_decimal(supported_digits(&result.value, &result.err, s.prec));
    let err = result.err.to_decimal(3);
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({
                "target": target.to_string(),
                "value": value,
                "err": err,
                "method": result.method.name(),
                "terms_used": result.terms_used,
                "cache": status,
            });
            format!("{doc}\n")
        }
        Format::Csv => format!("target,value,err,method,terms_used,cache\n\"{target}\",{value},{err},{},{},{status}\n", result.method, result.terms_used),
        Format::Text => format!(
            "{target}\nvalue  {value}\nerr    {err}\nmethod {}\nterms  {}\ncache  {status}\n",
            result.method, result.terms_used
        ),
    };
    emit(cli, &text)?;
    Ok(true)
}

fn parse_params(params: &[String]) -> Result<Vec<u32>, MzvError> {
    params
        .iter()
        .map(|p| p.parse::<u32>().map_err(|_| MzvError::Syntax(format!("parameter `{p}` is not a non-negative integer"))))
        .collect()
}

fn cmd_closed_form(cli: &Cli, s: &Settings, family: &str, params: &[String], raw: bool) -> Outcome {
    let tag = FamilyTag::from_name(family, &parse_params(params)?)?;
    let built = closed_form(tag)?;
    let expr = if raw { built } else { canonicalize(&built, true)? };
    let closed = expr_eval(&expr, s.prec)?;
    let numeric = match tag.counterpart() {
        Counterpart::Series(ix) => series::eval(&ix, &s.opts, s.prec)?,
        Counterpart::Polylog(exps) => series::eval_mpl_half(&exps, s.prec)?,
        Counterpart::Integral(spec) => quadrature::integrate(&spec, s.prec)?,
    };
    let diff = (&closed.value - &numeric.value).abs();
    let bound = (&closed.err + &numeric.err).max(&BigReal::from_f64(1e-10, s.prec));
    let agree = diff <= bound;
    let d = digits(s.prec);
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => format!(
            "{}\n",
            json!({
                "family": tag.to_string(),
                "expression": expr.to_string(),
                "closed_value": closed.value.to_decimal(d),
                "numeric_value": numeric.value.to_decimal(d),
                "numeric_method": numeric.method.name(),
                "diff": diff.to_decimal(3),
                "agree": agree,
            })
        ),
        Format::Csv => format!(
            "family,expression,closed_value,numeric_value,diff,agree\n\"{tag}\",\"{expr}\",{},{},{},{agree}\n",
            closed.value.to_decimal(d),
            numeric.value.to_decimal(d),
            diff.to_decimal(3)
        ),
        Format::Text => format!(
            "{expr}\nclosed  {}\nnumeric {} ({})\ndiff    {}\n",
            closed.value.to_decimal(d),
            numeric.value.to_decimal(d),
            numeric.method,
            diff.to_decimal(3)
        ),
    };
    emit(cli, &text)?;
    Ok(agree)
}

fn cmd_verify(cli: &Cli, s: &Settings, suite: &str) -> Outcome {
    let cfg = RunConfig { opts: s.opts.clone(), prec: s.prec, jobs: s.jobs, tolerance_scale: s.tolerance_scale };
    let report = run_suite_with(suite, &cfg)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv()?,
        Format::Text => report.to_text(),
    };
    emit(cli, &text)?;
    if cli.out.is_some() {
        let sum = report.summary();
        eprintln!("{} cases: {} passed, {} failed", sum.total, sum.passed, sum.failed);
    }
    Ok(report.all_passed())
}

fn cmd_stirling(cli: &Cli, max: u32) -> Outcome {
    if max == 0 {
        return Err(MzvError::Domain("--max must be at least 1".into()).into());
    }
    let mut rows = Vec::new();
    let mut all = true;
    for n in 1..=max {
        let ok = series::check_stirling_identity(n)?;
        all &= ok;
        rows.push((n, ok));
    }
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let cases: Vec<_> = rows.iter().map(|(n, ok)| json!({"n": n, "pass": ok})).collect();
            format!("{}\n", json!({"cases": cases, "pass": all}))
        }
        Format::Csv => std::iter::once("n,pass".to_string())
            .chain(rows.iter().map(|(n, ok)| format!("{n},{ok}")))
            .map(|l| l + "\n")
            .collect(),
        Format::Text => rows
            .iter()
            .map(|(n, ok)| format!("n={n} {}\n", if *ok { "exact" } else { "MISMATCH" }))
            .collect(),
    };
    emit(cli, &text)?;
    Ok(all)
}

fn cmd_quad(cli: &Cli, s: &Settings, id: &str, params: &[String]) -> Outcome {
    let spec = IntegrandSpec::from_parts(id, params)?;
    let rec = quadrature::check_lemma(&spec, s.prec)?;
    let d = digits(s.prec);
    let lhs = rec.lhs.as_ref().expect("check_lemma fills both sides");
    let rhs = rec.rhs.as_ref().expect("check_lemma fills both sides");
    let diff = rec.diff.as_ref().map(|x| x.to_decimal(3)).unwrap_or_default();
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => format!(
            "{}\n",
            json!({
                "integrand": spec.to_string(),
                "quadrature": lhs.value.to_decimal(d),
                "quadrature_err": lhs.err.to_decimal(3),
                "closed_form": rhs.value.to_decimal(d),
                "closed_form_method": rhs.method.name(),
                "diff": diff,
                "pass": rec.pass,
            })
        ),
        Format::Csv => format!(
            "integrand,quadrature,closed_form,diff,pass\n\"{spec}\",{},{},{diff},{}\n",
            lhs.value.to_decimal(d),
            rhs.value.to_decimal(d),
            rec.pass
        ),
        Format::Text => format!(
            "{spec}\nquadrature  {} (err {})\nclosed form {} ({})\ndiff        {diff}\n",
            lhs.value.to_decimal(d),
            lhs.err.to_decimal(3),
            rhs.value.to_decimal(d),
            rhs.method
        ),
    };
    emit(cli, &text)?;
    Ok(rec.pass)
}
