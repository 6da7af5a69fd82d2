//! Suite execution.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::exact::{factorial, Rational};
use crate::index::{rep, SignedIndex};
use crate::real::{BigReal, Precision};
use crate::series::{partial_sum_exact, stirling1_row, TruncationOptions};

use super::registry::{suite_cases, Check, IdentityCase};
use super::report::{ConfigSnapshot, Report, VerdictRecord};

/// Knobs of a suite run beyond the numeric options.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub opts: TruncationOptions,
    pub prec: Precision,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
    /// Multiplies every case tolerance.
    pub tolerance_scale: f64,
}

impl RunConfig {
    pub fn new(opts: TruncationOptions, prec: Precision) -> Self {
        RunConfig { opts, prec, jobs: 0, tolerance_scale: 1.0 }
    }
}

/// Runs one suite, or every suite for `"all"`, with default parallelism.
pub fn run_suite(selector: &str, opts: &TruncationOptions, prec: Precision) -> Result<Report> {
    run_suite_with(selector, &RunConfig::new(opts.clone(), prec))
}

/// Like [`run_suite`] with explicit jobs and tolerance scale. Records come
/// back in registry order whatever the execution order.
pub fn run_suite_with(selector: &str, cfg: &RunConfig) -> Result<Report> {
    let cases = suite_cases(selector).ok_or_else(|| MzvError::UnknownSuite(selector.to_string()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| MzvError::Resource(e.to_string()))?;
    let records: Vec<VerdictRecord> = pool.install(|| {
        use rayon::prelude::*;
        cases.par_iter().map(|c| run_case(c, cfg)).collect()
    });
    let config = ConfigSnapshot {
        precision: cfg.prec.bits(),
        options: cfg.opts.clone(),
        tolerance_scale: cfg.tolerance_scale,
        selector: selector.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok(Report { config, records })
}

/// Evaluates one case; errors become failed records.
pub fn run_case(case: &IdentityCase, cfg: &RunConfig) -> VerdictRecord {
    let start = Instant::now();
    let tol = case.tolerance * cfg.tolerance_scale;
    let outcome = match &case.check {
        Check::Numeric { lhs, rhs } => {
            lhs.eval(&cfg.opts, cfg.prec).and_then(|l| rhs.eval(&cfg.opts, cfg.prec).map(|r| (l, r)))
        }
        Check::StirlingRow(n) => stirling_sides(*n, cfg.prec),
    };
    match outcome {
        Ok((l, r)) => VerdictRecord::judge(case.id.clone(), case.suite, l, r, tol, start.elapsed()),
        Err(e) => VerdictRecord::failed(case.id.clone(), case.suite, &e, tol, start.elapsed()),
    }
}

/// Compares row `n` of the Stirling numbers with `(n-1)! ζ_{n-1}({1}_{k-1})`
/// exactly. The reported values are the row sums, and the difference is the
/// largest coefficient mismatch, so a pass means every entry is equal.
fn stirling_sides(n: u32, prec: Precision) -> Result<(EvalResult, EvalResult)> {
    let row = stirling1_row(n);
    let fact = Rational::from_integer(factorial(n - 1));
    let mut lhs_sum = BigInt::from(0);
    let mut worst = Rational::from_integer(BigInt::from(0));
    for k in 1..=n {
        let ones: Vec<i64> = rep(1, k as usize - 1).collect();
        let h = &fact * partial_sum_exact(&SignedIndex::strict(&ones), (n - 1) as u64)?;
        let s = Rational::from_integer(BigInt::from(row[k as usize].clone()));
        let d = (&s - &h).abs();
        if d > worst {
            worst = d;
        }
        lhs_sum += BigInt::from(row[k as usize].clone());
    }
    let lhs = EvalResult::exact(BigReal::from_bigint(&lhs_sum, prec), Method::Exact);
    // shifted by the worst mismatch so any discrepancy shows in the difference
    let rhs_val = BigReal::from_rational(&(Rational::from_integer(lhs_sum) + &worst), prec);
    Ok((lhs, EvalResult::exact(rhs_val, Method::Exact)))
}
