use std::collections::BTreeSet;

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::exact::Rational;
use crate::index::{EntrySign, SignedIndex};
use crate::real::{BigReal, Precision};

use super::accel::crvz_alternating_sum;
use super::fit::{extrapolate, sample_points, FitShape};
use super::nested::{exact_partial_sum, RealPass};
use super::TruncationOptions;

/// Largest `n` accepted by exact partial sums.
pub const EXACT_PARTIAL_SUM_LIMIT: u64 = 10_000;

/// Guard bits for direct summation and the tail fit.
const DIRECT_GUARD: u32 = 64;
/// Guard bits for the accelerated path.
const ACCEL_GUARD: u32 = 32;

#[derive(Clone, Debug)]
pub enum PartialSum {
    Exact(Rational),
    Numeric(BigReal),
}

/// `ζ_n(s)` or `ζ*_n(s)` according to the index kind.
pub fn partial_sum(ix: &SignedIndex, n: u64, exact: bool, prec: Precision) -> Result<PartialSum> {
    if exact {
        partial_sum_exact(ix, n).map(PartialSum::Exact)
    } else {
        Ok(PartialSum::Numeric(partial_sum_real(ix, n, prec)))
    }
}

pub fn partial_sum_exact(ix: &SignedIndex, n: u64) -> Result<Rational> {
    if n > EXACT_PARTIAL_SUM_LIMIT {
        return Err(MzvError::Resource(format!(
            "exact partial sums are capped at n = {EXACT_PARTIAL_SUM_LIMIT}, got {n}"
        )));
    }
    Ok(exact_partial_sum(ix, n))
}

pub fn partial_sum_real(ix: &SignedIndex, n: u64, prec: Precision) -> BigReal {
    let mut pass = RealPass::new(ix, prec.guarded(DIRECT_GUARD));
    for _ in 0..n {
        pass.step();
    }
    pass.value().clone().with_precision(prec)
}

/// Partial sums `ζ_0, ..., ζ_n` (or the star variants) from one pass.
pub fn partial_sum_sequence(ix: &SignedIndex, n: u64, prec: Precision) -> Vec<BigReal> {
    let mut pass = RealPass::new(ix, prec.guarded(DIRECT_GUARD));
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(pass.value().clone().with_precision(prec));
    for _ in 0..n {
        pass.step();
        out.push(pass.value().clone().with_precision(prec));
    }
    out
}

fn check_admissible(ix: &SignedIndex) -> Result<()> {
    if ix.admissible() {
        Ok(())
    } else {
        Err(MzvError::Divergent(ix.to_string()))
    }
}

fn fit_shape(ix: &SignedIndex, opts: &TruncationOptions) -> FitShape {
    let first = ix.entries()[0].magnitude;
    let log_powers =
        ix.entries().iter().filter(|e| e.magnitude == 1 && e.sign == EntrySign::Plus).count() as u32;
    FitShape { first_order: first.saturating_sub(1).max(1), orders: opts.fit_orders.max(1), log_powers }
}

/// Direct summation to the outer cutoff with asymptotic tail extrapolation.
pub fn eval_direct(ix: &SignedIndex, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
    check_admissible(ix)?;
    if ix.is_empty() {
        return Ok(EvalResult::exact(BigReal::one(prec), Method::Direct));
    }
    let work = prec.guarded(DIRECT_GUARD);
    let cutoff = opts.cutoff.max(1);
    let windows = opts.richardson_levels.max(2) as u64;

    // Shrink the model until every window has enough distinct samples.
    let mut plan = None;
    if opts.richardson_levels > 0 {
        let mut shape = fit_shape(ix, opts);
        loop {
            let ends: Vec<u64> = (0..windows).map(|r| cutoff >> r).collect();
            let samples: Option<Vec<Vec<u64>>> =
                ends.iter().map(|&e| sample_points(e, shape.unknowns())).collect();
            if let Some(s) = samples {
                plan = Some((shape, s));
                break;
            }
            if shape.orders == 1 {
                break;
            }
            shape.orders -= 1;
        }
    }

    let floor = prec.eps_scaled(8);
    let Some((shape, windows)) = plan else {
        // Raw truncation; the last doubling is the error estimate.
        let half = (cutoff / 2).max(1);
        let mut pass = RealPass::new(ix, work);
        let mut at_half = BigReal::zero(work);
        while pass.n() < cutoff {
            pass.step();
            if pass.n() == half {
                at_half = pass.value().clone();
            }
        }
        let value = pass.value().clone();
        let err = (&value - &at_half).abs() + floor;
        return Ok(EvalResult::new(value.with_precision(prec), err.with_precision(prec), Method::Direct, cutoff));
    };

    let wanted: BTreeSet<u64> = windows.iter().flatten().copied().collect();
    let last = *wanted.iter().next_back().expect("nonempty samples");
    let mut recorded = Vec::with_capacity(wanted.len());
    let mut pass = RealPass::new(ix, work);
    let mut next = wanted.iter().peekable();
    while pass.n() < last {
        pass.step();
        if next.peek().is_some_and(|&&n| n == pass.n()) {
            recorded.push((pass.n(), pass.value().clone()));
            next.next();
        }
    }
    let lookup = |n: u64| recorded.iter().find(|(m, _)| *m == n).map(|(_, v)| v.clone());
    let mut fits = Vec::with_capacity(windows.len());
    for w in &windows {
        let pts: Vec<(u64, BigReal)> = w.iter().map(|&n| (n, lookup(n).expect("recorded sample"))).collect();
        let v = extrapolate(&pts, shape, work)
            .ok_or_else(|| MzvError::Validation(format!("singular tail fit for {ix}")))?;
        fits.push(v);
    }
    let value = fits[0].clone();
    let mut err = BigReal::zero(work);
    for f in &fits[1..] {
        err = err.max(&(f - &value).abs());
    }
    let err = err + floor * value.abs().max(&BigReal::one(work));
    Ok(EvalResult::new(value.with_precision(prec), err.with_precision(prec), Method::Direct, last))
}

/// Alternating-series acceleration over the outer sum, for indices whose
/// leading entry is barred. Falls back to [`eval_direct`] when the
/// acceleration error estimate exceeds `2^(-P/2)`.
pub fn eval_accelerated(ix: &SignedIndex, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
    check_admissible(ix)?;
    if !ix.leading_alternating() {
        return Err(MzvError::Precondition(format!(
            "accelerated evaluation needs a barred leading entry, got {ix}"
        )));
    }
    let work = prec.guarded(ACCEL_GUARD);
    let n = (opts.accel_terms as usize).max(8);
    let mut pass = RealPass::new(ix, work);
    // sum_{m>=1} (-1)^m a_m = -sum_{k>=0} (-1)^k a_{k+1}
    let a: Vec<BigReal> = (1..=n)
        .map(|m| {
            let term = pass.step();
            if m % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .collect();
    let full = -crvz_alternating_sum(&a, n, work);
    let coarse = -crvz_alternating_sum(&a, n - 4, work);
    let err = (&full - &coarse).abs();
    let tolerance = BigReal::pow2(-(prec.bits() as i64) / 2, work);
    if err > tolerance || err.is_nan() || full.is_nan() {
        return eval_direct(ix, opts, prec);
    }
    let err = err + prec.eps_scaled(8);
    Ok(EvalResult::new(full.with_precision(prec), err.with_precision(prec), Method::Accelerated, n as u64))
}

/// Accelerated evaluation for barred leading entries, direct otherwise.
pub fn eval(ix: &SignedIndex, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
    if ix.leading_alternating() {
        eval_accelerated(ix, opts, prec)
    } else {
        eval_direct(ix, opts, prec)
    }
}
