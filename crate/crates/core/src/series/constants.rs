//! Basis constants: `ζ(k)`, `ln 2` and multiple polylogarithms at 1/2.
//!
//! Results are memoized per precision; entries are pure functions of their
//! key, so concurrent fills are harmless.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::real::{BigReal, Precision};

use super::accel::crvz_alternating_sum;
use super::nested::RealPass;

const GUARD: u32 = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Zeta(u32),
    LiHalf(Vec<u32>),
}

type Memo = RwLock<HashMap<(Key, u32), EvalResult>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memoized(key: Key, prec: Precision, f: impl FnOnce() -> EvalResult) -> EvalResult {
    let k = (key, prec.bits());
    if let Some(r) = memo().read().expect("constant memo poisoned").get(&k) {
        return r.clone();
    }
    let r = f();
    memo().write().expect("constant memo poisoned").entry(k).or_insert(r).clone()
}

/// `ζ(k)` from the alternating eta series, `η(k) = (1 - 2^(1-k)) ζ(k)`.
pub fn eval_zeta(k: u32, prec: Precision) -> Result<EvalResult> {
    if k < 2 {
        return Err(MzvError::Domain(format!("zeta(k) needs k >= 2, got {k}")));
    }
    Ok(memoized(Key::Zeta(k), prec, || {
        let work = prec.guarded(GUARD);
        // CRVZ gains log2(5.828) bits per term
        let n = ((work.bits() as f64 + 8.0) / 5.828f64.log2()).ceil() as usize + 10;
        let a: Vec<BigReal> = (1..=n as u64).map(|m| BigReal::from_u64(m, work).powi(k).recip()).collect();
        let eta = crvz_alternating_sum(&a, n, work);
        let coarse = crvz_alternating_sum(&a, n - 4, work);
        let factor = BigReal::one(work) - BigReal::pow2(1 - k as i64, work);
        let value = &eta / &factor;
        let err = (&eta - &coarse).abs() / &factor + prec.eps_scaled(4) * value.abs();
        EvalResult::new(value.with_precision(prec), err.with_precision(prec), Method::Accelerated, n as u64)
    }))
}

/// `ln 2 = sum_{n>=1} 1 / (n 2^n)`.
pub fn eval_ln2(prec: Precision) -> EvalResult {
    eval_mpl_half(&[1], prec).expect("nonempty exponent list")
}

/// `Li_{s_1,...,s_k}(1/2) = sum_{n_1 > ... > n_k > 0} 2^(-n_1) / (n_1^s_1 ... n_k^s_k)`.
///
/// Summation stops at the first term `t` with `2|t| < 2^(8-P)`; that term
/// is omitted and `2|t|` is reported as the truncation bound.
pub fn eval_mpl_half(exps: &[u32], prec: Precision) -> Result<EvalResult> {
    if exps.is_empty() {
        return Err(MzvError::Domain("multiple polylogarithm needs at least one exponent".into()));
    }
    if exps.contains(&0) {
        return Err(MzvError::Domain("polylogarithm exponents must be positive".into()));
    }
    Ok(memoized(Key::LiHalf(exps.to_vec()), prec, || {
        let work = prec.guarded(GUARD);
        let tol = prec.eps_scaled(8).with_precision(work);
        let mut pass = RealPass::polylog_half(exps, work);
        let mut sum = BigReal::zero(work);
        loop {
            let term = pass.step();
            let bound = term.abs() * BigReal::from_i64(2, work);
            if pass.n() > exps.len() as u64 && bound < tol {
                let rounding = BigReal::pow2(-(work.bits() as i64) + 8, work) * BigReal::from_u64(pass.n(), work);
                let err = bound + rounding;
                return EvalResult::new(sum.with_precision(prec), err.with_precision(prec), Method::Geometric, pass.n() - 1);
            }
            sum = pass.value().clone();
        }
    }))
}
