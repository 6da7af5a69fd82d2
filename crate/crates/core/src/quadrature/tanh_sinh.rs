//! Tanh-sinh (double exponential) rule with level doubling.
//!
//! On `[-1, 1]` the nodes are `x_k = tanh(π/2 sinh(kh))` with weights
//! `w_k = (π/2) cosh(kh) / cosh²(π/2 sinh(kh))`. Each node is stored as its
//! distance `e_k = 1 - x_k` to the endpoint, which keeps integrands with
//! `ln(1-t)` accurate where `x_k` would round to 1.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::real::{BigReal, Precision};

/// Highest level; level `L` uses step `2^-L`.
pub const MAX_LEVEL: u32 = 12;
/// Guard bits of the rule.
const GUARD: u32 = 32;
/// Levels computed before convergence may be declared.
const MIN_LEVEL: u32 = 3;

#[derive(Clone)]
struct Node {
    e: BigReal,
    w: BigReal,
}

/// Nodes introduced at one level: all `k >= 0` at level 0, odd `k` later.
type LevelNodes = Arc<Vec<Node>>;

fn table() -> &'static RwLock<HashMap<(u32, u32), LevelNodes>> {
    static T: OnceLock<RwLock<HashMap<(u32, u32), LevelNodes>>> = OnceLock::new();
    T.get_or_init(Default::default)
}

fn level_nodes(level: u32, prec: Precision) -> LevelNodes {
    let key = (prec.bits(), level);
    if let Some(v) = table().read().expect("node table poisoned").get(&key) {
        return v.clone();
    }
    let h = BigReal::pow2(-(level as i64), prec);
    let half_pi = BigReal::pi(prec) / BigReal::from_i64(2, prec);
    let two = BigReal::from_i64(2, prec);
    let one = BigReal::one(prec);
    // integrands may grow like |ln e|^m near the ends; keep a wide margin
    let tiny = BigReal::pow2(-(prec.bits() as i64) - 64, prec);
    let mut nodes = Vec::new();
    let (mut k, step) = if level == 0 { (0u64, 1u64) } else { (1u64, 2u64) };
    loop {
        let t = &h * &BigReal::from_u64(k, prec);
        let et = t.exp();
        let cosh = (&et + &et.recip()) / &two;
        let sinh = (&et - &et.recip()) / &two;
        let u = (&half_pi * &sinh).exp();
        let u2 = &u * &u;
        let e = &two / &(&u2 + &one);
        let denom = &u2 + &one;
        let w = &(&half_pi * &cosh) * &(&(&BigReal::from_i64(4, prec) * &u2) / &(&denom * &denom));
        if w < tiny && k > 0 {
            break;
        }
        nodes.push(Node { e, w });
        k += step;
    }
    let nodes = Arc::new(nodes);
    table().write().expect("node table poisoned").entry(key).or_insert(nodes).clone()
}

/// Integrand callback: `f(t, t - a, b - t)`.
pub type Integrand<'a> = dyn Fn(&BigReal, &BigReal, &BigReal) -> BigReal + Sync + 'a;

/// Level-by-level estimates of a tanh-sinh integration.
#[derive(Clone, Debug)]
pub struct QuadTrace {
    pub result: EvalResult,
    /// Estimate after each level, starting at level 0.
    pub levels: Vec<BigReal>,
}

/// `∫_a^b f` for `a < b`. Stops once two successive levels differ by less
/// than `2^(24-P)`; the last difference is reported as the error.
pub fn integrate_fn(a: &BigReal, b: &BigReal, f: &Integrand<'_>, prec: Precision) -> Result<QuadTrace> {
    let work = prec.guarded(GUARD);
    let a = a.clone().with_precision(work);
    let b = b.clone().with_precision(work);
    let two = BigReal::from_i64(2, work);
    let r = (&b - &a) / &two;
    let two_r = &r * &two;
    let tol = prec.eps_scaled(24).with_precision(work);
    let mut acc = BigReal::zero(work);
    let mut levels = Vec::new();
    let mut evaluations = 0u64;
    for level in 0..=MAX_LEVEL {
        for (i, node) in level_nodes(level, work).iter().enumerate() {
            let d = &r * &node.e;
            if level == 0 && i == 0 {
                // midpoint
                let t = &a + &r;
                acc = &acc + &(&node.w * &f(&t, &r, &r));
                evaluations += 1;
                continue;
            }
            let far = &two_r - &d;
            let hi = &b - &d;
            let lo = &a + &d;
            let s = &f(&hi, &far, &d) + &f(&lo, &d, &far);
            acc = &acc + &(&node.w * &s);
            evaluations += 2;
        }
        let est = &(&acc * &r) * &BigReal::pow2(-(level as i64), work);
        levels.push(est.clone());
        if level >= MIN_LEVEL {
            let diff = (&est - &levels[levels.len() - 2]).abs();
            if diff < tol || level == MAX_LEVEL {
                if diff > BigReal::pow2(-24, work) {
                    return Err(MzvError::NonConvergence(format!(
                        "level cap {MAX_LEVEL} reached with inter-level difference {}",
                        diff.to_decimal(6)
                    )));
                }
                let err = diff + prec.eps_scaled(4) * est.abs();
                let result = EvalResult::new(est.with_precision(prec), err.with_precision(prec), Method::Quadrature, evaluations);
                return Ok(QuadTrace { result, levels: levels.into_iter().map(|l| l.with_precision(prec)).collect() });
            }
        }
    }
    unreachable!("the level loop returns at MAX_LEVEL")
}
