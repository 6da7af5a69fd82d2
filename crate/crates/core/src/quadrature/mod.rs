//! One-dimensional quadrature of the logarithmic integrals, used as an
//! oracle independent of every series and closed form.

mod tanh_sinh;

use std::fmt;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::exact::{factorial, parity_sign, Rational};
use crate::real::{BigReal, Precision};
use crate::series::{eval_mpl_half, j_closed, powlog_closed};
use crate::symbolic::{closed_form, expr_eval, FamilyTag};
use crate::verify::VerdictRecord;

pub use tanh_sinh::{integrate_fn, Integrand, QuadTrace, MAX_LEVEL};

/// Agreement floor for lemma checks.
pub const LEMMA_TOLERANCE: f64 = 1e-8;

/// A named integrand with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntegrandSpec {
    /// `∫_0^x t^(n-1) ln^m(1-t) dt`, `n >= 1`, `-1 <= x < 1`.
    Lemma21 { n: u32, m: u32, x: Rational },
    /// `∫_0^x t^n ln^m t dt`, `0 < x <= 1`.
    PowLog { n: u32, m: u32, x: Rational },
    /// `∫_0^1 ln^m(1+t) ln(1-t) / (1+t) dt`.
    Lemma23 { m: u32 },
    /// `∫_0^x ln^m(1+t) / t dt`, `m >= 1`, `0 <= x <= 1`.
    Lemma24 { m: u32, x: Rational },
    /// `∫_0^1 ln^k(t) ln^(m+1)(1 - t/2) / t dt`.
    Thm33 { m: u32, k: u32 },
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rational> {
    let bad = || MzvError::Syntax(format!("bad rational parameter `{s}`"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => match s.trim().split_once('.') {
            // a terminating decimal such as -0.25, read exactly
            Some((int, frac)) if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) => {
                let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
                Rational::new(digits, num_bigint::BigInt::from(10u32).pow(frac.len() as u32))
            }
            Some(_) => return Err(bad()),
            None => Rational::from_integer(s.trim().parse().map_err(|_| bad())?),
        },
    };
    Ok(r)
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| MzvError::Syntax(format!("bad integer parameter `{s}`")))
}

impl IntegrandSpec {
    pub const IDS: [&'static str; 5] = ["lemma2_1", "powlog", "lemma2_3", "lemma2_4", "thm3_3"];

    pub fn id(&self) -> &'static str {
        match self {
            IntegrandSpec::Lemma21 { .. } => "lemma2_1",
            IntegrandSpec::PowLog { .. } => "powlog",
            IntegrandSpec::Lemma23 { .. } => "lemma2_3",
            IntegrandSpec::Lemma24 { .. } => "lemma2_4",
            IntegrandSpec::Thm33 { .. } => "thm3_3",
        }
    }

    /// Builds a spec from its id and textual parameters; `x` may be a
    /// fraction such as `-1/2` or a terminating decimal such as `-0.5`.
    pub fn from_parts(id: &str, params: &[String]) -> Result<Self> {
        let want = match id {
            "lemma2_1" | "powlog" => 3,
            "lemma2_3" => 1,
            "lemma2_4" | "thm3_3" => 2,
            _ => return Err(MzvError::Domain(format!("unknown integrand `{id}`"))),
        };
        if params.len() != want {
            return Err(MzvError::Domain(format!("integrand `{id}` takes {want} parameter(s), got {}", params.len())));
        }
        let spec = match id {
            "lemma2_1" => IntegrandSpec::Lemma21 { n: parse_u32(&params[0])?, m: parse_u32(&params[1])?, x: parse_rat(&params[2])? },
            "powlog" => IntegrandSpec::PowLog { n: parse_u32(&params[0])?, m: parse_u32(&params[1])?, x: parse_rat(&params[2])? },
            "lemma2_3" => IntegrandSpec::Lemma23 { m: parse_u32(&params[0])? },
            "lemma2_4" => IntegrandSpec::Lemma24 { m: parse_u32(&params[0])?, x: parse_rat(&params[1])? },
            _ => IntegrandSpec::Thm33 { m: parse_u32(&params[0])?, k: parse_u32(&params[1])? },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let one = Rational::one();
        let ok = match self {
            IntegrandSpec::Lemma21 { n, x, .. } => *n >= 1 && *x >= -one.clone() && *x < one,
            IntegrandSpec::PowLog { x, .. } => x.is_positive() && *x <= one,
            IntegrandSpec::Lemma23 { .. } | IntegrandSpec::Thm33 { .. } => true,
            IntegrandSpec::Lemma24 { m, x } => *m >= 1 && !x.is_negative() && *x <= one,
        };
        if ok {
            Ok(())
        } else {
            Err(MzvError::Domain(format!("{self} is outside the integrand's domain")))
        }
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrandSpec::Lemma21 { n, m, x } => write!(f, "lemma2_1({n},{m},{})", fmt_rat(x)),
            IntegrandSpec::PowLog { n, m, x } => write!(f, "powlog({n},{m},{})", fmt_rat(x)),
            IntegrandSpec::Lemma23 { m } => write!(f, "lemma2_3({m})"),
            IntegrandSpec::Lemma24 { m, x } => write!(f, "lemma2_4({m},{})", fmt_rat(x)),
            IntegrandSpec::Thm33 { m, k } => write!(f, "thm3_3({m},{k})"),
        }
    }
}

/// Integrates a spec and keeps the per-level estimates.
pub fn integrate_traced(spec: &IntegrandSpec, prec: Precision) -> Result<QuadTrace> {
    spec.validate()?;
    let work = prec.guarded(32);
    let zero = BigReal::zero(work);
    let one = BigReal::one(work);
    let r = |q: &Rational| BigReal::from_rational(q, work);
    match spec {
        IntegrandSpec::Lemma21 { n, m, x } => {
            let (n, m) = (*n, *m);
            let f = |t: &BigReal, _: &BigReal, _: &BigReal| t.powi(n - 1) * (&one - t).ln().powi(m);
            if x.is_zero() {
                return Ok(zero_trace(prec));
            }
            if x.is_negative() {
                // ∫_0^x = -∫_x^0
                let mut tr = integrate_fn(&r(x), &zero, &f, prec)?;
                tr.result.value = -tr.result.value;
                tr.levels = tr.levels.into_iter().map(|v| -v).collect();
                Ok(tr)
            } else {
                integrate_fn(&zero, &r(x), &f, prec)
            }
        }
        IntegrandSpec::PowLog { n, m, x } => {
            let (n, m) = (*n, *m);
            integrate_fn(&zero, &r(x), &|_, da, _| da.powi(n) * da.ln().powi(m), prec)
        }
        IntegrandSpec::Lemma23 { m } => {
            let m = *m;
            integrate_fn(
                &zero,
                &one,
                &|t, _, db| {
                    let s = &one + t;
                    &(s.ln().powi(m) * db.ln()) / &s
                },
                prec,
            )
        }
        IntegrandSpec::Lemma24 { m, x } => {
            if x.is_zero() {
                return Ok(zero_trace(prec));
            }
            let m = *m;
            integrate_fn(&zero, &r(x), &|_, da, _| &(&one + da).ln().powi(m) / da, prec)
        }
        IntegrandSpec::Thm33 { m, k } => {
            let (m, k) = (*m, *k);
            let half = BigReal::from_ratio(1, 2, work);
            integrate_fn(
                &zero,
                &one,
                &|_, da, _| {
                    let inner = (&one - &(da * &half)).ln();
                    &(da.ln().powi(k) * inner.powi(m + 1)) / da
                },
                prec,
            )
        }
    }
}

fn zero_trace(prec: Precision) -> QuadTrace {
    QuadTrace { result: EvalResult::exact(BigReal::zero(prec), Method::Quadrature), levels: Vec::new() }
}

/// Tanh-sinh value of the integral.
pub fn integrate(spec: &IntegrandSpec, prec: Precision) -> Result<EvalResult> {
    integrate_traced(spec, prec).map(|t| t.result)
}

/// Lemma 2.1's integral after `t = 1 - u`, i.e. `∫_{1-x}^1 (1-u)^(n-1) ln^m u du`
/// (with orientation for `x < 0`).
pub fn integrate_lemma2_1_mirrored(n: u32, m: u32, x: &Rational, prec: Precision) -> Result<EvalResult> {
    IntegrandSpec::Lemma21 { n, m, x: x.clone() }.validate()?;
    let work = prec.guarded(32);
    let one = BigReal::one(work);
    let lo = BigReal::from_rational(&(Rational::one() - x), work);
    let f = |u: &BigReal, _: &BigReal, _: &BigReal| (&one - u).powi(n - 1) * u.ln().powi(m);
    if x.is_zero() {
        return Ok(EvalResult::exact(BigReal::zero(prec), Method::Quadrature));
    }
    if x.is_negative() {
        let mut r = integrate_fn(&one, &lo, &f, prec)?.result;
        r.value = -r.value;
        Ok(r)
    } else {
        integrate_fn(&lo, &one, &f, prec).map(|t| t.result)
    }
}

/// `Li_j(y)` for `0 < y < 1` by direct summation.
fn polylog_at(j: u32, y: &BigReal, prec: Precision) -> BigReal {
    let tol = prec.eps_scaled(-8);
    let mut pow = y.clone();
    let mut sum = BigReal::zero(prec);
    let mut n = 1u64;
    loop {
        let term = &pow / &BigReal::from_u64(n, prec).powi(j);
        sum = &sum + &term;
        if term.abs() < tol {
            return sum;
        }
        pow = &pow * y;
        n += 1;
    }
}

/// The lemma's closed form or series counterpart of a spec.
pub fn counterpart(spec: &IntegrandSpec, prec: Precision) -> Result<EvalResult> {
    spec.validate()?;
    let work = prec.guarded(32);
    let finite = |v: BigReal| {
        let err = prec.eps_scaled(16) * v.abs().max(&BigReal::one(prec));
        EvalResult::new(v.with_precision(prec), err, Method::Finite, 0)
    };
    match spec {
        IntegrandSpec::Lemma21 { n, m, x } => Ok(finite(j_closed(*n, *m, &BigReal::from_rational(x, work))?)),
        IntegrandSpec::PowLog { n, m, x } => Ok(finite(powlog_closed(*n, *m, &BigReal::from_rational(x, work))?)),
        IntegrandSpec::Lemma23 { m } => expr_eval(&closed_form(FamilyTag::IntegralI(*m))?, prec),
        IntegrandSpec::Lemma24 { m, x } if x.is_one() => expr_eval(&closed_form(FamilyTag::IntegralJ(*m))?, prec),
        IntegrandSpec::Lemma24 { x, .. } if x.is_zero() => Ok(EvalResult::exact(BigReal::zero(prec), Method::Finite)),
        IntegrandSpec::Lemma24 { m, x } => {
            // general x: the same formula with Li_j(1/(1+x)) summed directly
            let m = *m;
            let one = BigReal::one(work);
            let lg = (&one + &BigReal::from_rational(x, work)).ln();
            let y = (&one + &BigReal::from_rational(x, work)).recip();
            let mf = BigReal::from_bigint(&factorial(m), work);
            let zeta = crate::series::eval_zeta(m + 1, work)?.value;
            let mut v = &lg.powi(m + 1) / &BigReal::from_u64(m as u64 + 1, work)
                + &mf * &(&zeta - &polylog_at(m + 1, &y, work));
            for j in 1..=m {
                let c = &mf / &BigReal::from_bigint(&factorial(m - j + 1), work);
                v = &v - &(&(&c * &lg.powi(m - j + 1)) * &polylog_at(j, &y, work));
            }
            Ok(finite(v))
        }
        IntegrandSpec::Thm33 { m, k } => {
            let (m, k) = (*m, *k);
            let exps: Vec<u32> = std::iter::once(k + 2).chain(std::iter::repeat(1).take(m as usize)).collect();
            let li = eval_mpl_half(&exps, prec)?;
            let c = factorial(m + 1) * factorial(k) * parity_sign((m + k + 1) as i64);
            let c = BigReal::from_bigint(&c, prec);
            Ok(EvalResult::new(&c * &li.value, &c.abs() * &li.err, Method::Geometric, li.terms_used))
        }
    }
}

/// Quadrature against the lemma's counterpart at tolerance
/// `max(combined err, 1e-8)`.
pub fn check_lemma(spec: &IntegrandSpec, prec: Precision) -> Result<VerdictRecord> {
    let start = Instant::now();
    let lhs = integrate(spec, prec)?;
    let rhs = counterpart(spec, prec)?;
    let id = format!("lemmas/{spec}");
    Ok(VerdictRecord::judge(id, "lemmas", lhs, rhs, LEMMA_TOLERANCE, start.elapsed()))
}
