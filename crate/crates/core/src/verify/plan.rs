//! Evaluation plans: sums of rational multiples of `ln^p 2` times products
//! of atoms, each atom produced by exactly one evaluation route.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::eval::{EvalResult, Method};
use crate::exact::{factorial, Rational};
use crate::index::{rep, SignedIndex};
use crate::quadrature::{self, IntegrandSpec};
use crate::real::{BigReal, Precision};
use crate::series::{self, TruncationOptions};
use crate::symbolic::{canonicalize, closed_form, expr_eval, ConstantExpr, FamilyTag};

/// Which series evaluator a plan asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Accelerated for barred leading entries, direct otherwise.
    Auto,
    Direct,
    Accelerated,
}

/// Functions expanded by the generating-function identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenFun {
    /// `ln^k(1-x)` from harmonic-star coefficients.
    LogOneMinus,
    /// `ln^k(1+x) / (1-x)`.
    LogPlusOverMinus,
    /// `ln^k(1-x) / (1+x)`.
    LogMinusOverPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Series { index: SignedIndex, route: Route },
    /// `Li_{s}(1/2)` by geometric summation.
    Polylog(Vec<u32>),
    /// A family closed form, evaluated after full canonicalization.
    ClosedForm(FamilyTag),
    /// A literal expression over the basis.
    Expr(ConstantExpr),
    Quadrature(IntegrandSpec),
    /// The closed form or series the lemma equates with the integral.
    LemmaCounterpart(IntegrandSpec),
    /// Truncated power series with partial-sum coefficients.
    PowerSeries { f: GenFun, k: u32, x: Rational, terms: u64 },
    /// The same function from logarithms.
    Elementary { f: GenFun, k: u32, x: Rational },
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Atom {
    pub fn series(signed: &[i64]) -> Atom {
        Atom::Series { index: SignedIndex::strict(signed), route: Route::Auto }
    }

    pub fn series_star(signed: &[i64]) -> Atom {
        Atom::Series { index: SignedIndex::star(signed), route: Route::Auto }
    }

    pub fn routed(index: SignedIndex, route: Route) -> Atom {
        Atom::Series { index, route }
    }

    /// Top-level method this atom is computed by.
    pub fn method(&self) -> &'static str {
        match self {
            Atom::Series { index, route } => match route {
                Route::Direct => "direct",
                Route::Accelerated => "accelerated",
                Route::Auto if index.leading_alternating() => "accelerated",
                Route::Auto => "direct",
            },
            Atom::Polylog(_) => "geometric",
            Atom::ClosedForm(_) | Atom::Expr(_) => "symbolic",
            Atom::Quadrature(_) => "quadrature",
            Atom::LemmaCounterpart(IntegrandSpec::Lemma23 { .. }) => "symbolic",
            Atom::LemmaCounterpart(IntegrandSpec::Lemma24 { x, .. }) if x.is_one() => "symbolic",
            Atom::LemmaCounterpart(IntegrandSpec::Thm33 { .. }) => "geometric",
            Atom::LemmaCounterpart(_) => "finite",
            Atom::PowerSeries { .. } => "power-series",
            Atom::Elementary { .. } => "elementary",
        }
    }

    /// The mathematical object the atom evaluates, as text.
    pub fn object(&self) -> String {
        match self {
            Atom::Series { index, .. } => index.to_string(),
            Atom::Polylog(v) => {
                let p: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                format!("li({})", p.join(","))
            }
            Atom::ClosedForm(tag) => tag.to_string(),
            Atom::Expr(e) => e.to_string(),
            Atom::Quadrature(s) | Atom::LemmaCounterpart(s) => s.to_string(),
            Atom::PowerSeries { f, k, x, .. } | Atom::Elementary { f, k, x } => {
                format!("{f:?}(k={k},x={})", fmt_rat(x))
            }
        }
    }

    fn eval(&self, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
        match self {
            Atom::Series { index, route } => eval_series(index, *route, opts, prec),
            Atom::Polylog(v) => series::eval_mpl_half(v, prec),
            Atom::ClosedForm(tag) => expr_eval(&canonicalize(&closed_form(*tag)?, true)?, prec),
            Atom::Expr(e) => expr_eval(e, prec),
            Atom::Quadrature(s) => quadrature::integrate(s, prec),
            Atom::LemmaCounterpart(s) => quadrature::counterpart(s, prec),
            Atom::PowerSeries { f, k, x, terms } => Ok(power_series(*f, *k, x, *terms, prec)),
            Atom::Elementary { f, k, x } => Ok(elementary(*f, *k, x, prec)),
        }
    }
}

type SeriesKey = (String, Route, u32, TruncationOptions);

fn series_memo() -> &'static RwLock<HashMap<SeriesKey, EvalResult>> {
    static M: OnceLock<RwLock<HashMap<SeriesKey, EvalResult>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Series evaluation shared across cases of a run; entries are pure
/// functions of their key.
fn eval_series(ix: &SignedIndex, route: Route, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
    let key = (ix.to_string(), route, prec.bits(), opts.clone());
    if let Some(r) = series_memo().read().expect("series memo poisoned").get(&key) {
        return Ok(r.clone());
    }
    let r = match route {
        Route::Auto => series::eval(ix, opts, prec)?,
        Route::Direct => series::eval_direct(ix, opts, prec)?,
        Route::Accelerated => series::eval_accelerated(ix, opts, prec)?,
    };
    Ok(series_memo().write().expect("series memo poisoned").entry(key).or_insert(r).clone())
}

fn sign_k_fact(k: u32, prec: Precision) -> BigReal {
    let c = BigReal::from_bigint(&factorial(k), prec);
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

fn power_series(f: GenFun, k: u32, x: &Rational, terms: u64, prec: Precision) -> EvalResult {
    let work = prec.guarded(32);
    let xr = BigReal::from_rational(x, work);
    let ones: Vec<i64> = rep(1, k as usize - 1).collect();
    let inner = match f {
        GenFun::LogOneMinus => SignedIndex::strict(&ones),
        _ => SignedIndex::strict(&std::iter::once(-1).chain(ones).collect::<Vec<_>>()),
    };
    let partial = series::partial_sum_sequence(&inner, terms, work);
    let mut sum = BigReal::zero(work);
    let mut xp = BigReal::one(work);
    for n in 1..=terms {
        // xp = x^(n-1)
        let z = &partial[n as usize - 1];
        let term = match f {
            GenFun::LogOneMinus => &(&(&xp * &xr) * z) / &BigReal::from_u64(n, work),
            GenFun::LogPlusOverMinus => &xp * z,
            GenFun::LogMinusOverPlus if n % 2 == 0 => -(&xp * z),
            GenFun::LogMinusOverPlus => &xp * z,
        };
        sum = &sum + &term;
        xp = &xp * &xr;
    }
    let value = &sign_k_fact(k, work) * &sum;
    // |coefficient of x^(n-1)| <= n^k, so the tail is geometric
    let ax = x.abs().to_f64().unwrap_or(1.0);
    let nn = terms as f64 + 1.0;
    let q = ax * (1.0 + 1.0 / nn).powi(k as i32);
    let log2_tail = (factorial(k).to_f64().unwrap_or(f64::MAX)).log2() + k as f64 * nn.log2()
        + terms as f64 * ax.log2()
        - (1.0 - q).log2();
    let err = BigReal::pow2(log2_tail.ceil() as i64, prec) + prec.eps_scaled(8);
    EvalResult::new(value.with_precision(prec), err, Method::Direct, terms)
}

fn elementary(f: GenFun, k: u32, x: &Rational, prec: Precision) -> EvalResult {
    let work = prec.guarded(32);
    let one = BigReal::one(work);
    let xr = BigReal::from_rational(x, work);
    let minus = &one - &xr;
    let plus = &one + &xr;
    let v = match f {
        GenFun::LogOneMinus => minus.ln().powi(k),
        GenFun::LogPlusOverMinus => &plus.ln().powi(k) / &minus,
        GenFun::LogMinusOverPlus => &minus.ln().powi(k) / &plus,
    };
    let err = prec.eps_scaled(8) * v.abs().max(&BigReal::one(prec));
    EvalResult::new(v.with_precision(prec), err, Method::Finite, 0)
}

/// `coef * ln^ln2 2 * product of factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Rational,
    pub ln2: u32,
    pub factors: Vec<Atom>,
}

/// A sum of terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub terms: Vec<Term>,
}

impl Plan {
    pub fn new() -> Self {
        Plan::default()
    }

    pub fn atom(a: Atom) -> Self {
        Plan::new().term(Rational::one(), 0, vec![a])
    }

    pub fn term(mut self, coef: Rational, ln2: u32, factors: Vec<Atom>) -> Self {
        if !coef.is_zero() {
            self.terms.push(Term { coef, ln2, factors });
        }
        self
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.terms.iter().flat_map(|t| t.factors.iter())
    }

    /// `(method, object)` pairs reached at the top level.
    pub fn signature(&self) -> BTreeSet<(&'static str, String)> {
        self.atoms().map(|a| (a.method(), a.object())).collect()
    }

    /// Value with first-order error propagation through the products.
    pub fn eval(&self, opts: &TruncationOptions, prec: Precision) -> Result<EvalResult> {
        let ln2 = series::eval_ln2(prec);
        let mut value = BigReal::zero(prec);
        let mut err = BigReal::zero(prec);
        let mut terms_used = 0u64;
        let mut methods = BTreeSet::new();
        for t in &self.terms {
            let mut parts = vec![EvalResult::new(
                ln2.value.powi(t.ln2),
                &BigReal::from_u64(t.ln2 as u64, prec) * &(&ln2.err * &ln2.value.powi(t.ln2.saturating_sub(1))),
                Method::Geometric,
                0,
            )];
            for a in &t.factors {
                let r = a.eval(opts, prec)?;
                terms_used += r.terms_used;
                methods.insert(r.method);
                parts.push(r);
            }
            let coef = BigReal::from_rational(&t.coef, prec);
            let mut prod = coef.clone();
            for p in &parts {
                prod = &prod * &p.value;
            }
            let mut e = BigReal::zero(prec);
            for (i, p) in parts.iter().enumerate() {
                let mut others = coef.abs();
                for (j, q) in parts.iter().enumerate() {
                    if i != j {
                        others = &others * &q.value.abs();
                    }
                }
                e = &e + &(&others * &p.err);
            }
            value = &value + &prod;
            err = &err + &e;
        }
        err = err + prec.eps_scaled(4) * BigReal::from_u64(self.terms.len() as u64, prec);
        // a single route is reported as such, mixtures as symbolic algebra
        let method = if methods.len() == 1 { *methods.iter().next().expect("one method") } else { Method::Symbolic };
        Ok(EvalResult::new(value, err, method, terms_used))
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", fmt_rat(&t.coef))?;
            if t.ln2 > 0 {
                write!(f, "*ln2^{}", t.ln2)?;
            }
            for a in &t.factors {
                write!(f, "*[{} {}]", a.method(), a.object())?;
            }
        }
        Ok(())
    }
}
