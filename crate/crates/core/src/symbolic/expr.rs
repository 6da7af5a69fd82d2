use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{MzvError, Result};
use crate::eval::{EvalResult, Method};
use crate::exact::Rational;
use crate::real::{BigReal, Precision};
use crate::series::{eval_ln2, eval_mpl_half, eval_zeta};

/// A basis constant. Variant order is the canonical symbol order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    /// `ζ(k)`, `k >= 2`.
    Zeta(u32),
    /// `Li_k(1/2)`, `k >= 1`.
    LiHalf(u32),
    /// `Li_{s_1,...,s_r}(1/2)`, `r >= 2`.
    MLiHalf(Vec<u32>),
    Ln2,
}

impl BasisSymbol {
    fn validate(&self) -> Result<()> {
        match self {
            BasisSymbol::Zeta(k) if *k < 2 => Err(MzvError::Domain(format!("z{k} needs k >= 2"))),
            BasisSymbol::LiHalf(0) => Err(MzvError::Domain("li0 is not a basis constant".into())),
            BasisSymbol::MLiHalf(v) if v.len() < 2 || v.contains(&0) => {
                Err(MzvError::Domain(format!("bad multiple polylogarithm exponents {v:?}")))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, prec: Precision) -> Result<EvalResult> {
        match self {
            BasisSymbol::Zeta(k) => eval_zeta(*k, prec),
            BasisSymbol::LiHalf(k) => eval_mpl_half(&[*k], prec),
            BasisSymbol::MLiHalf(v) => eval_mpl_half(v, prec),
            BasisSymbol::Ln2 => Ok(eval_ln2(prec)),
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::Zeta(k) => write!(f, "z{k}"),
            BasisSymbol::LiHalf(k) => write!(f, "li{k}"),
            BasisSymbol::MLiHalf(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "mli({})", parts.join(","))
            }
            BasisSymbol::Ln2 => f.write_str("ln2"),
        }
    }
}

/// A product of basis symbols. Ordered by ascending power of `ln 2`, then
/// by the remaining factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ln2: u32,
    rest: Vec<(BasisSymbol, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: BasisSymbol, p: u32) -> Self {
        if p == 0 {
            return Monomial::one();
        }
        match s {
            BasisSymbol::Ln2 => Monomial { ln2: p, rest: Vec::new() },
            other => Monomial { ln2: 0, rest: vec![(other, p)] },
        }
    }

    pub fn is_one(&self) -> bool {
        self.ln2 == 0 && self.rest.is_empty()
    }

    pub fn ln2_power(&self) -> u32 {
        self.ln2
    }

    /// Factors with their powers, `ln 2` last.
    pub fn factors(&self) -> Vec<(BasisSymbol, u32)> {
        let mut out = self.rest.clone();
        if self.ln2 > 0 {
            out.push((BasisSymbol::Ln2, self.ln2));
        }
        out
    }

    pub fn weight(&self) -> u32 {
        let w = |s: &BasisSymbol| match s {
            BasisSymbol::Zeta(k) | BasisSymbol::LiHalf(k) => *k,
            BasisSymbol::MLiHalf(v) => v.iter().sum(),
            BasisSymbol::Ln2 => 1,
        };
        self.ln2 + self.rest.iter().map(|(s, p)| w(s) * p).sum::<u32>()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut rest = self.rest.clone();
        for (s, p) in &other.rest {
            match rest.binary_search_by(|(t, _)| t.cmp(s)) {
                Ok(i) => rest[i].1 += p,
                Err(i) => rest.insert(i, (s.clone(), *p)),
            }
        }
        Monomial { ln2: self.ln2 + other.ln2, rest }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|(s, p)| if *p == 1 { s.to_string() } else { format!("{s}^{p}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Exact rational linear combination of monomials; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstantExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ConstantExpr {
    pub fn zero() -> Self {
        ConstantExpr::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Self::term(r, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn term(coef: Rational, m: Monomial) -> Self {
        let mut e = ConstantExpr::zero();
        e.add_term(m, coef);
        e
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        Self::term(Rational::one(), Monomial::symbol(s))
    }

    pub fn ln2() -> Self {
        Self::symbol(BasisSymbol::Ln2)
    }

    /// `ln^k 2`.
    pub fn ln2_pow(k: u32) -> Self {
        Self::term(Rational::one(), Monomial::power(BasisSymbol::Ln2, k))
    }

    pub fn zeta(k: u32) -> Self {
        Self::symbol(BasisSymbol::Zeta(k))
    }

    /// `Li_k(1/2)`, kept as a symbol even for `k <= 3`.
    pub fn li(k: u32) -> Self {
        Self::symbol(BasisSymbol::LiHalf(k))
    }

    /// `Li_{s}(1/2)`; a single exponent gives the ordinary polylogarithm.
    pub fn mli(exps: &[u32]) -> Self {
        match exps {
            [k] => Self::li(*k),
            _ => Self::symbol(BasisSymbol::MLiHalf(exps.to_vec())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ConstantExpr::zero();
        }
        ConstantExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn scale_int(&self, n: impl Into<BigInt>) -> Self {
        self.scale(&Rational::from_integer(n.into()))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(ConstantExpr::one(), |acc, _| &acc * self)
    }

    /// Every symbol in the expression.
    pub fn symbols(&self) -> Vec<BasisSymbol> {
        let mut out: Vec<BasisSymbol> =
            self.terms.keys().flat_map(|m| m.factors().into_iter().map(|(s, _)| s)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Replaces symbols by expressions, `None` keeps the symbol.
    pub fn substitute(&self, f: &dyn Fn(&BasisSymbol) -> Option<ConstantExpr>) -> ConstantExpr {
        let mut out = ConstantExpr::zero();
        for (m, c) in &self.terms {
            let mut prod = ConstantExpr::rational(c.clone());
            for (s, p) in m.factors() {
                let factor = match f(&s) {
                    Some(rep) => rep.pow(p),
                    None => ConstantExpr::term(Rational::one(), Monomial::power(s, p)),
                };
                prod = &prod * &factor;
            }
            out = &out + &prod;
        }
        out
    }
}

impl Add for &ConstantExpr {
    type Output = ConstantExpr;
    fn add(self, rhs: &ConstantExpr) -> ConstantExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ConstantExpr {
    type Output = ConstantExpr;
    fn sub(self, rhs: &ConstantExpr) -> ConstantExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ConstantExpr {
    type Output = ConstantExpr;
    fn mul(self, rhs: &ConstantExpr) -> ConstantExpr {
        let mut out = ConstantExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ConstantExpr {
    type Output = ConstantExpr;
    fn neg(self) -> ConstantExpr {
        ConstantExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for ConstantExpr {
            type Output = ConstantExpr;
            fn $m(self, rhs: ConstantExpr) -> ConstantExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ConstantExpr> for ConstantExpr {
            type Output = ConstantExpr;
            fn $m(self, rhs: &ConstantExpr) -> ConstantExpr {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for ConstantExpr {
    type Output = ConstantExpr;
    fn neg(self) -> ConstantExpr {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ConstantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.parse::<u32>().map_err(|_| MzvError::Syntax(format!("bad integer `{s}` in expression")))
}

fn parse_factor(tok: &str) -> Result<ConstantExpr> {
    let (base, power) = match tok.rsplit_once('^') {
        Some((b, p)) if !p.contains(')') => (b, parse_u32(p)?),
        _ => (tok, 1),
    };
    let sym = if base == "ln2" {
        BasisSymbol::Ln2
    } else if let Some(k) = base.strip_prefix('z') {
        BasisSymbol::Zeta(parse_u32(k)?)
    } else if let Some(inner) = base.strip_prefix("mli(").and_then(|r| r.strip_suffix(')')) {
        let v = inner.split(',').map(|t| parse_u32(t.trim())).collect::<Result<Vec<_>>>()?;
        if v.len() == 1 {
            BasisSymbol::LiHalf(v[0])
        } else {
            BasisSymbol::MLiHalf(v)
        }
    } else if let Some(k) = base.strip_prefix("li") {
        BasisSymbol::LiHalf(parse_u32(k)?)
    } else if base.bytes().all(|b| b.is_ascii_digit() || b == b'/') && !base.is_empty() {
        let r = match base.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| MzvError::Syntax(format!("bad rational `{base}`")))?;
                let d: BigInt = d.parse().map_err(|_| MzvError::Syntax(format!("bad rational `{base}`")))?;
                if d.is_zero() {
                    return Err(MzvError::Syntax("zero denominator".into()));
                }
                Rational::new(n, d)
            }
            None => Rational::from_integer(
                base.parse().map_err(|_| MzvError::Syntax(format!("bad integer `{base}`")))?,
            ),
        };
        return Ok(ConstantExpr::rational(r).pow(power));
    } else {
        return Err(MzvError::Syntax(format!("unknown symbol `{base}`")));
    };
    sym.validate()?;
    Ok(ConstantExpr::term(Rational::one(), Monomial::power(sym, power)))
}

impl FromStr for ConstantExpr {
    type Err = MzvError;

    /// Parses the canonical rendering, e.g. `1/8*z3 + 1/2*z2*ln2 - 1/6*ln2^3`.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(MzvError::Syntax("empty expression".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    if i > 0 {
                        terms.push((neg, std::mem::take(&mut cur)));
                    }
                    neg = ch == '-';
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        terms.push((neg, cur));
        let mut out = ConstantExpr::zero();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(MzvError::Syntax(format!("dangling sign in `{text}`")));
            }
            let mut prod = ConstantExpr::one();
            for tok in body.split('*') {
                prod = &prod * &parse_factor(tok)?;
            }
            out = if neg { &out - &prod } else { &out + &prod };
        }
        Ok(out)
    }
}

/// Numeric value of an expression with first-order error propagation.
pub fn expr_eval(e: &ConstantExpr, prec: Precision) -> Result<EvalResult> {
    if e.is_zero() {
        return Ok(EvalResult::exact(BigReal::zero(prec), Method::Symbolic));
    }
    let work = prec.guarded(16);
    let mut values: BTreeMap<BasisSymbol, EvalResult> = BTreeMap::new();
    for s in e.symbols() {
        values.insert(s.clone(), s.eval(work)?);
    }
    let mut total = BigReal::zero(work);
    let mut err = BigReal::zero(work);
    for (m, c) in e.terms() {
        let coef = BigReal::from_rational(c, work);
        let mut prod = coef.clone();
        let mut rel = BigReal::zero(work);
        for (s, p) in m.factors() {
            let v = &values[&s];
            prod = &prod * &v.value.powi(p);
            if !v.err.is_zero() {
                rel = &rel + &(&BigReal::from_u64(p as u64, work) * &(&v.err / &v.value.abs()));
            }
        }
        err = &err + &(&prod.abs() * &rel);
        total = &total + &prod;
    }
    let err = err + prec.eps_scaled(4) * total.abs().max(&BigReal::one(work));
    let method = Method::Symbolic;
    Ok(EvalResult::new(total.with_precision(prec), err.with_precision(prec), method, 0))
}
