//! Closed forms of the reducible families, unrolled exactly.
//!
//! Every family value is memoized. Recurrences call back into
//! [`closed_form`], so the memo lock is never held while computing.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{MzvError, Result};
use crate::exact::{binomial, factorial, parity_sign, rat, Rational};
use crate::index::{rep, SignedIndex};
use crate::quadrature::IntegrandSpec;

use super::expr::ConstantExpr;

/// A family with an exact closed form. Parameters count literal `1`
/// entries (`m`, `k`) unless noted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `ζ*(k,1)`, `k >= 2`.
    EulerStar(u32),
    /// `ζ*(1̄,{1}_m,1̄)`.
    StarBar1Ones1Bar(u32),
    /// `ζ*(2,{1}_m,1̄)`.
    Star2Ones1Bar(u32),
    /// `ζ*(1̄,{1}_m)`.
    StarBar1Ones(u32),
    /// `ζ*(2,{1}_m)`.
    Star2Ones(u32),
    /// `Li_{2,{1}_m}(1/2)`.
    LiTwoOnes(u32),
    /// `ζ(1̄,{1}_m,1̄)`.
    MzvBar1OnesBar1(u32),
    /// `I(m) = ∫_0^1 ln^m(1+t) ln(1-t) / (1+t) dt`.
    IntegralI(u32),
    /// `J(m) = ∫_0^1 ln^m(1+t) / t dt`, `m >= 1`.
    IntegralJ(u32),
    /// `ζ(1̄,{1}_m,1̄,1̄,{1}_k)`.
    ThreeBar(u32, u32),
    /// `ζ(1̄,{1}_m,2,{1}_k)`.
    Bar1OnesTwo(u32, u32),
}

/// The independent object a closed form describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterpart {
    Series(SignedIndex),
    Polylog(Vec<u32>),
    Integral(IntegrandSpec),
}

const NAMES: [(&str, usize); 11] = [
    ("euler-star", 1),
    ("star-bar1", 1),
    ("star-2-bar1", 1),
    ("star-bar1-ones", 1),
    ("star-2-ones", 1),
    ("li2-ones", 1),
    ("bar1-ones-bar1", 1),
    ("integral-i", 1),
    ("integral-j", 1),
    ("three-bar", 2),
    ("bar1-ones-2", 2),
];

impl FamilyTag {
    /// Command-line names with their parameter counts.
    pub fn names() -> impl Iterator<Item = (&'static str, usize)> {
        NAMES.iter().copied()
    }

    pub fn name(self) -> &'static str {
        let i = match self {
            FamilyTag::EulerStar(_) => 0,
            FamilyTag::StarBar1Ones1Bar(_) => 1,
            FamilyTag::Star2Ones1Bar(_) => 2,
            FamilyTag::StarBar1Ones(_) => 3,
            FamilyTag::Star2Ones(_) => 4,
            FamilyTag::LiTwoOnes(_) => 5,
            FamilyTag::MzvBar1OnesBar1(_) => 6,
            FamilyTag::IntegralI(_) => 7,
            FamilyTag::IntegralJ(_) => 8,
            FamilyTag::ThreeBar(..) => 9,
            FamilyTag::Bar1OnesTwo(..) => 10,
        };
        NAMES[i].0
    }

    pub fn params(self) -> Vec<u32> {
        match self {
            FamilyTag::ThreeBar(m, k) | FamilyTag::Bar1OnesTwo(m, k) => vec![m, k],
            FamilyTag::EulerStar(a)
            | FamilyTag::StarBar1Ones1Bar(a)
            | FamilyTag::Star2Ones1Bar(a)
            | FamilyTag::StarBar1Ones(a)
            | FamilyTag::Star2Ones(a)
            | FamilyTag::LiTwoOnes(a)
            | FamilyTag::MzvBar1OnesBar1(a)
            | FamilyTag::IntegralI(a)
            | FamilyTag::IntegralJ(a) => vec![a],
        }
    }

    /// Builds a tag from its command-line name and parameters.
    pub fn from_name(name: &str, params: &[u32]) -> Result<Self> {
        let (_, arity) = NAMES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| MzvError::Domain(format!("unknown family `{name}`")))?;
        if params.len() != *arity {
            return Err(MzvError::Domain(format!("family `{name}` takes {arity} parameter(s), got {}", params.len())));
        }
        let a = params[0];
        let tag = match name {
            "euler-star" => FamilyTag::EulerStar(a),
            "star-bar1" => FamilyTag::StarBar1Ones1Bar(a),
            "star-2-bar1" => FamilyTag::Star2Ones1Bar(a),
            "star-bar1-ones" => FamilyTag::StarBar1Ones(a),
            "star-2-ones" => FamilyTag::Star2Ones(a),
            "li2-ones" => FamilyTag::LiTwoOnes(a),
            "bar1-ones-bar1" => FamilyTag::MzvBar1OnesBar1(a),
            "integral-i" => FamilyTag::IntegralI(a),
            "integral-j" => FamilyTag::IntegralJ(a),
            "three-bar" => FamilyTag::ThreeBar(a, params[1]),
            _ => FamilyTag::Bar1OnesTwo(a, params[1]),
        };
        tag.validate()?;
        Ok(tag)
    }

    pub fn validate(self) -> Result<()> {
        match self {
            FamilyTag::EulerStar(k) if k < 2 => {
                Err(MzvError::Domain(format!("euler-star needs k >= 2, got {k}")))
            }
            FamilyTag::IntegralJ(0) => Err(MzvError::Domain("integral-j needs m >= 1".into())),
            _ => Ok(()),
        }
    }

    /// The series, polylogarithm or integral the closed form equals.
    pub fn counterpart(self) -> Counterpart {
        let ones = |m: u32| rep(1, m as usize);
        let star = |v: Vec<i64>| Counterpart::Series(SignedIndex::star(&v));
        let strict = |v: Vec<i64>| Counterpart::Series(SignedIndex::strict(&v));
        match self {
            FamilyTag::EulerStar(k) => star(vec![k as i64, 1]),
            FamilyTag::StarBar1Ones1Bar(m) => star([-1].into_iter().chain(ones(m)).chain([-1]).collect()),
            FamilyTag::Star2Ones1Bar(m) => star([2].into_iter().chain(ones(m)).chain([-1]).collect()),
            FamilyTag::StarBar1Ones(m) => star([-1].into_iter().chain(ones(m)).collect()),
            FamilyTag::Star2Ones(m) => star([2].into_iter().chain(ones(m)).collect()),
            FamilyTag::LiTwoOnes(m) => {
                Counterpart::Polylog([2].into_iter().chain(std::iter::repeat(1).take(m as usize)).collect())
            }
            FamilyTag::MzvBar1OnesBar1(m) => strict([-1].into_iter().chain(ones(m)).chain([-1]).collect()),
            FamilyTag::IntegralI(m) => Counterpart::Integral(IntegrandSpec::Lemma23 { m }),
            FamilyTag::IntegralJ(m) => Counterpart::Integral(IntegrandSpec::Lemma24 { m, x: Rational::one() }),
            FamilyTag::ThreeBar(m, k) => {
                strict([-1].into_iter().chain(ones(m)).chain([-1, -1]).chain(ones(k)).collect())
            }
            FamilyTag::Bar1OnesTwo(m, k) => strict([-1].into_iter().chain(ones(m)).chain([2]).chain(ones(k)).collect()),
        }
    }

    /// The series counterpart, if the family has one.
    pub fn series_index(self) -> Option<SignedIndex> {
        match self.counterpart() {
            Counterpart::Series(ix) => Some(ix),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(|v| v.to_string()).collect();
        write!(f, "{}({})", self.name(), p.join(","))
    }
}

type Memo = RwLock<HashMap<FamilyTag, ConstantExpr>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Exact closed form of a family member over the basis. Low-order
/// `Li_k(1/2)` are left as symbols; see [`super::canonicalize`].
pub fn closed_form(tag: FamilyTag) -> Result<ConstantExpr> {
    tag.validate()?;
    if let Some(e) = memo().read().expect("family memo poisoned").get(&tag) {
        return Ok(e.clone());
    }
    let e = build(tag)?;
    Ok(memo().write().expect("family memo poisoned").entry(tag).or_insert(e).clone())
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn sign(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(parity_sign(n)))
}

fn ln(p: u32) -> ConstantExpr {
    ConstantExpr::ln2_pow(p)
}

fn z(k: u32) -> ConstantExpr {
    ConstantExpr::zeta(k)
}

fn li(k: u32) -> ConstantExpr {
    ConstantExpr::li(k)
}

/// `Σ_{k=1}^m C(m,k) (-1)^{k+1} { Σ_{l=1}^k l! C(k,l) ln^{m-l}2 Li_{l+2} - k! ln^{m-k}2 ζ(k+2) }`.
fn li_zeta_block(m: u32) -> ConstantExpr {
    let mut out = ConstantExpr::zero();
    for k in 1..=m {
        let mut inner = ConstantExpr::zero();
        for l in 1..=k {
            inner = inner + (ln(m - l) * li(l + 2)).scale(&(fact(l) * binom(k, l)));
        }
        inner = inner - (ln(m - k) * z(k + 2)).scale(&fact(k));
        out = out + inner.scale(&(binom(m, k) * sign(k as i64 + 1)));
    }
    out
}

fn build(tag: FamilyTag) -> Result<ConstantExpr> {
    Ok(match tag {
        FamilyTag::EulerStar(k) => {
            let mut e = z(k + 1).scale_int(k + 2);
            for i in 1..=k.saturating_sub(2) {
                e = e - z(k - i) * z(i + 1);
            }
            e.scale(&rat(1, 2))
        }
        FamilyTag::StarBar1Ones(m) => -li(m + 1),
        FamilyTag::Star2Ones(m) => z(m + 2).scale_int(m + 1),
        FamilyTag::IntegralI(0) => (ln(2) - z(2)).scale(&rat(1, 2)),
        FamilyTag::IntegralI(m) => {
            ln(m + 2).scale(&Rational::new(BigInt::one(), BigInt::from(m + 1))) - z(2) * ln(m) - li_zeta_block(m)
        }
        FamilyTag::IntegralJ(m) => {
            let mut e = ln(m + 1).scale(&rat(1, m as i64 + 1)) + (z(m + 1) - li(m + 1)).scale(&fact(m));
            for j in 1..=m {
                e = e - (ln(m - j + 1) * li(j)).scale(&(fact(m) / fact(m - j + 1)));
            }
            e
        }
        FamilyTag::StarBar1Ones1Bar(0) => (z(2) + ln(2)).scale(&rat(1, 2)),
        FamilyTag::StarBar1Ones1Bar(m) => {
            let s = sign(m as i64);
            let mut e = (z(2) * ln(m)).scale(&(&s / fact(m)));
            let mut sum = ConstantExpr::zero();
            for i in 1..=m {
                let prev = closed_form(FamilyTag::StarBar1Ones1Bar(i - 1))? - closed_form(FamilyTag::StarBar1Ones(i))?;
                sum = sum + (ln(m + 1 - i) * prev).scale(&(sign(i as i64 + 1) * fact(i) * binom(m + 1, i)));
            }
            e = e - sum.scale(&(&s / fact(m + 1)));
            e + li_zeta_block(m).scale(&(&s / fact(m)))
        }
        FamilyTag::Star2Ones1Bar(0) => z(3).scale(&rat(1, 4)) - (z(2) * ln(1)).scale(&rat(3, 2)),
        FamilyTag::Star2Ones1Bar(m) => {
            let s = sign(m as i64);
            let c = Rational::from_integer(BigInt::from(m + 2)) * &s;
            let mut e = ln(m + 3).scale(&(&c / fact(m + 3))) + (z(m + 3) - li(m + 3)).scale(&c);
            for j in 1..=m + 2 {
                e = e - (ln(m + 3 - j) * li(j)).scale(&(&c / fact(m + 3 - j)));
            }
            e = e - (z(2) * ln(m + 1)).scale(&(rat(3, 2) * &s / fact(m + 1)));
            let mut sum = ConstantExpr::zero();
            for i in 1..=m {
                let prev = closed_form(FamilyTag::Star2Ones1Bar(i - 1))? - closed_form(FamilyTag::Star2Ones(i))?;
                sum = sum + (ln(m + 1 - i) * prev).scale(&(sign(i as i64 - 1) * fact(i) * binom(m + 1, i)));
            }
            e - sum.scale(&(&s / fact(m + 1)))
        }
        FamilyTag::LiTwoOnes(m) => {
            let mut e = z(m + 2);
            for l in 0..=m + 1 {
                e = e - (ln(m + 1 - l) * li(l + 1)).scale(&fact(m + 1 - l).recip());
            }
            e
        }
        FamilyTag::MzvBar1OnesBar1(m) => closed_form(FamilyTag::LiTwoOnes(m))?.scale(&sign(m as i64 + 1)),
        FamilyTag::ThreeBar(m, k) => {
            let lead = ln(m + 1) * closed_form(FamilyTag::IntegralI(k))?.scale_int(k + 1)
                - closed_form(FamilyTag::IntegralI(m + k + 1))?.scale_int(m + k + 2);
            let mut e = lead.scale(&(sign(k as i64) / (fact(m + 1) * fact(k + 1))));
            for i in 1..=m {
                e = e - (ln(i) * closed_form(FamilyTag::ThreeBar(m - i, k))?).scale(&fact(i).recip());
            }
            e
        }
        FamilyTag::Bar1OnesTwo(m, k) => {
            let lead = ln(m + 1) * closed_form(FamilyTag::IntegralJ(k + 1))? - closed_form(FamilyTag::IntegralJ(m + k + 2))?;
            let mut e = lead.scale(&(sign(k as i64) / (fact(m + 1) * fact(k + 1))));
            for i in 1..=m {
                e = e - (ln(i) * closed_form(FamilyTag::Bar1OnesTwo(m - i, k))?).scale(&fact(i).recip());
            }
            e
        }
    })
}
