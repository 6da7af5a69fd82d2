//! Configurable-precision real numbers.
//!
//! [`BigReal`] wraps an `astro-float` binary float together with its working
//! precision. Binary operations round to the larger of the operand
//! precisions with round-half-even, so each operation carries a relative
//! error of at most one ulp.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MzvError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT: Precision = Precision(192);

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(MzvError::Domain(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Precision with `extra` guard bits added.
    pub fn guarded(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// Number of significant decimal digits that are safe to print:
    /// `ceil(P log10 2) - 4`.
    pub fn trusted_digits(self) -> usize {
        let d = (self.0 as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        d.saturating_sub(4).max(1)
    }

    /// `2^(k - P)`, the usual shape of a tolerance at this precision.
    pub fn eps_scaled(self, k: i64) -> BigReal {
        BigReal::pow2(k - self.0 as i64, self)
    }

    fn usize(self) -> usize {
        self.0 as usize
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

#[derive(Clone)]
pub struct BigReal {
    v: BigFloat,
    prec: Precision,
}

impl BigReal {
    fn wrap(v: BigFloat, prec: Precision) -> Self {
        BigReal { v, prec }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::wrap(BigFloat::from_u64(0, prec.usize()), prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(i, prec.usize()), prec)
    }

    pub fn from_u64(u: u64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_u64(u, prec.usize()), prec)
    }

    /// Exact conversion of an `f64` (every finite double is representable).
    pub fn from_f64(x: f64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_f64(x, prec.usize().max(64)), prec).with_precision(prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        Self::from_i64(num, prec.guarded(64)).div_prec(&Self::from_i64(den, prec.guarded(64)), prec)
    }

    /// `2^k`.
    pub fn pow2(k: i64, prec: Precision) -> Self {
        let mut v = BigFloat::from_u64(1, prec.usize());
        // 1 is stored as 0.1b * 2^1
        v.set_exponent((1 + k) as astro_float::Exponent);
        Self::wrap(v, prec)
    }

    /// Exact conversion of an integer, then one rounding to `prec`.
    pub fn from_bigint(n: &BigInt, prec: Precision) -> Self {
        Self::exact_int(n).with_precision(prec)
    }

    /// Exact up to the final rounded division.
    pub fn from_rational(r: &BigRational, prec: Precision) -> Self {
        let num = Self::exact_int(r.numer());
        let den = Self::exact_int(r.denom());
        num.div_prec(&den, prec)
    }

    /// Integer as a float whose mantissa holds every bit of it.
    fn exact_int(n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(Precision::DEFAULT);
        }
        let bits = n.bits();
        let words = bits.div_ceil(64).max(1);
        let shifted = n.magnitude() << (words * 64 - bits);
        let digits = shifted.to_u64_digits();
        let sign = if n.sign() == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let v = BigFloat::from_words(&digits, sign, bits as astro_float::Exponent);
        Self::wrap(v, Precision((words * 64) as u32))
    }

    /// The exact rational value of the binary float.
    pub fn to_rational(&self) -> Option<BigRational> {
        let (words, _, sign, e, _) = self.v.as_raw_parts()?;
        let limbs: Vec<u32> = words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
        let mut m = BigInt::from_biguint(IntSign::Plus, BigUint::from_slice(&limbs));
        if m.is_zero() {
            return Some(BigRational::zero());
        }
        if sign == Sign::Neg {
            m = -m;
        }
        let shift = e as i64 - 64 * words.len() as i64;
        Some(if shift >= 0 {
            BigRational::from_integer(m << shift as usize)
        } else {
            BigRational::new(m, BigInt::one() << (-shift) as usize)
        })
    }

    pub fn pi(prec: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec.usize(), RM)), prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn with_precision(mut self, prec: Precision) -> Self {
        // the only failure mode is an invalid precision, excluded by `Precision::new`
        let _ = self.v.set_precision(prec.usize(), RM);
        self.prec = prec;
        self
    }

    fn div_prec(&self, rhs: &Self, prec: Precision) -> Self {
        Self::wrap(self.v.div(&rhs.v, prec.usize(), RM), prec)
    }

    pub fn ln(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.v.ln(p.usize(), RM, cc)), p)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        Self::wrap(with_consts(|cc| self.v.exp(p.usize(), RM, cc)), p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec.usize(), RM), self.prec)
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.prec);
        }
        Self::wrap(self.v.powi(n as usize, self.prec.usize(), RM), self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.prec.usize(), RM), self.prec)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.v.is_nan() || self.v.is_inf()
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Lossy conversion for display, logging and coarse comparisons.
    pub fn to_f64(&self) -> f64 {
        if self.is_nan() {
            return f64::NAN;
        }
        self.to_rational().and_then(|q| q.to_f64()).unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits, rounded half away
    /// from zero from the exact binary value. Positional for moderate
    /// magnitudes, scientific otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        let Some(q) = self.to_rational() else {
            return "NaN".into();
        };
        if q.is_zero() {
            return "0".into();
        }
        let (ds, e) = decimal_digits(&q.abs(), sig.max(1));
        let ds = ds.trim_end_matches('0');
        let sign = if q.is_negative() { "-" } else { "" };
        if (-6..=8).contains(&e) {
            if e <= 0 {
                format!("{sign}0.{}{ds}", "0".repeat((-e) as usize))
            } else if (e as usize) >= ds.len() {
                format!("{sign}{ds}{}", "0".repeat(e as usize - ds.len()))
            } else {
                let (a, b) = ds.split_at(e as usize);
                format!("{sign}{a}.{b}")
            }
        } else {
            let (a, b) = ds.split_at(1);
            let frac = if b.is_empty() { String::new() } else { format!(".{b}") };
            format!("{sign}{a}{frac}e{}", e - 1)
        }
    }

    /// Decimal string with enough digits that parsing it back at the same
    /// precision returns the same binary value.
    pub fn to_exact_decimal(&self) -> String {
        let bits = self.v.mantissa_max_bit_len().unwrap_or(self.prec.usize());
        let sig = (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        self.to_decimal(sig)
    }

    pub fn parse_decimal(s: &str, prec: Precision) -> Result<Self> {
        let t = s.trim();
        let ok = !t.is_empty()
            && t.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
        if !ok {
            return Err(MzvError::Syntax(format!("not a decimal number: `{s}`")));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec.usize(), RM, cc));
        if v.is_nan() {
            return Err(MzvError::Syntax(format!("not a decimal number: `{s}`")));
        }
        Ok(Self::wrap(v, prec))
    }
}

fn join(a: Precision, b: Precision) -> Precision {
    a.max(b)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                let p = join(self.prec, rhs.prec);
                BigReal::wrap(self.v.$f(&rhs.v, p.usize(), RM), p)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(mut self) -> BigReal {
        self.v.inv_sign();
        self
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -(self.clone())
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_decimal(self.prec.trusted_digits()), self.prec.0)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.prec.trusted_digits()))
    }
}

/// Digits `d1..d_sig` and exponent `e` with `q ≈ 0.d1d2... × 10^e`, `q > 0`.
fn decimal_digits(q: &BigRational, sig: usize) -> (String, i64) {
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    let lb = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut e = (lb as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while *q >= pow10(e) {
        e += 1;
    }
    while *q < pow10(e - 1) {
        e -= 1;
    }
    let scaled = q * pow10(sig as i64 - e);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut r = (scaled + half).floor().to_integer();
    if r == num_traits::pow(ten, sig) {
        r /= 10;
        e += 1;
    }
    (r.to_string(), e)
}
