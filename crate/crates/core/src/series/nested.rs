//! Incremental nested summation.
//!
//! For an index `(s_1, ..., s_k)` the pass keeps the prefix sums
//! `P_j(n) = sum over n >= n_j (>|>=) ... of the terms of (s_j, ..., s_k)`
//! with `P_{k+1} = 1`. Advancing `n` costs one reciprocal and `O(k)`
//! multiply-adds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::index::{SignedIndex, SumKind};
use crate::real::{BigReal, Precision};

#[derive(Clone, Copy)]
struct Level {
    mag: u32,
    alternating: bool,
}

fn levels(ix: &SignedIndex) -> Vec<Level> {
    ix.entries().iter().map(|e| Level { mag: e.magnitude, alternating: e.is_alternating() }).collect()
}

/// Numeric pass over BigReal.
pub(crate) struct RealPass {
    levels: Vec<Level>,
    star: bool,
    p: Vec<BigReal>,
    n: u64,
    prec: Precision,
    max_mag: u32,
    /// Outer weight `2^-n` for multiple polylogarithms at 1/2.
    half: Option<(BigReal, BigReal)>,
}

impl RealPass {
    pub fn new(ix: &SignedIndex, prec: Precision) -> Self {
        let levels = levels(ix);
        let star = ix.kind() == SumKind::Star;
        Self::build(levels, star, prec, false)
    }

    /// `Li_{s_1,...,s_k}(1/2)`: strict sum with outer weight `2^-n_1`.
    pub fn polylog_half(exps: &[u32], prec: Precision) -> Self {
        let levels = exps.iter().map(|&mag| Level { mag, alternating: false }).collect();
        Self::build(levels, false, prec, true)
    }

    fn build(levels: Vec<Level>, star: bool, prec: Precision, half: bool) -> Self {
        let k = levels.len();
        let mut p = vec![BigReal::zero(prec); k + 1];
        p[k] = BigReal::one(prec);
        let max_mag = levels.iter().map(|l| l.mag).max().unwrap_or(1);
        let half = half.then(|| (BigReal::one(prec), BigReal::from_ratio(1, 2, prec)));
        RealPass { levels, star, p, n: 0, prec, max_mag, half }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Current outer partial sum.
    pub fn value(&self) -> &BigReal {
        &self.p[0]
    }

    /// Advances to `n + 1` and returns the outer term that was added.
    pub fn step(&mut self) -> BigReal {
        self.n += 1;
        let n = self.n;
        let inv = BigReal::from_u64(n, self.prec).recip();
        let mut pows = Vec::with_capacity(self.max_mag as usize);
        pows.push(inv.clone());
        for i in 1..self.max_mag as usize {
            let next = &pows[i - 1] * &inv;
            pows.push(next);
        }
        let odd = n % 2 == 1;
        let term = |j: usize, this: &Self| -> BigReal {
            let l = this.levels[j];
            let t = pows[l.mag as usize - 1].clone();
            if l.alternating && odd {
                -t
            } else {
                t
            }
        };
        let k = self.levels.len();
        if k == 0 {
            return BigReal::zero(self.prec);
        }
        let mut t0 = term(0, self);
        if let Some((w, h)) = &mut self.half {
            *w = &*w * &*h;
            t0 = &t0 * &*w;
        }
        if self.star {
            for j in (1..k).rev() {
                let inc = &term(j, self) * &self.p[j + 1];
                self.p[j] = &self.p[j] + &inc;
            }
            let inc = &t0 * &self.p[1];
            self.p[0] = &self.p[0] + &inc;
            inc
        } else {
            let inc0 = &t0 * &self.p[1];
            self.p[0] = &self.p[0] + &inc0;
            for j in 1..k {
                let inc = &term(j, self) * &self.p[j + 1];
                self.p[j] = &self.p[j] + &inc;
            }
            inc0
        }
    }
}

/// Exact pass over rationals.
pub(crate) fn exact_partial_sum(ix: &SignedIndex, n: u64) -> BigRational {
    let levels = levels(ix);
    let k = levels.len();
    let mut p = vec![BigRational::zero(); k + 1];
    p[k] = BigRational::one();
    let star = ix.kind() == SumKind::Star;
    for m in 1..=n {
        let t = |j: usize| {
            let l = levels[j];
            let den = num_traits::pow(BigInt::from(m), l.mag as usize);
            let num = if l.alternating && m % 2 == 1 { -1 } else { 1 };
            BigRational::new(BigInt::from(num), den)
        };
        if star {
            for j in (0..k).rev() {
                let inc = t(j) * &p[j + 1];
                p[j] += inc;
            }
        } else {
            for j in 0..k {
                let inc = t(j) * &p[j + 1];
                p[j] += inc;
            }
        }
    }
    p.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// All tuples `n >= n1 (>|>=) n2 ...` by brute force.
    fn brute(signed: &[i64], n: u64, star: bool) -> BigRational {
        fn rec(signed: &[i64], upper: u64, star: bool) -> BigRational {
            let Some((&s, rest)) = signed.split_first() else {
                return BigRational::one();
            };
            let mut acc = BigRational::zero();
            for m in 1..=upper {
                let sign = if s < 0 && m % 2 == 1 { -1 } else { 1 };
                let t = BigRational::new(BigInt::from(sign), num_traits::pow(BigInt::from(m), s.unsigned_abs() as usize));
                let next = if star { m } else { m - 1 };
                acc += t * rec(rest, next, star);
            }
            acc
        }
        rec(signed, n, star)
    }

    #[test]
    fn exact_pass_matches_enumeration() {
        for signed in [vec![1, 1], vec![-1, 2, -1], vec![2, -1, 1], vec![-3]] {
            for n in 0..9 {
                let s = SignedIndex::strict(&signed);
                assert_eq!(exact_partial_sum(&s, n), brute(&signed, n, false));
                let t = SignedIndex::star(&signed);
                assert_eq!(exact_partial_sum(&t, n), brute(&signed, n, true));
            }
        }
        assert_eq!(exact_partial_sum(&SignedIndex::strict(&[1, 1]), 4), rat(35, 24));
        assert_eq!(exact_partial_sum(&SignedIndex::star(&[1, 1]), 2), rat(7, 4));
    }

    #[test]
    fn real_pass_matches_exact() {
        let prec = Precision::DEFAULT;
        for ix in [SignedIndex::strict(&[-1, 1, -1]), SignedIndex::star(&[2, -1, 1])] {
            let mut pass = RealPass::new(&ix, prec);
            for _ in 0..30 {
                pass.step();
            }
            let exact = BigReal::from_rational(&exact_partial_sum(&ix, 30), prec);
            assert!((pass.value() - &exact).abs() <= prec.eps_scaled(8));
        }
    }

    #[test]
    fn polylog_pass_weights_outer_level() {
        let prec = Precision::DEFAULT;
        let mut pass = RealPass::polylog_half(&[2, 1], prec);
        for _ in 0..3 {
            pass.step();
        }
        // n1 = 2: 1/(4*4*1); n1 = 3: (1 + 1/2)/(8*9)
        let expect = BigReal::from_ratio(1, 16, prec) + BigReal::from_ratio(3, 144, prec);
        assert!((pass.value() - &expect).abs() <= prec.eps_scaled(4));
    }
}
