//! Finite closed forms of the elementary logarithmic integrals.

use crate::error::{MzvError, Result};
use crate::exact::{binomial, factorial, parity_sign};
use crate::real::BigReal;

/// `sum_{1 <= k_i <= ... <= k_1 <= n} f(k_i) / (k_1 ... k_i)`; for `i = 0`
/// the sum is `f(n)`.
fn nested_star(n: u32, i: u32, f: &[BigReal]) -> BigReal {
    if i == 0 {
        return f[n as usize].clone();
    }
    let prec = f[0].precision();
    // level[j] holds the depth-d sum with outer bound j
    let mut level: Vec<BigReal> = f.to_vec();
    for _ in 0..i {
        let mut acc = BigReal::zero(prec);
        let mut next = vec![BigReal::zero(prec); n as usize + 1];
        for j in 1..=n as usize {
            acc = &acc + &(&level[j] / &BigReal::from_u64(j as u64, prec));
            next[j] = acc.clone();
        }
        level = next;
    }
    level.swap_remove(n as usize)
}

/// Closed form of `∫_0^x t^(n-1) ln^m(1-t) dt` for `n >= 1`, `-1 <= x < 1`,
/// as a finite combination of star-type harmonic sums.
pub fn j_closed(n: u32, m: u32, x: &BigReal) -> Result<BigReal> {
    let prec = x.precision();
    let one = BigReal::one(prec);
    if n == 0 {
        return Err(MzvError::Domain("n must be at least 1".into()));
    }
    if *x < -&one || *x >= one {
        return Err(MzvError::Domain("x must lie in [-1, 1)".into()));
    }
    let nn = BigReal::from_u64(n as u64, prec);
    let lg = (&one - x).ln();
    let xn = x.powi(n);
    let mut total = &(&(&xn - &one) * &lg.powi(m)) / &nn;

    let ones = vec![one.clone(); n as usize + 1];
    let c = BigReal::from_bigint(&(factorial(m) * parity_sign(m as i64)), prec);
    total = &total + &(&(&c * &nested_star(n, m, &ones)) / &nn);

    let mut f = Vec::with_capacity(n as usize + 1);
    let mut xp = one.clone();
    f.push(BigReal::zero(prec));
    for _ in 1..=n {
        xp = &xp * x;
        f.push(&xp - &one);
    }
    for i in 1..=m {
        let coef = factorial(i) * binomial(m, i) * parity_sign(i as i64 - 1);
        let term = BigReal::from_bigint(&coef, prec) * lg.powi(m - i) * nested_star(n, i, &f);
        total = &total - &(&term / &nn);
    }
    Ok(total)
}

/// Closed form of `∫_0^x t^n ln^m t dt` for `0 < x <= 1`.
pub fn powlog_closed(n: u32, m: u32, x: &BigReal) -> Result<BigReal> {
    let prec = x.precision();
    let one = BigReal::one(prec);
    if x.is_negative() || x.is_zero() || *x > one {
        return Err(MzvError::Domain("x must lie in (0, 1]".into()));
    }
    let lg = x.ln();
    let n1 = BigReal::from_u64(n as u64 + 1, prec);
    let xn1 = x.powi(n + 1);
    let mut total = BigReal::zero(prec);
    for l in 0..=m {
        let coef = factorial(l) * binomial(m, l) * parity_sign(l as i64);
        let term = BigReal::from_bigint(&coef, prec) * &xn1 * lg.powi(m - l) / n1.powi(l + 1);
        total = &total + &term;
    }
    Ok(total)
}
