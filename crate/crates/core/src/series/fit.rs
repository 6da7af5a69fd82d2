//! Asymptotic extrapolation of partial sums.
//!
//! Partial sums of an admissible nested sum behave, over even `N`, like
//! `S(N) = S + sum_{i >= i0} sum_{j <= J} c_ij ln^j N / N^i`, where `J`
//! is the number of `1` entries (harmonic-type inner sums contribute
//! log powers) and the alternating parts `(-1)^N` become constant over
//! even `N`. Fitting that model on a window of sample points gives `S`.

use crate::real::{BigReal, Precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct FitShape {
    pub first_order: u32,
    pub orders: u32,
    pub log_powers: u32,
}

impl FitShape {
    pub fn unknowns(&self) -> usize {
        1 + (self.orders * (self.log_powers + 1)) as usize
    }
}

/// Distinct even sample points spaced geometrically in `[end/8, end]`.
pub(crate) fn sample_points(end: u64, count: usize) -> Option<Vec<u64>> {
    let end = end & !1;
    if count == 0 || end < 2 || (end - end / 8) / 2 + 1 < count as u64 {
        return None;
    }
    let mut pts: Vec<u64> = (0..count)
        .map(|r| {
            let f = if count > 1 { 8f64.powf(-(r as f64) / (count - 1) as f64) } else { 1.0 };
            (((end as f64 * f) / 2.0).round() as u64 * 2).clamp(2, end)
        })
        .collect();
    pts.sort_unstable();
    pts.dedup();
    let mut cand = end;
    while pts.len() < count && cand >= 2 {
        if pts.binary_search(&cand).is_err() {
            pts.push(cand);
            pts.sort_unstable();
        }
        cand -= 2;
    }
    (pts.len() == count).then_some(pts)
}

/// Least-squares-free interpolation: solves the square system for the
/// model through the given `(N, S(N))` points and returns the constant term.
pub(crate) fn extrapolate(points: &[(u64, BigReal)], shape: FitShape, prec: Precision) -> Option<BigReal> {
    let k = shape.unknowns();
    if points.len() != k {
        return None;
    }
    let scale = points.iter().map(|p| p.0).max()?;
    let big_m = BigReal::from_u64(scale, prec);
    let mut rows: Vec<Vec<BigReal>> = Vec::with_capacity(k);
    for (n, s) in points {
        let nn = BigReal::from_u64(*n, prec);
        let x = &big_m / &nn;
        let lg = (&nn / &big_m).ln();
        let mut row = Vec::with_capacity(k + 1);
        row.push(BigReal::one(prec));
        let mut xp = x.powi(shape.first_order);
        for _ in 0..shape.orders {
            let mut term = xp.clone();
            for _ in 0..=shape.log_powers {
                row.push(term.clone());
                term = &term * &lg;
            }
            xp = &xp * &x;
        }
        row.push(s.clone().with_precision(prec));
        rows.push(row);
    }
    solve_first(rows, prec)
}

/// Gaussian elimination with partial pivoting on an augmented matrix;
/// returns the first unknown.
fn solve_first(mut a: Vec<Vec<BigReal>>, prec: Precision) -> Option<BigReal> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let inv = pivot_row[col].recip();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for c in col..=k {
                let d = &f * &pivot_row[c];
                row[c] = &row[c] - &d;
            }
        }
    }
    let mut x = vec![BigReal::zero(prec); k];
    for i in (0..k).rev() {
        let mut acc = a[i][k].clone();
        for j in i + 1..k {
            acc = &acc - &(&a[i][j] * &x[j]);
        }
        x[i] = &acc / &a[i][i];
    }
    Some(x.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_even_distinct_and_bounded() {
        let pts = sample_points(10_000, 25).unwrap();
        assert_eq!(pts.len(), 25);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| p % 2 == 0 && *p >= 1250 && *p <= 10_000));
        assert!(sample_points(20, 25).is_none());
    }

    #[test]
    fn recovers_constant_of_exact_model() {
        // S(N) = 3 + 1/N + ln N / N^2 - 5 ln N / N^3
        let prec = Precision::new(256).unwrap();
        let shape = FitShape { first_order: 1, orders: 3, log_powers: 1 };
        let pts: Vec<(u64, BigReal)> = sample_points(4000, shape.unknowns())
            .unwrap()
            .into_iter()
            .map(|n| {
                let nn = BigReal::from_u64(n, prec);
                let l = nn.ln();
                let v = BigReal::from_i64(3, prec) + nn.recip() + &l / nn.powi(2)
                    - BigReal::from_i64(5, prec) * &l / nn.powi(3);
                (n, v)
            })
            .collect();
        let s = extrapolate(&pts, shape, prec).unwrap();
        assert!((s - BigReal::from_i64(3, prec)).abs().to_f64() < 1e-60);
    }
}
