use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::exact::{factorial, Rational};
use crate::index::{rep, SignedIndex, SumKind};

use super::mzv::partial_sum_exact;

/// Row `n` of the unsigned Stirling numbers of the first kind,
/// `[s(n,0), ..., s(n,n)]`, from `s(n,k) = s(n-1,k-1) + (n-1) s(n-1,k)`.
pub fn stirling1_row(n: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m as usize + 1];
        for k in 1..=m as usize {
            let mut v = row[k - 1].clone();
            if k < row.len() {
                v += &row[k] * (m - 1);
            }
            next[k] = v;
        }
        row = next;
    }
    row
}

pub fn stirling1(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling1_row(n).swap_remove(k as usize)
}

/// Checks `s(n,k) = (n-1)! ζ_{n-1}({1}_{k-1})` for every `1 <= k <= n`
/// in exact arithmetic.
pub fn check_stirling_identity(n: u32) -> Result<bool> {
    if !(1..=100).contains(&n) {
        return Err(MzvError::Domain(format!("stirling identity check needs 1 <= n <= 100, got {n}")));
    }
    let row = stirling1_row(n);
    let fact = Rational::from_integer(factorial(n - 1));
    for k in 1..=n {
        let ones: Vec<i64> = rep(1, k as usize - 1).collect();
        let ix = SignedIndex::from_signed(SumKind::Strict, &ones)?;
        let rhs = &fact * partial_sum_exact(&ix, n as u64 - 1)?;
        let lhs = Rational::from_integer(BigInt::from(row[k as usize].clone()));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(stirling1(0, 0), BigUint::one());
        assert_eq!(stirling1(5, 3), BigUint::from(35u32));
        assert_eq!(stirling1(4, 1), BigUint::from(6u32));
        assert_eq!(stirling1(3, 0), BigUint::zero());
        assert_eq!(stirling1(2, 5), BigUint::zero());
    }

    #[test]
    fn row_sums_are_factorials() {
        for n in 0..20 {
            let total: BigUint = stirling1_row(n).iter().sum();
            assert_eq!(BigInt::from(total), factorial(n));
        }
    }

    #[test]
    fn identity_holds() {
        for n in [1, 2, 5, 12] {
            assert!(check_stirling_identity(n).unwrap());
        }
        assert!(check_stirling_identity(0).is_err());
    }
}
