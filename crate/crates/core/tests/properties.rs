//! Property tests for the invariants of indices, reals, expressions and
//! partial sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use mzv_core::exact::{factorial, rat};
use mzv_core::series::{eval_direct, partial_sum_exact, stirling1_row, TruncationOptions};
use mzv_core::symbolic::{canonicalize, expr_eval, BasisSymbol, ConstantExpr, Monomial};
use mzv_core::{BigReal, MzvError, Precision, Rational, SignedIndex};

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..=4, -3i64..=-1]
}

fn symbol() -> impl Strategy<Value = BasisSymbol> {
    prop_oneof![
        (2u32..=5).prop_map(BasisSymbol::Zeta),
        (1u32..=5).prop_map(BasisSymbol::LiHalf),
        Just(BasisSymbol::Ln2),
        Just(BasisSymbol::MLiHalf(vec![3, 1])),
    ]
}

/// A product of up to three symbol powers with coefficient 1.
fn monomial() -> impl Strategy<Value = ConstantExpr> {
    vec((symbol(), 1u32..=2), 0..3).prop_map(|fs| {
        fs.into_iter()
            .fold(ConstantExpr::one(), |acc, (s, p)| acc * ConstantExpr::term(Rational::one(), Monomial::power(s, p)))
    })
}

fn expr() -> impl Strategy<Value = ConstantExpr> {
    vec((monomial(), -6i64..=6, 1i64..=8), 0..5)
        .prop_map(|ts| ts.into_iter().fold(ConstantExpr::zero(), |acc, (m, n, d)| acc + m.scale(&rat(n, d))))
}

fn prec() -> Precision {
    Precision::DEFAULT
}

fn close(a: &BigReal, b: &BigReal, scale_bits: i64) -> bool {
    let mag = a.abs().max(&b.abs()).max(&BigReal::one(prec()));
    (a - b).abs() <= prec().eps_scaled(scale_bits) * mag
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn index_text_round_trips(signed in vec(entry(), 1..6), star in any::<bool>()) {
        let ix = if star { SignedIndex::star(&signed) } else { SignedIndex::strict(&signed) };
        let back: SignedIndex = ix.to_string().parse().unwrap();
        prop_assert_eq!(back, ix);
    }

    #[test]
    fn only_a_leading_unbarred_one_diverges(signed in vec(entry(), 1..4)) {
        let ix = SignedIndex::strict(&signed);
        prop_assert_eq!(ix.admissible(), signed[0] != 1);
        let opts = TruncationOptions { cutoff: 256, ..TruncationOptions::default() };
        let r = eval_direct(&ix, &opts, Precision::new(96).unwrap());
        prop_assert_eq!(matches!(r, Err(MzvError::Divergent(_))), !ix.admissible());
    }

    #[test]
    fn decimal_round_trip_is_exact(num in -1_000_000i64..1_000_000, den in 1i64..10_000, bits in 64u32..400) {
        let p = Precision::new(bits).unwrap();
        let x = BigReal::from_ratio(num, den, p);
        let back = BigReal::parse_decimal(&x.to_exact_decimal(), p).unwrap();
        prop_assert!((&x - &back).is_zero());
    }

    #[test]
    fn expression_text_round_trips(e in expr()) {
        let back: ConstantExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn canonicalization_keeps_value(e in expr()) {
        let c = canonicalize(&e, true).unwrap();
        let a = expr_eval(&e, prec()).unwrap().value;
        let b = expr_eval(&c, prec()).unwrap().value;
        prop_assert!(close(&a, &b, 40), "{} vs {}", a.to_decimal(30), b.to_decimal(30));
        for s in c.symbols() {
            prop_assert!(!matches!(s, BasisSymbol::LiHalf(1..=3)), "{} left in {}", s, c);
        }
    }

    #[test]
    fn canonicalization_is_idempotent(e in expr(), reduce in any::<bool>()) {
        let once = canonicalize(&e, reduce).unwrap();
        prop_assert_eq!(canonicalize(&once, reduce).unwrap(), once);
    }

    #[test]
    fn evaluation_respects_products(a in expr(), b in expr()) {
        let va = expr_eval(&a, prec()).unwrap().value;
        let vb = expr_eval(&b, prec()).unwrap().value;
        let vab = expr_eval(&(&a * &b), prec()).unwrap().value;
        prop_assert!(close(&(&va * &vb), &vab, 48));
    }

    #[test]
    fn star_partial_sums_dominate_strict(signed in vec(1i64..=3, 1..4), n in 1u64..40) {
        let strict = partial_sum_exact(&SignedIndex::strict(&signed), n).unwrap();
        let star = partial_sum_exact(&SignedIndex::star(&signed), n).unwrap();
        prop_assert!(star >= strict);
        prop_assert!(strict >= Rational::zero());
    }

    #[test]
    fn positive_partial_sums_increase(signed in vec(1i64..=3, 1..4), n in 1u64..40) {
        let ix = SignedIndex::strict(&signed);
        prop_assert!(partial_sum_exact(&ix, n + 1).unwrap() >= partial_sum_exact(&ix, n).unwrap());
    }

    #[test]
    fn stirling_rows_sum_to_factorial(n in 1u32..60) {
        let total: BigInt = stirling1_row(n).into_iter().map(BigInt::from).sum();
        prop_assert_eq!(total, factorial(n));
    }
}

#[test]
fn star_values_dominate_strict_values() {
    let opts = TruncationOptions::default();
    for signed in [vec![2i64, 1], vec![3, 1], vec![2, 2], vec![3, 1, 1], vec![2, 1, 2]] {
        let strict = eval_direct(&SignedIndex::strict(&signed), &opts, prec()).unwrap();
        let star = eval_direct(&SignedIndex::star(&signed), &opts, prec()).unwrap();
        assert!(star.value > strict.value, "{signed:?}");
    }
}
