//! Numeric values checked against independent references: 45-digit values
//! computed separately with mpmath (polygamma inner sums for depth two,
//! direct nested loops for polylogarithms at 1/2), and classical closed
//! forms.

use mzv_core::series::{eval, eval_accelerated, eval_direct, eval_mpl_half, TruncationOptions};
use mzv_core::symbolic::{canonicalize, closed_form, expr_eval, ConstantExpr, FamilyTag};
use mzv_core::{BigReal, EvalResult, Precision, SignedIndex};

fn p() -> Precision {
    Precision::DEFAULT
}

fn opts() -> TruncationOptions {
    TruncationOptions::default()
}

fn reference(text: &str) -> BigReal {
    BigReal::parse_decimal(text, p()).unwrap()
}

/// `|r - reference| <= tol` and the reported error covers the miss.
fn assert_matches(r: &EvalResult, text: &str, tol: f64, what: &str) {
    let diff = (&r.value - &reference(text)).abs();
    assert!(diff.to_f64() <= tol, "{what}: off by {}", diff.to_decimal(4));
    let slack = BigReal::from_f64(1e-44, p());
    assert!(diff <= &r.err + &slack, "{what}: error {} does not cover {}", r.err.to_decimal(4), diff.to_decimal(4));
}

#[test]
fn depth_two_alternating_values() {
    let cases = [
        (vec![-1, 2], "0.269576479531527807387355389118312174917068348", 1e-40),
        (vec![-2, 1], "0.150257112894949285674967270188931248845623287", 1e-40),
        (vec![-3, 1], "0.0877856715686553020365932949977619342150227321", 1e-40),
        // inner alternation: the accelerator hands over to direct summation
        (vec![-1, -1], "-0.582240526465012505902656320159680108744198475", 1e-28),
    ];
    for (signed, text, tol) in cases {
        let ix = SignedIndex::strict(&signed);
        assert_matches(&eval_accelerated(&ix, &opts(), p()).unwrap(), text, tol, &ix.to_string());
    }
}

#[test]
fn star_values_with_classical_forms() {
    let cases = [
        (vec![2, -1], "-1.40975789017438056486193524811066152013369819"),
        (vec![-1, 1, -1], "0.664843709551554084459114935916484164094583793"),
        (vec![3, 1], "1.35290404213892273939500462067645987846843869"),
    ];
    for (signed, text) in cases {
        let ix = SignedIndex::star(&signed);
        assert_matches(&eval(&ix, &opts(), p()).unwrap(), text, 1e-25, &ix.to_string());
    }
}

#[test]
fn polylogarithms_at_one_half() {
    let cases = [
        (vec![2, 1], "0.0947530042301277057218250064203094914862688722"),
        (vec![3, 1], "0.0407582391593092519207592174336098403399817304"),
        (vec![2, 1, 1], "0.0141342372149900087894745119612831613359807229"),
        (vec![4, 1, 1], "0.0011224699796583776673751963026870768104168006"),
        (vec![3, 2], "0.0388800588418439042924783485750276877670713594"),
        (vec![2, 2, 1], "0.00621546846040813542393490851101401435706588027"),
    ];
    for (exps, text) in cases {
        assert_matches(&eval_mpl_half(&exps, p()).unwrap(), text, 1e-44, &format!("li{exps:?}"));
    }
}

#[test]
fn euler_star_value_is_twice_zeta_three() {
    let r = eval_direct(&SignedIndex::star(&[2, 1]), &opts(), p()).unwrap();
    let z3 = expr_eval(&ConstantExpr::zeta(3).scale_int(2), p()).unwrap();
    assert!((&r.value - &z3.value).abs().to_f64() < 1e-25);
    assert_eq!(canonicalize(&closed_form(FamilyTag::EulerStar(2)).unwrap(), true).unwrap().to_string(), "2*z3");
}

#[test]
fn integral_i_zero() {
    let c = canonicalize(&closed_form(FamilyTag::IntegralI(0)).unwrap(), true).unwrap();
    assert_eq!(c.to_string(), "-1/2*z2 + 1/2*ln2^2");
    let v = expr_eval(&c, p()).unwrap();
    assert_matches(&v, "-0.582240526465012505902656320159680108744198475", 1e-44, "I(0)");
}

#[test]
fn theorem_three_two_sign_pattern() {
    // ζ(1̄,{1}_m,1̄) = (-1)^(m+1) Li_{2,{1}_m}(1/2)
    let z = eval(&SignedIndex::strict(&[-1, 1, 1, -1]), &opts(), p()).unwrap();
    assert_matches(&z, "-0.0141342372149900087894745119612831613359807229", 1e-25, "zeta(-1,1,1,-1)");
}
