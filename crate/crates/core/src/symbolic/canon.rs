//! Canonical form and the classical low-order reductions of `Li_k(1/2)`.

use std::sync::OnceLock;

use crate::error::{MzvError, Result};
use crate::exact::rat;
use crate::real::Precision;

use super::expr::{expr_eval, BasisSymbol, ConstantExpr};

/// `Li_2(1/2) = ζ(2)/2 - ln²2/2`.
fn li2_rule() -> ConstantExpr {
    ConstantExpr::zeta(2).scale(&rat(1, 2)) - ConstantExpr::ln2_pow(2).scale(&rat(1, 2))
}

/// `Li_3(1/2) = 7ζ(3)/8 - ζ(2) ln2/2 + ln³2/6`.
fn li3_rule() -> ConstantExpr {
    ConstantExpr::zeta(3).scale(&rat(7, 8)) - (ConstantExpr::zeta(2) * ConstantExpr::ln2()).scale(&rat(1, 2))
        + ConstantExpr::ln2_pow(3).scale(&rat(1, 6))
}

/// Checks both reduction rules numerically to `2^(32-P)` at the default
/// precision. The outcome is computed once per process.
pub fn check_reduction_rules() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            let prec = Precision::DEFAULT;
            for (k, rule) in [(2, li2_rule()), (3, li3_rule())] {
                let diff = &rule - &ConstantExpr::li(k);
                let r = expr_eval(&diff, prec)?;
                if r.value.abs() > prec.eps_scaled(32) {
                    return Err(MzvError::Validation(format!(
                        "reduction rule for li{k} is off by {}",
                        r.value.abs().to_decimal(6)
                    )));
                }
            }
            Ok(())
        })
        .clone()
}

/// Canonical form of `e`. `Li_1(1/2)` always becomes `ln 2`; with
/// `reduce_low_li`, `Li_2(1/2)` and `Li_3(1/2)` are eliminated too.
pub fn canonicalize(e: &ConstantExpr, reduce_low_li: bool) -> Result<ConstantExpr> {
    if reduce_low_li {
        check_reduction_rules()?;
    }
    Ok(e.substitute(&|s| match s {
        BasisSymbol::LiHalf(1) => Some(ConstantExpr::ln2()),
        BasisSymbol::LiHalf(2) if reduce_low_li => Some(li2_rule()),
        BasisSymbol::LiHalf(3) if reduce_low_li => Some(li3_rule()),
        _ => None,
    }))
}
