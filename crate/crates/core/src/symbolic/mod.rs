//! Exact constant algebra over `{ln 2, ζ(k), Li_k(1/2), Li_{s}(1/2)}` and
//! closed forms for the reducible families.

mod canon;
mod expr;
mod families;

pub use canon::{canonicalize, check_reduction_rules};
pub use expr::{expr_eval, BasisSymbol, ConstantExpr, Monomial};
pub use families::{closed_form, Counterpart, FamilyTag};
