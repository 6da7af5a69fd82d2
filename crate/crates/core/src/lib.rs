//! Multiple zeta (star) values, alternating Euler sums and polylogarithms
//! at 1/2: high-precision numerics, exact closed forms for reducible
//! families, and a registry of identities checked along independent paths.

pub mod error;
pub mod eval;
pub mod exact;
pub mod index;
pub mod real;
pub mod quadrature;
pub mod series;
pub mod symbolic;
pub mod verify;

pub use error::{MzvError, Result};
pub use eval::{EvalResult, Method};
pub use exact::Rational;
pub use index::{parse_index, Entry, EntrySign, IndexStats, SignedIndex, SumKind, Target};
pub use real::{BigReal, Precision};
