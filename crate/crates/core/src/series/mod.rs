//! Numeric evaluation of nested sums: multiple zeta (star) values, partial
//! sums, multiple polylogarithms at 1/2, basis constants and Stirling
//! numbers of the first kind.

mod accel;
mod constants;
mod finite;
mod fit;
mod mzv;
mod nested;
mod stirling;

use serde::{Deserialize, Serialize};

pub use accel::crvz_alternating_sum;
pub use constants::{eval_ln2, eval_mpl_half, eval_zeta};
pub use finite::{j_closed, powlog_closed};
pub use mzv::{eval, eval_accelerated, eval_direct, partial_sum, partial_sum_exact, partial_sum_real, partial_sum_sequence, PartialSum};
pub use stirling::{check_stirling_identity, stirling1, stirling1_row};

/// Truncation and acceleration settings for series evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationOptions {
    /// Outer cutoff `N` for direct summation.
    pub cutoff: u64,
    /// Number of nested sample windows (ending at `N`, `N/2`, ...) used by
    /// the tail fit; their spread is the error estimate. `0` disables the
    /// fit and returns the raw partial sum.
    pub richardson_levels: u32,
    /// Terms fed to the alternating-series accelerator.
    pub accel_terms: u32,
    /// Inverse-power orders in the asymptotic tail fit.
    pub fit_orders: u32,
}

impl Default for TruncationOptions {
    fn default() -> Self {
        TruncationOptions { cutoff: 100_000, richardson_levels: 2, accel_terms: 64, fit_orders: 6 }
    }
}
