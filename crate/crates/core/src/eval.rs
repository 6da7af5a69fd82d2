use std::fmt;

use serde::{Deserialize, Serialize};

use crate::real::{BigReal, Precision};

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Accelerated,
    Geometric,
    Quadrature,
    Symbolic,
    /// Finite closed-form sum evaluated in floating point.
    Finite,
    Exact,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Accelerated => "accelerated",
            Method::Geometric => "geometric",
            Method::Quadrature => "quadrature",
            Method::Symbolic => "symbolic",
            Method::Finite => "finite",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A numeric value with its estimated absolute error.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: BigReal,
    pub err: BigReal,
    pub method: Method,
    pub terms_used: u64,
}

impl EvalResult {
    pub fn new(value: BigReal, err: BigReal, method: Method, terms_used: u64) -> Self {
        EvalResult { value, err: err.abs(), method, terms_used }
    }

    pub fn exact(value: BigReal, method: Method) -> Self {
        let err = BigReal::zero(value.precision());
        EvalResult { value, err, method, terms_used: 0 }
    }

    pub fn precision(&self) -> Precision {
        self.value.precision()
    }

    /// `|self - other| <= self.err + other.err + slack`.
    pub fn agrees_with(&self, other: &EvalResult, slack: &BigReal) -> bool {
        (&self.value - &other.value).abs() <= &(&self.err + &other.err) + slack
    }
}
