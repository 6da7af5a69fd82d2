//! Identity registry and verification harness.

mod plan;
mod registry;
mod report;
mod run;

pub use plan::{Atom, GenFun, Plan, Route, Term};
pub use registry::{lemma_corpus, registry, suite_cases, Check, IdentityCase, SUITES, TOL_ALTERNATING, TOL_GENFUN, TOL_LOOSE, TOL_TIGHT};
pub use report::{parse_json_report, HONESTY_LIMIT, CaseRow, ConfigSnapshot, Report, Summary, VerdictRecord};
pub use run::{run_case, run_suite, run_suite_with, RunConfig};
