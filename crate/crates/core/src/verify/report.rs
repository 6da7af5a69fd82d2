//! Verdicts, reports and their JSON/CSV forms.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::eval::EvalResult;
use crate::real::BigReal;
use crate::series::TruncationOptions;

/// Significant digits written for values in reports.
const REPORT_DIGITS: usize = 40;

/// No case passes with a larger difference, whatever its error estimates
/// say; a verdict resting on a huge error bar confirms nothing.
pub const HONESTY_LIMIT: f64 = 1e-4;

/// Outcome of one case.
#[derive(Clone, Debug)]
pub struct VerdictRecord {
    pub id: String,
    pub suite: String,
    pub lhs: Option<EvalResult>,
    pub rhs: Option<EvalResult>,
    /// `|lhs - rhs|`.
    pub diff: Option<BigReal>,
    pub tolerance: f64,
    pub pass: bool,
    pub ms: u64,
    /// Evaluation failure, if any side could not be computed.
    pub error: Option<String>,
}

impl VerdictRecord {
    /// Passes iff `|lhs - rhs| <= max(tolerance, lhs.err + rhs.err)` and
    /// the difference is within [`HONESTY_LIMIT`].
    pub fn judge(id: String, suite: &str, lhs: EvalResult, rhs: EvalResult, tolerance: f64, elapsed: Duration) -> Self {
        let diff = (&lhs.value - &rhs.value).abs();
        let prec = diff.precision();
        let bound = BigReal::from_f64(tolerance, prec).max(&(&lhs.err + &rhs.err));
        let pass = !diff.is_nan() && diff <= bound && diff <= BigReal::from_f64(HONESTY_LIMIT, prec);
        VerdictRecord {
            id,
            suite: suite.to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            diff: Some(diff),
            tolerance,
            pass,
            ms: elapsed.as_millis() as u64,
            error: None,
        }
    }

    /// A case whose evaluation raised an error.
    pub fn failed(id: String, suite: &str, error: &MzvError, tolerance: f64, elapsed: Duration) -> Self {
        VerdictRecord {
            id,
            suite: suite.to_string(),
            lhs: None,
            rhs: None,
            diff: None,
            tolerance,
            pass: false,
            ms: elapsed.as_millis() as u64,
            error: Some(error.to_string()),
        }
    }

    fn row(&self) -> CaseRow {
        let val = |r: &Option<EvalResult>| r.as_ref().map(|r| r.value.to_decimal(REPORT_DIGITS)).unwrap_or_default();
        let err = |r: &Option<EvalResult>| r.as_ref().map(|r| r.err.to_decimal(6)).unwrap_or_default();
        CaseRow {
            id: self.id.clone(),
            suite: self.suite.clone(),
            lhs: val(&self.lhs),
            lhs_err: err(&self.lhs),
            rhs: val(&self.rhs),
            rhs_err: err(&self.rhs),
            diff: self.diff.as_ref().map(|d| d.to_decimal(6)).unwrap_or_default(),
            pass: self.pass,
            ms: self.ms,
            tolerance: format!("{:e}", self.tolerance),
            error: self.error.clone().unwrap_or_default(),
        }
    }
}

/// Run configuration recorded in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub precision: u32,
    pub options: TruncationOptions,
    pub tolerance_scale: f64,
    pub selector: String,
    pub version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Flat serialized form of a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub id: String,
    pub suite: String,
    pub lhs: String,
    pub lhs_err: String,
    pub rhs: String,
    pub rhs_err: String,
    pub diff: String,
    pub pass: bool,
    pub ms: u64,
    pub tolerance: String,
    pub error: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub config: ConfigSnapshot,
    pub records: Vec<VerdictRecord>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    config: ConfigSnapshot,
    cases: Vec<CaseRow>,
    summary: Summary,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let passed = self.records.iter().filter(|r| r.pass).count();
        Summary { total: self.records.len(), passed, failed: self.records.len() - passed }
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn rows(&self) -> Vec<CaseRow> {
        self.records.iter().map(VerdictRecord::row).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson { config: self.config.clone(), cases: self.rows(), summary: self.summary() };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row).map_err(|e| MzvError::Resource(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| MzvError::Resource(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| MzvError::Resource(e.to_string()))
    }

    /// One line per case plus a summary line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in self.rows() {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            let detail = if r.error.is_empty() { format!("diff={}", r.diff) } else { format!("error: {}", r.error) };
            s.push_str(&format!("{verdict} {} {detail} ({} ms)\n", r.id, r.ms));
        }
        let sum = self.summary();
        s.push_str(&format!("total {} passed {} failed {}\n", sum.total, sum.passed, sum.failed));
        s
    }
}

/// Reads the summary and cases back from a JSON report.
pub fn parse_json_report(text: &str) -> Result<(Vec<CaseRow>, Summary)> {
    let doc: ReportJson = serde_json::from_str(text).map_err(|e| MzvError::Syntax(e.to_string()))?;
    Ok((doc.cases, doc.summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Method;
    use crate::real::Precision;

    fn er(v: f64, e: f64) -> EvalResult {
        let p = Precision::DEFAULT;
        EvalResult::new(BigReal::from_f64(v, p), BigReal::from_f64(e, p), Method::Direct, 1)
    }

    #[test]
    fn judge_uses_larger_of_tolerance_and_errors() {
        let d = Duration::ZERO;
        assert!(VerdictRecord::judge("a".into(), "s", er(1.0, 0.0), er(1.0 + 1e-11, 0.0), 1e-10, d).pass);
        assert!(!VerdictRecord::judge("a".into(), "s", er(1.0, 0.0), er(1.0 + 1e-9, 0.0), 1e-10, d).pass);
        assert!(VerdictRecord::judge("a".into(), "s", er(1.0, 1e-8), er(1.0 + 1e-9, 0.0), 1e-10, d).pass);
        // a wide error bar cannot carry a large difference
        assert!(!VerdictRecord::judge("a".into(), "s", er(1.0, 1.0), er(1.01, 0.0), 1e-10, d).pass);
    }

    #[test]
    fn json_round_trip_keeps_summary() {
        let d = Duration::ZERO;
        let records = vec![
            VerdictRecord::judge("a".into(), "s", er(1.0, 0.0), er(1.0, 0.0), 1e-10, d),
            VerdictRecord::failed("b".into(), "s", &MzvError::Domain("x".into()), 1e-10, d),
        ];
        let config = ConfigSnapshot {
            precision: 192,
            options: TruncationOptions::default(),
            tolerance_scale: 1.0,
            selector: "s".into(),
            version: "0".into(),
        };
        let rep = Report { config, records };
        let (cases, summary) = parse_json_report(&rep.to_json()).unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(summary, Summary { total: 2, passed: 1, failed: 1 });
        let csv = rep.to_csv().unwrap();
        assert!(csv.starts_with("id,suite,lhs,lhs_err,rhs,rhs_err,diff,pass,ms"));
        assert_eq!(csv.lines().count(), 3);
    }
}
