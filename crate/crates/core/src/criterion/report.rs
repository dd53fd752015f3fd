//! Certificate reports and their serialization.
//!
//! JSON output goes through `serde_json::Value`, whose maps are ordered, so
//! keys are sorted and repeated runs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hausdorff::TableOutcome;
use crate::scalars::{format_rational, Domain, Scalar, SignVerdict, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

/// Significant digits for float values in reports.
pub const REPORT_DIGITS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertMode {
    Moment,
    Derivative,
    ShiftedEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

impl Outcome {
    /// Process exit status: 0 PASS, 2 FAIL, 3 INDETERMINATE.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 2,
            Outcome::Indeterminate => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Indeterminate => "INDETERMINATE",
        }
    }
}

impl From<TableOutcome> for Outcome {
    fn from(t: TableOutcome) -> Self {
        match t {
            TableOutcome::Pass => Outcome::Pass,
            TableOutcome::Fail => Outcome::Fail,
            TableOutcome::Indeterminate => Outcome::Indeterminate,
        }
    }
}

/// A scalar rendered for reports: exact `p/q` or a fixed-width decimal.
pub fn render(x: &Scalar) -> String {
    match x {
        Scalar::Rational(q) => format_rational(q),
        other => other
            .decimal(REPORT_DIGITS)
            .unwrap_or_else(|| other.encode()),
    }
}

/// The `lambda` or `rho` used by a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: String,
    /// Exact rational actually used in exact runs.
    pub exact: Option<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub j: usize,
    pub k: usize,
    pub value: String,
    pub verdict: Verdict,
    pub margin: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRef {
    pub j: usize,
    pub k: usize,
    pub verdict: Verdict,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionInfo {
    pub id: String,
    pub kind: String,
    pub coefficient_mode: Option<String>,
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: u32,
    pub function: FunctionInfo,
    pub mode: CertMode,
    pub lambda: Option<BoundValue>,
    pub rho: Option<BoundValue>,
    pub grid_bound: usize,
    /// `None` for exact runs.
    pub precision_bits: Option<u32>,
    pub domain: Domain,
    pub cells: Vec<CellRecord>,
    pub verdict: Outcome,
    /// Human-readable scope of the verdict.
    pub statement: String,
    pub failures: Vec<CellRef>,
    /// The cell closest to failing.
    pub min_margin: Option<CellRef>,
    pub metadata: BTreeMap<String, Value>,
    pub timestamp: Option<String>,
    pub config: Value,
}

pub fn statement(outcome: Outcome, bound: usize, failures: usize) -> String {
    match outcome {
        Outcome::Pass => format!(
            "BOUNDED-PASS: bounded certificate to j+k <= {bound}; every cell is nonnegative, which is evidence, not a proof, beyond this range"
        ),
        Outcome::Fail => format!("FAIL: {failures} cell(s) with j+k <= {bound} are NEGATIVE"),
        Outcome::Indeterminate => {
            format!("INDETERMINATE: {failures} cell(s) with j+k <= {bound} could not be decided at this precision")
        }
    }
}

/// Builds cell records from a triangular table. `judged[j][k]` is the value
/// whose sign was decided (for the derivative form, the negated cell).
pub(crate) fn records(
    cells: &[Vec<Scalar>],
    verdicts: &[Vec<SignVerdict>],
    judged: &[Vec<Scalar>],
) -> (Vec<CellRecord>, Vec<CellRef>, Option<CellRef>) {
    let mut out = Vec::new();
    let mut failures = Vec::new();
    let mut best: Option<(f64, CellRef)> = None;
    for (j, row) in cells.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            let v = &verdicts[j][k];
            let value = render(x);
            let r = CellRef {
                j,
                k,
                verdict: v.verdict,
                value: value.clone(),
            };
            if v.verdict != Verdict::Nonnegative {
                failures.push(r.clone());
            }
            let key = judged[j][k].to_f64().unwrap_or(f64::NAN);
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                best = Some((key, r));
            }
            out.push(CellRecord {
                j,
                k,
                value,
                verdict: v.verdict,
                margin: v.margin.decimal(6).unwrap_or_default(),
            });
        }
    }
    (out, failures, best.map(|(_, r)| r))
}

impl CertificateReport {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report is serializable")
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError(format!("report: {e}")))
    }

    /// One row per `j`, one column per `k`: `value:N|-|?`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j");
        for k in 0..=self.grid_bound {
            let _ = write!(out, ",k{k}");
        }
        out.push('\n');
        for j in 0..=self.grid_bound {
            let _ = write!(out, "{j}");
            for c in self.cells.iter().filter(|c| c.j == j) {
                let letter = match c.verdict {
                    Verdict::Nonnegative => "N",
                    Verdict::Negative => "-",
                    Verdict::Indeterminate => "?",
                };
                let _ = write!(out, ",{}:{letter}", c.value);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Both,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "both" => Ok(ReportFormat::Both),
            _ => Err(Error::ParseError(format!("unknown format '{s}'"))),
        }
    }
}

/// Writes the report to `path` (JSON) and/or `path` with a `.csv`
/// extension. Returns the files written.
pub fn emit_report(
    report: &CertificateReport,
    format: ReportFormat,
    path: &Path,
) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if matches!(format, ReportFormat::Json | ReportFormat::Both) {
        let p = if format == ReportFormat::Both {
            path.with_extension("json")
        } else {
            path.to_path_buf()
        };
        std::fs::write(&p, report.to_json())?;
        written.push(p);
    }
    if matches!(format, ReportFormat::Csv | ReportFormat::Both) {
        let p = if format == ReportFormat::Both {
            path.with_extension("csv")
        } else {
            path.to_path_buf()
        };
        std::fs::write(&p, report.to_csv())?;
        written.push(p);
    }
    Ok(written)
}
