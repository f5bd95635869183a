//! Machine-readable verification reports in JSON and CSV.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Direction of the comparison between measured value and tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// Residual must not exceed the tolerance.
    #[serde(rename = "<=")]
    AtMost,
    /// Quantity must reach the threshold.
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    fn symbol(&self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, in words.
    pub anchor: String,
    /// None when the computation produced no finite value.
    pub measured: Option<f64>,
    pub relation: Relation,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    /// Computed quantities worth reporting alongside the checks.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(suite: &str, seed: u64) -> Self {
        Report { schema_version: SCHEMA_VERSION, suite: suite.to_string(), seed, records: Vec::new(), values: BTreeMap::new() }
    }

    fn record(&mut self, id: &str, anchor: &str, measured: f64, relation: Relation, tolerance: f64) {
        let finite = measured.is_finite();
        let pass = finite
            && match relation {
                Relation::AtMost => measured <= tolerance,
                Relation::AtLeast => measured >= tolerance,
            };
        self.records.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            measured: finite.then_some(measured),
            relation,
            tolerance,
            pass,
        });
    }

    /// Residual check: passes when measured <= tolerance.
    pub fn at_most(&mut self, id: &str, anchor: &str, measured: f64, tolerance: f64) {
        self.record(id, anchor, measured, Relation::AtMost, tolerance);
    }

    /// Threshold check: passes when measured >= threshold.
    pub fn at_least(&mut self, id: &str, anchor: &str, measured: f64, threshold: f64) {
        self.record(id, anchor, measured, Relation::AtLeast, threshold);
    }

    /// Records a failed computation as a failing check.
    pub fn failed(&mut self, id: &str, anchor: &str, err: &Error) {
        self.record(id, &format!("{anchor} ({err})"), f64::NAN, Relation::AtMost, 0.0);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        self.values.extend(other.values);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown report format `{}`", s.escape_debug()))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CsvRow<'a> {
    schema_version: u32,
    suite: &'a str,
    seed: u64,
    id: &'a str,
    anchor: &'a str,
    measured: Option<f64>,
    relation: &'a str,
    tolerance: f64,
    pass: bool,
}

/// One header row, then one row per record.
pub fn to_csv(report: &Report) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
    if report.records.is_empty() {
        w.write_record(["schema_version", "suite", "seed", "id", "anchor", "measured", "relation", "tolerance", "pass"])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    for r in &report.records {
        w.serialize(CsvRow {
            schema_version: report.schema_version,
            suite: &report.suite,
            seed: report.seed,
            id: &r.id,
            anchor: &r.anchor,
            measured: r.measured,
            relation: r.relation.symbol(),
            tolerance: r.tolerance,
            pass: r.pass,
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(report)),
        Format::Csv => to_csv(report),
    }
}

/// Writes `<dir>/<suite>.<ext>`, creating the directory if needed.
pub fn emit_report(report: &Report, format: Format, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.{}", report.suite, format.extension()));
    std::fs::write(&path, render(report, format)?)?;
    Ok(path)
}

pub fn parse_report_json(text: &str) -> Result<Report> {
    let r: Report = serde_json::from_str(text).map_err(|e| Error::Config(format!("report: {e}")))?;
    if r.schema_version != SCHEMA_VERSION {
        return Err(Error::Config(format!("report schema version {} is not {SCHEMA_VERSION}", r.schema_version)));
    }
    for rec in &r.records {
        if !(rec.tolerance.is_finite()) {
            return Err(Error::Config(format!("record `{}` has a non-finite tolerance", rec.id.escape_debug())));
        }
    }
    Ok(r)
}
