//! Report assembly and file emission.
//!
//! Every experiment produces one flat JSON object
//! `{experiment, config, results, tolerances, verdict}` (serde_json maps
//! are ordered, so identical inputs give identical bytes) and optionally
//! a CSV table: comma separators, `.` decimal point, one header row, LF
//! line endings, floats at 17 significant digits unless a column opts
//! into paper-compatible rounding. Files are written atomically through
//! a sibling temp file and rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

/// Format a float at 17 significant digits, round-trip exact.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One experiment report.
pub struct Report {
    pub experiment: &'static str,
    pub config: Value,
    pub results: Value,
    pub tolerances: Value,
    pub verdict: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("experiment".into(), Value::String(self.experiment.into()));
        map.insert("config".into(), self.config.clone());
        map.insert("results".into(), self.results.clone());
        map.insert("tolerances".into(), self.tolerances.clone());
        map.insert(
            "verdict".into(),
            Value::String(if self.verdict { "pass" } else { "fail" }.into()),
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        text.push('\n');
        text
    }
}

/// CSV table with explicit header.
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Write atomically: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let tmp: PathBuf = {
        let mut name = path.file_name().unwrap_or_default().to_os_string();
        name.push(format!(".tmp.{}", std::process::id()));
        path.with_file_name(name)
    };
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)
}
