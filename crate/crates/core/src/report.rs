//! Run reports: CSV tables and a JSON summary, both byte-deterministic.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::config::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    UpperBoundOnly,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    pub fn pass_if(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self::new(name, status, detail)
    }
}

/// One CSV table with a fixed column order.
#[derive(Debug, Clone)]
pub struct Table {
    pub file: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file: &str, title: &str, columns: &[&str]) -> Self {
        Table {
            file: file.to_string(),
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "{}", self.file);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableInfo {
    pub file: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: usize,
}

/// Everything a command produced. Timing is kept out of the serialized form
/// so that reruns are byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config: ScenarioConfig,
    pub conventions: Vec<String>,
    pub checks: Vec<Check>,
    pub tables: Vec<TableInfo>,
    pub details: serde_json::Map<String, Value>,
    #[serde(skip)]
    pub csv: Vec<Table>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

pub const CONVENTIONS: &[&str] = &[
    "minors: row and column indices ascending, plain determinant, no complementary sign",
    "roots of unity: compatible system with zeta_{p^(n+1)}^p = zeta_{p^n}",
    "zero threshold: a value with valuation >= tau is reported as zero",
    "symbolic zero: identically zero, or divisible by Phi_{p^r}(1+X) or Phi_{p^s}(1+Y)",
];

impl RunReport {
    pub fn new(command: &str, config: &ScenarioConfig) -> Self {
        let mut echo = config.clone();
        echo.out_dir = None;
        RunReport {
            tool: "iwalog".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed: config.seed,
            config: echo,
            conventions: CONVENTIONS.iter().map(|s| s.to_string()).collect(),
            checks: Vec::new(),
            tables: Vec::new(),
            details: serde_json::Map::new(),
            csv: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn add_table(&mut self, t: Table) {
        self.tables.push(TableInfo {
            file: t.file.clone(),
            title: t.title.clone(),
            columns: t.columns.clone(),
            rows: t.rows.len(),
        });
        self.csv.push(t);
    }

    pub fn detail<T: Serialize>(&mut self, key: &str, v: &T) {
        let v = serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self.details.insert(key.to_string(), v);
    }

    pub fn worst(&self) -> CheckStatus {
        self.checks.iter().map(|c| c.status).max().unwrap_or(CheckStatus::Pass)
    }

    /// 0 when every check passed, 1 on any failure, 3 when the worst outcome
    /// is an upper-bound-only result.
    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            CheckStatus::Pass => 0,
            CheckStatus::Fail => 1,
            CheckStatus::UpperBoundOnly => 3,
        }
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Write every table and `summary.json` into `dir`; returns the paths.
    pub fn emit(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for t in &self.csv {
            let path = dir.join(&t.file);
            fs::write(&path, t.to_csv()?)?;
            out.push(path);
        }
        let path = dir.join("summary.json");
        fs::write(&path, self.summary_json())?;
        out.push(path);
        Ok(out)
    }
}
