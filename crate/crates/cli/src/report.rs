use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// conjecture-grade output, never a failure
    Report,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Report => "INFO",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub campaign: String,
    pub name: String,
    pub cell: String,
    pub status: Status,
    pub summary: String,
    pub values: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn new(campaign: &str, name: &str, cell: String) -> Self {
        Check {
            campaign: campaign.into(),
            name: name.into(),
            cell,
            status: Status::Pass,
            summary: String::new(),
            values: Value::Null,
            elapsed: Duration::ZERO,
        }
    }

    pub fn status(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn report(mut self) -> Self {
        self.status = Status::Report;
        self
    }

    pub fn skip(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Skip;
        self.summary = why.into();
        self
    }

    pub fn summary(mut self, s: impl Into<String>) -> Self {
        self.summary = s.into();
        self
    }

    pub fn values<T: Serialize>(mut self, v: &T) -> Self {
        self.values = serde_json::to_value(v).unwrap_or(Value::Null);
        self
    }
}

/// Runs `f`, stamping the elapsed time and turning engine errors into failures.
pub fn timed(
    campaign: &str,
    name: &str,
    cell: String,
    f: impl FnOnce(Check) -> prinspace::Result<Check>,
) -> Check {
    let start = Instant::now();
    let base = Check::new(campaign, name, cell.clone());
    let mut c = match f(base) {
        Ok(c) => c,
        Err(e) => Check::new(campaign, name, cell).status(false).summary(format!("error: {e}")),
    };
    c.elapsed = start.elapsed();
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reports: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub ok: bool,
    /// extra tabular payload for CSV output, e.g. character coefficients
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
    #[serde(skip)]
    pub table_header: Vec<String>,
}

impl Report {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, seed: u64, checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary =
            Summary { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skip), reports: count(Status::Report) };
        Report {
            report_version: REPORT_VERSION,
            command: command.into(),
            parameters,
            seed,
            ok: summary.failed == 0,
            checks,
            summary,
            table: Vec::new(),
            table_header: Vec::new(),
        }
    }

    pub fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} [{}] seed={}", self.command, params.join(" "), self.seed)?;
        let width = self.checks.iter().map(|c| c.campaign.len() + c.name.len() + c.cell.len() + 2).max().unwrap_or(0);
        let mut total = Duration::ZERO;
        for c in &self.checks {
            total += c.elapsed;
            let label = format!("{} {} {}", c.campaign, c.name, c.cell);
            writeln!(
                out,
                "{} {label:<width$}  {} ({:.3}s)",
                c.status.label(),
                c.summary,
                c.elapsed.as_secs_f64()
            )?;
        }
        let s = &self.summary;
        writeln!(
            out,
            "{} passed, {} failed, {} skipped, {} reports; cpu {:.2}s",
            s.passed,
            s.failed,
            s.skipped,
            s.reports,
            total.as_secs_f64()
        )
    }

    pub fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.table.is_empty() {
            w.write_record(["campaign", "name", "cell", "status", "summary"])?;
            for c in &self.checks {
                let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                w.write_record([&c.campaign, &c.name, &c.cell, &status, &c.summary])?;
            }
        } else {
            w.write_record(&self.table_header)?;
            for row in &self.table {
                w.write_record(row)?;
            }
        }
        w.flush()
    }
}
