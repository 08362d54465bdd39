//! Append-only run log, one JSON record per line.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simcore::{PlannerKind, TrajectoryReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub scenario_hash: String,
    pub planner: PlannerKind,
    pub motion_j: f64,
    pub comm_j: f64,
    pub total_j: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunRecord {
    pub fn from_report(report: &TrajectoryReport, timestamp: u64) -> Self {
        Self {
            scenario_hash: report.scenario_hash.clone(),
            planner: report.planner,
            motion_j: report.totals.motion_j,
            comm_j: report.totals.comm_j,
            total_j: report.totals.total_j,
            timestamp,
        }
    }
}

/// Appends one record for `report` to the log at `path`, creating it if needed.
pub fn persist_run(report: &TrajectoryReport, path: impl AsRef<Path>) -> Result<()> {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    append_record(&RunRecord::from_report(report, now), path)
}

pub fn append_record(rec: &RunRecord, path: impl AsRef<Path>) -> Result<()> {
    let mut line = serde_json::to_string(rec).map_err(|e| Error::Config(e.to_string()))?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    // single write so a record is never split across appends
    f.write_all(line.as_bytes())?;
    Ok(())
}

pub fn parse_run_log(text: &str) -> Result<Vec<RunRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::RunLog {
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

pub fn read_run_log(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let f = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::RunLog {
            line: i + 1,
            reason: e.to_string(),
        })?);
    }
    Ok(out)
}
