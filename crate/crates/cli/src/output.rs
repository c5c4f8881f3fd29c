//! CSV and manifest files of a run.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rodwave::observables::DiagnosticsRow;
use rodwave::{invariants, LagrangianState, RunSummary, Scheme};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{io_err, CliError, CliResult};

pub const GRAPH_HEADER: &str = "xi,y,U,q,w,h,I";
pub const MANIFEST: &str = "manifest.json";
pub const DIAGNOSTICS: &str = "diagnostics.csv";

pub fn graph_csv(state: &LagrangianState) -> String {
    let inv = invariants(state);
    let mut out = String::with_capacity(state.cells() * 150);
    out.push_str(GRAPH_HEADER);
    out.push('\n');
    for k in 0..state.cells() {
        let _ = writeln!(
            out,
            "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}",
            state.grid.xi(k),
            state.y(k),
            state.u[k],
            state.q(k),
            state.w[k],
            state.h[k],
            inv[k]
        );
    }
    out
}

pub fn diagnostics_csv(rows: &[DiagnosticsRow]) -> String {
    let mut out = String::from(DiagnosticsRow::HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv());
        out.push('\n');
    }
    out
}

pub fn snapshot_name(step: usize) -> String {
    format!("graph_{step:06}.csv")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub file: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub steps: usize,
    pub min_q: f64,
    pub min_h: f64,
    pub max_inv_drift: f64,
    pub max_fp_iterations: usize,
    pub fallback_steps: usize,
    pub rk_accepted: usize,
    pub rk_rejected: usize,
}

impl From<RunSummary> for SummaryRecord {
    fn from(s: RunSummary) -> Self {
        Self {
            steps: s.steps,
            min_q: s.min_q,
            min_h: s.min_h,
            max_inv_drift: s.max_inv_drift,
            max_fp_iterations: s.max_fp_iterations,
            fallback_steps: s.fallback_steps,
            rk_accepted: s.rk_accepted,
            rk_rejected: s.rk_rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub scheme: Scheme,
    pub config: ExperimentConfig,
    pub wall_time_s: f64,
    pub summary: SummaryRecord,
    pub snapshots: Vec<Snapshot>,
}

impl Manifest {
    pub fn read(dir: &Path) -> CliResult<Self> {
        let path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&path).map_err(|_| CliError::MissingArtifacts(dir.display().to_string()))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config { path: path.display().to_string(), message: e.to_string() })
    }

    pub fn write(&self, dir: &Path) -> CliResult<PathBuf> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        write_file(&dir.join(MANIFEST), &text)
    }
}

pub fn version() -> &'static str {
    env!("RODWAVE_VERSION")
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<PathBuf> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    std::fs::write(path, contents).map_err(io_err(path))?;
    Ok(path.to_path_buf())
}
