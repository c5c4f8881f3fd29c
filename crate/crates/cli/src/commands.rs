use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use rodwave::observables::{
    convergence_order, energy_density_points, exact_peakon_error, matched_graph_error, sup_graph_error, DiagnosticsRow,
    DEFAULT_Q_FLOOR,
};
use rodwave::{distance_f, evolve, Evolution, LagrangianState, RunSummary, Sample, Scheme, StepperConfig};
use serde::{Deserialize, Serialize};

use crate::config::{Axis, ExperimentConfig, Reference};
use crate::error::{CliError, CliResult};
use crate::output::{diagnostics_csv, graph_csv, snapshot_name, version, write_file, Manifest, Snapshot, DIAGNOSTICS};

/// Everything a run leaves behind, in memory and on disk.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub initial: LagrangianState,
    pub state: LagrangianState,
    pub summary: RunSummary,
    pub diagnostics: Vec<DiagnosticsRow>,
    /// `(t, max h/q)` over cells that are not concentrated.
    pub peak_energy_density: Vec<(f64, f64)>,
    pub manifest: Manifest,
}

pub fn max_energy_density(state: &LagrangianState) -> f64 {
    energy_density_points(state, DEFAULT_Q_FLOOR).iter().filter_map(|(_, d)| d.value()).fold(0.0, f64::max)
}

fn with_scheme(cfg: &ExperimentConfig, scheme: Scheme) -> ExperimentConfig {
    let mut cfg = cfg.clone();
    cfg.stepper.scheme = scheme;
    cfg
}

/// Runs `cfg.stepper.scheme` and writes snapshots, diagnostics and the manifest into `dir`.
pub fn run(cfg: &ExperimentConfig, dir: &Path) -> CliResult<RunOutcome> {
    let started = Instant::now();
    let initial = cfg.initial_state()?;
    let mut diagnostics = Vec::new();
    let mut peaks = Vec::new();
    let mut snapshots = Vec::new();
    let mut write_error = None;
    let mut observer = |s: &Sample<'_>| {
        diagnostics.push(DiagnosticsRow::from_sample(s));
        peaks.push((s.t, max_energy_density(s.state)));
        let file = snapshot_name(s.step);
        if write_error.is_none() {
            if let Err(e) = write_file(&dir.join(&file), &graph_csv(s.state)) {
                write_error = Some(e);
            }
        }
        snapshots.push(Snapshot { step: s.step, t: s.t, file });
    };
    let Evolution { state, summary, .. } =
        evolve(&initial, cfg.t_final, &cfg.stepper, cfg.stride, &mut [&mut observer])?;
    if let Some(e) = write_error {
        return Err(e);
    }
    write_file(&dir.join(DIAGNOSTICS), &diagnostics_csv(&diagnostics))?;
    let manifest = Manifest {
        version: version().to_string(),
        scheme: cfg.stepper.scheme,
        config: cfg.clone(),
        wall_time_s: started.elapsed().as_secs_f64(),
        summary: summary.into(),
        snapshots,
    };
    manifest.write(dir)?;
    log::info!("{}: {} steps in {:.2} s", cfg.name, summary.steps, manifest.wall_time_s);
    Ok(RunOutcome {
        dir: dir.to_path_buf(),
        initial,
        state,
        summary,
        diagnostics,
        peak_energy_density: peaks,
        manifest,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub scheme: Scheme,
    pub graph_error: f64,
    pub max_inv_drift: f64,
    pub min_q: f64,
    pub min_h: f64,
}

impl CompareRow {
    pub fn negative_q(&self) -> bool {
        self.min_q < 0.0
    }
}

#[derive(Debug, Clone)]
pub struct CompareOutcome {
    pub rows: Vec<CompareRow>,
    pub runs: Vec<RunOutcome>,
    pub reference_dt: f64,
}

pub const COMPARE_HEADER: &str = "scheme,graph_error,max_inv_drift,min_q,min_h,negative_q";

impl CompareOutcome {
    pub fn csv(&self) -> String {
        let mut out = format!("{COMPARE_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.6e},{:.6e},{:.6e},{:.6e},{}",
                r.scheme,
                r.graph_error,
                r.max_inv_drift,
                r.min_q,
                r.min_h,
                if r.negative_q() { "yes" } else { "no" }
            );
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out =
            format!("{:<16}{:>14}{:>14}{:>14}{:>14}  q<0\n", "scheme", "graph err", "inv drift", "min q", "min h");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<16}{:>14.4e}{:>14.4e}{:>14.4e}{:>14.4e}  {}",
                r.scheme.name(),
                r.graph_error,
                r.max_inv_drift,
                r.min_q,
                r.min_h,
                if r.negative_q() { "yes" } else { "no" }
            );
        }
        out
    }
}

/// Runs every scheme from the same initial data, each into `dir/<scheme>`,
/// and compares their final graphs to a Strang run with a small step.
pub fn compare(cfg: &ExperimentConfig, schemes: &[Scheme], dir: &Path) -> CliResult<CompareOutcome> {
    if schemes.is_empty() {
        return Err(CliError::Invalid("compare needs at least one scheme".into()));
    }
    let reference_dt = cfg.compare_dt.unwrap_or(cfg.stepper.dt / 10.0);
    let reference = || -> CliResult<LagrangianState> {
        let stepper = StepperConfig { dt: reference_dt, scheme: Scheme::Strang, ..cfg.stepper };
        Ok(evolve(&cfg.initial_state()?, cfg.t_final, &stepper, usize::MAX, &mut [])?.state)
    };
    let (reference, runs) = rayon::join(reference, || {
        schemes.par_iter().map(|&s| run(&with_scheme(cfg, s), &dir.join(s.name()))).collect::<CliResult<Vec<_>>>()
    });
    let (reference, runs) = (reference?, runs?);
    let rows = runs
        .iter()
        .map(|r| {
            Ok(CompareRow {
                scheme: r.manifest.scheme,
                graph_error: sup_graph_error(&r.state, &reference)?,
                max_inv_drift: r.summary.max_inv_drift,
                min_q: r.summary.min_q,
                min_h: r.summary.min_h,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let outcome = CompareOutcome { rows, runs, reference_dt };
    write_file(&dir.join("summary.csv"), &outcome.csv())?;
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeRow {
    pub scheme: Scheme,
    pub resolution: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeReport {
    pub axis: Axis,
    pub rows: Vec<ConvergeRow>,
    pub slopes: Vec<(Scheme, f64)>,
}

impl ConvergeReport {
    pub fn errors(&self, scheme: Scheme) -> Vec<(f64, f64)> {
        self.rows.iter().filter(|r| r.scheme == scheme).map(|r| (r.resolution, r.error)).collect()
    }

    pub fn slope(&self, scheme: Scheme) -> Option<f64> {
        self.slopes.iter().find(|(s, _)| *s == scheme).map(|(_, v)| *v)
    }

    /// Errors strictly decrease as the resolution is refined.
    pub fn monotone(&self, scheme: Scheme) -> bool {
        let mut e = self.errors(scheme);
        e.sort_by(|a, b| b.0.total_cmp(&a.0));
        e.windows(2).all(|w| w[1].1 < w[0].1)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("scheme,resolution,error\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{:.6e},{:.6e}", r.scheme, r.resolution, r.error);
        }
        out
    }

    pub fn table(&self) -> String {
        let label = match self.axis {
            Axis::Time => "dt",
            Axis::Space => "dxi",
        };
        let mut out = format!("{:<16}{:>12}{:>14}\n", "scheme", label, "error");
        for r in &self.rows {
            let _ = writeln!(out, "{:<16}{:>12}{:>14.4e}", r.scheme.name(), r.resolution, r.error);
        }
        for (s, slope) in &self.slopes {
            let _ = writeln!(out, "{:<16} slope {:.3}", s.name(), slope);
        }
        out
    }
}

fn member(
    cfg: &ExperimentConfig,
    axis: Axis,
    value: f64,
    dt_ratio: Option<f64>,
    scheme: Scheme,
) -> CliResult<LagrangianState> {
    let mut cfg = with_scheme(cfg, scheme);
    match axis {
        Axis::Time => cfg.stepper.dt = value,
        Axis::Space => {
            cfg.grid.dxi = value;
            if let Some(ratio) = dt_ratio {
                cfg.stepper.dt = ratio * value;
            }
        }
    }
    Ok(evolve(&cfg.initial_state()?, cfg.t_final, &cfg.stepper, usize::MAX, &mut [])?.state)
}

/// Error-versus-resolution sweep with a fitted log-log slope per scheme.
pub fn converge(cfg: &ExperimentConfig, schemes: &[Scheme], dir: &Path) -> CliResult<ConvergeReport> {
    let sweep =
        cfg.sweep.as_ref().ok_or_else(|| CliError::Invalid(format!("config '{}' has no sweep section", cfg.name)))?;
    if matches!((sweep.axis, sweep.reference), (Axis::Space, Reference::FineStep { .. })) {
        return Err(CliError::Invalid("a space sweep cannot use a fine_step reference".into()));
    }
    let mut values = sweep.values.clone();
    values.sort_by(|a, b| b.total_cmp(a));
    values.dedup();

    let jobs: Vec<(Scheme, f64)> = schemes.iter().flat_map(|&s| values.iter().map(move |&v| (s, v))).collect();
    let states =
        jobs.par_iter().map(|&(s, v)| member(cfg, sweep.axis, v, sweep.dt_ratio, s)).collect::<CliResult<Vec<_>>>()?;
    let reference = match sweep.reference {
        Reference::FineStep { dt } => Some(member(cfg, Axis::Time, dt, None, Scheme::Strang)?),
        _ => None,
    };

    let mut rows = Vec::new();
    for (&(scheme, value), state) in jobs.iter().zip(&states) {
        let finest = || {
            let idx = jobs.iter().rposition(|&(s, _)| s == scheme).expect("scheme has members");
            (jobs[idx].1, &states[idx])
        };
        let error = match sweep.reference {
            Reference::ExactPeakon { c, x0 } => exact_peakon_error(state, cfg.t_final, c, x0),
            Reference::FineStep { .. } => distance_f(state, reference.as_ref().expect("computed above"))?,
            Reference::Finest => {
                let (fine_value, fine) = finest();
                if fine_value == value {
                    continue;
                }
                match sweep.axis {
                    Axis::Time => distance_f(state, fine)?,
                    Axis::Space => matched_graph_error(state, fine)?,
                }
            }
        };
        rows.push(ConvergeRow { scheme, resolution: value, error });
    }
    let mut report = ConvergeReport { axis: sweep.axis, rows, slopes: Vec::new() };
    for &s in schemes {
        report.slopes.push((s, convergence_order(&report.errors(s))?));
    }
    write_file(&dir.join("converge.csv"), &report.csv())?;
    write_file(&dir.join("order.json"), &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    Ok(report)
}
