//! Eulerian reconstruction, error metrics and run diagnostics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrators::{Observer, Sample};
use crate::invariants::max_invariant_drift;
use crate::state::LagrangianState;

/// Below this `q` a cell is reported as an energy concentration.
pub const DEFAULT_Q_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphPoint {
    pub x: f64,
    pub u: f64,
    pub concentrated: bool,
}

/// Point set `(y_i, U_i)`; the graph of `u(t, .)` when `q >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerianGraph {
    pub points: Vec<GraphPoint>,
}

impl EulerianGraph {
    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn us(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.u).collect()
    }
}

pub fn to_graph(state: &LagrangianState) -> EulerianGraph {
    let points = (0..state.cells())
        .map(|k| GraphPoint { x: state.y(k), u: state.u[k], concentrated: state.q(k) < DEFAULT_Q_FLOOR })
        .collect();
    EulerianGraph { points }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Density {
    Value(f64),
    Concentrated,
}

impl Density {
    pub fn value(self) -> Option<f64> {
        match self {
            Density::Value(v) => Some(v),
            Density::Concentrated => None,
        }
    }
}

fn density_points(state: &LagrangianState, q_floor: f64, f: impl Fn(usize, f64) -> f64) -> Vec<(f64, Density)> {
    (0..state.cells())
        .map(|k| {
            let q = state.q(k);
            let d = if q >= q_floor { Density::Value(f(k, q)) } else { Density::Concentrated };
            (state.y(k), d)
        })
        .collect()
}

/// `(y_i, h_i / q_i)`, the Eulerian energy density `u^2 + u_x^2`.
pub fn energy_density_points(state: &LagrangianState, q_floor: f64) -> Vec<(f64, Density)> {
    density_points(state, q_floor, |k, q| state.h[k] / q)
}

/// `(y_i, 1 / q_i)`, the particle density.
pub fn particle_density_points(state: &LagrangianState, q_floor: f64) -> Vec<(f64, Density)> {
    density_points(state, q_floor, |_, q| 1.0 / q)
}

/// `max_i |(y_a, U_a) - (y_b, U_b)|` over matching cells.
pub fn sup_graph_error(a: &LagrangianState, b: &LagrangianState) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    Ok((0..a.cells()).map(|k| (a.y(k) - b.y(k)).hypot(a.u[k] - b.u[k])).fold(0.0, f64::max))
}

/// Graph error of a coarse state against a finer one on the same domain,
/// matching each coarse node to the nearest fine node.
pub fn matched_graph_error(coarse: &LagrangianState, fine: &LagrangianState) -> Result<f64> {
    let (gc, gf) = (coarse.grid, fine.grid);
    if (gc.r() - gf.r()).abs() > 1e-9 * gc.r() || gf.dxi() > gc.dxi() * (1.0 + 1e-12) {
        return Err(Error::GridMismatch);
    }
    let last = gf.cells() - 1;
    Ok((0..coarse.cells())
        .map(|k| {
            let j = ((gc.xi(k) + gf.r()) / gf.dxi()).round().clamp(0.0, last as f64) as usize;
            (coarse.y(k) - fine.y(j)).hypot(coarse.u[k] - fine.u[j])
        })
        .fold(0.0, f64::max))
}

/// `max_i |U_i - c exp(-|y_i - x0 - c t|)|`.
pub fn exact_peakon_error(state: &LagrangianState, t: f64, c: f64, x0: f64) -> f64 {
    (0..state.cells()).map(|k| (state.u[k] - c * (-(state.y(k) - x0 - c * t).abs()).exp()).abs()).fold(0.0, f64::max)
}

/// Least-squares slope of `log(error)` against `log(resolution)`.
pub fn convergence_order(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 || points.iter().any(|&(r, e)| !(r > 0.0 && e > 0.0 && r.is_finite() && e.is_finite())) {
        return Err(Error::DegenerateFit);
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(r, e)| (r.ln(), e.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-24 {
        return Err(Error::DegenerateFit);
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub total_energy: f64,
    pub min_q: f64,
    pub min_h: f64,
    pub max_inv_drift: f64,
    pub fp_iters_max: usize,
}

impl DiagnosticsRow {
    pub const HEADER: &'static str = "t,total_energy,min_q,min_h,max_inv_drift,fp_iters_max";

    pub fn from_sample(sample: &Sample<'_>) -> Self {
        let s = sample.state;
        Self {
            t: sample.t,
            total_energy: s.total_energy(),
            min_q: s.v.iter().fold(f64::INFINITY, |m, v| m.min(1.0 + v)),
            min_h: s.h.iter().copied().fold(f64::INFINITY, f64::min),
            max_inv_drift: max_invariant_drift(sample.initial_invariants, s),
            fp_iters_max: sample.report.max_fp_iterations(),
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.6e},{}",
            self.t, self.total_energy, self.min_q, self.min_h, self.max_inv_drift, self.fp_iters_max
        )
    }
}

/// Observer that keeps one [`DiagnosticsRow`] per observed time.
#[derive(Debug, Clone, Default)]
pub struct DiagnosticsRecorder {
    pub rows: Vec<DiagnosticsRow>,
}

impl Observer for DiagnosticsRecorder {
    fn observe(&mut self, sample: &Sample<'_>) {
        self.rows.push(DiagnosticsRow::from_sample(sample));
    }
}
