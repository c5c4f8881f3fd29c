use crate::error::Result;
use crate::invariants::invariants;
use crate::state::LagrangianState;

use super::{
    step_explicit_euler_dt, step_lie_trotter_dt, step_strang_dt, AdaptiveIntegrator, Scheme, StepReport, StepperConfig,
};

/// What an observer sees at an output time.
pub struct Sample<'a> {
    pub t: f64,
    pub step: usize,
    pub state: &'a LagrangianState,
    pub report: &'a StepReport,
    pub initial_invariants: &'a [f64],
}

pub trait Observer {
    fn observe(&mut self, sample: &Sample<'_>);
}

impl<F: FnMut(&Sample<'_>)> Observer for F {
    fn observe(&mut self, sample: &Sample<'_>) {
        self(sample)
    }
}

/// Extremes tracked over every step of a run, not only the observed ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub steps: usize,
    pub min_q: f64,
    pub min_h: f64,
    pub max_inv_drift: f64,
    pub max_fp_iterations: usize,
    pub fallback_steps: usize,
    pub rk_accepted: usize,
    pub rk_rejected: usize,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: LagrangianState,
    pub t: f64,
    pub summary: RunSummary,
}

/// Output times: `k dt` for `k = 1 .. floor(T/dt)`, plus `T` if it is not a multiple of `dt`.
fn schedule(t_final: f64, dt: f64) -> Vec<f64> {
    let ratio = t_final / dt;
    let full = (ratio + 1e-9).floor() as usize;
    let mut times: Vec<f64> = (1..=full).map(|k| k as f64 * dt).collect();
    if let Some(last) = times.last_mut() {
        if (t_final - *last).abs() <= 1e-9 * dt {
            *last = t_final;
        }
    }
    let reached = times.last().copied().unwrap_or(0.0);
    if t_final - reached > 1e-9 * dt {
        times.push(t_final);
    }
    times
}

/// Runs `cfg.scheme` to `t_final`, calling the observers at step 0, every
/// `stride` steps and at the final step.
pub fn evolve(
    initial: &LagrangianState,
    t_final: f64,
    cfg: &StepperConfig,
    stride: usize,
    observers: &mut [&mut dyn Observer],
) -> Result<Evolution> {
    cfg.validate()?;
    let stride = stride.max(1);
    let inv0 = invariants(initial);
    let q_min = |s: &LagrangianState| s.v.iter().fold(f64::INFINITY, |m, v| m.min(1.0 + v));
    let h_min = |s: &LagrangianState| s.h.iter().copied().fold(f64::INFINITY, f64::min);

    let mut summary = RunSummary {
        steps: 0,
        min_q: q_min(initial),
        min_h: h_min(initial),
        max_inv_drift: 0.0,
        max_fp_iterations: 0,
        fallback_steps: 0,
        rk_accepted: 0,
        rk_rejected: 0,
    };
    let mut state = initial.clone();
    let empty = StepReport::default();
    for obs in observers.iter_mut() {
        obs.observe(&Sample { t: 0.0, step: 0, state: &state, report: &empty, initial_invariants: &inv0 });
    }

    let times = if t_final > 0.0 { schedule(t_final, cfg.dt) } else { Vec::new() };
    let mut t = 0.0;
    let mut rk = (cfg.scheme == Scheme::AdaptiveRk).then(|| AdaptiveIntegrator::new(initial, 0.0, t_final, None, cfg));
    for (idx, &t_next) in times.iter().enumerate() {
        let dt = t_next - t;
        let (next, report) = match cfg.scheme {
            Scheme::LieTrotter => step_lie_trotter_dt(&state, dt, cfg)?,
            Scheme::Strang => step_strang_dt(&state, dt, cfg)?,
            Scheme::ExplicitEuler => step_explicit_euler_dt(&state, dt),
            Scheme::AdaptiveRk => {
                let integ = rk.as_mut().expect("created for the adaptive scheme");
                let (next, rep) = integ.advance_to(t_next)?;
                let report = StepReport {
                    accepted: rep.accepted,
                    rejected: rep.rejected,
                    min_q: Some(rep.min_q),
                    min_h: Some(rep.min_h),
                    ..StepReport::default()
                };
                (next, report)
            }
        };
        state = next;
        t = t_next;
        let step = idx + 1;

        summary.steps = step;
        summary.min_q = summary.min_q.min(q_min(&state)).min(report.min_q.unwrap_or(f64::INFINITY));
        summary.min_h = summary.min_h.min(h_min(&state)).min(report.min_h.unwrap_or(f64::INFINITY));
        let drift = invariants(&state).iter().zip(&inv0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        summary.max_inv_drift = summary.max_inv_drift.max(drift);
        summary.max_fp_iterations = summary.max_fp_iterations.max(report.max_fp_iterations());
        summary.fallback_steps += usize::from(report.fallback);
        summary.rk_accepted += report.accepted;
        summary.rk_rejected += report.rejected;

        if step % stride == 0 || step == times.len() {
            for obs in observers.iter_mut() {
                obs.observe(&Sample { t, step, state: &state, report: &report, initial_invariants: &inv0 });
            }
        }
    }
    if !times.is_empty() {
        state.refresh_h_plus();
    }
    Ok(Evolution { state, t, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, Parameters};

    #[test]
    fn schedule_handles_remainders() {
        assert_eq!(schedule(1.0, 0.25), vec![0.25, 0.5, 0.75, 1.0]);
        let s = schedule(1.0, 0.3);
        assert_eq!(s.len(), 4);
        assert_eq!(*s.last().unwrap(), 1.0);
        assert_eq!(schedule(5.0, 0.2).len(), 25);
        assert_eq!(*schedule(5.0, 0.2).last().unwrap(), 5.0);
    }

    #[test]
    fn zero_final_time_returns_input() {
        let s = LagrangianState::zero(GridSpec::new(4, 0.5).unwrap(), Parameters::new(1.0).unwrap());
        let mut calls = 0;
        let mut count = |_: &Sample<'_>| calls += 1;
        let out = evolve(&s, 0.0, &StepperConfig::new(0.1, Scheme::Strang), 1, &mut [&mut count]).unwrap();
        assert_eq!(out.summary.steps, 0);
        assert_eq!(out.state, s);
        assert_eq!(calls, 1);
    }
}
