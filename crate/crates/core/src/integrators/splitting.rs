use crate::error::Result;
use crate::field::{vector_field_full, SubSystem};
use crate::source::source_terms;
use crate::state::LagrangianState;

use super::{midpoint_substep, StepReport, StepperConfig};

/// Lie-Trotter step `Phi2_dt o Phi1_dt` with implicit midpoint sub-flows.
pub fn step_lie_trotter(state: &LagrangianState, cfg: &StepperConfig) -> Result<(LagrangianState, StepReport)> {
    step_lie_trotter_dt(state, cfg.dt, cfg)
}

pub fn step_lie_trotter_dt(
    state: &LagrangianState,
    dt: f64,
    cfg: &StepperConfig,
) -> Result<(LagrangianState, StepReport)> {
    let mut report = StepReport::default();
    let (s1, st1) = midpoint_substep(state, dt, SubSystem::G1, cfg)?;
    report.absorb(st1);
    let (s2, st2) = midpoint_substep(&s1, dt, SubSystem::G2, cfg)?;
    report.absorb(st2);
    Ok((s2, report))
}

/// Strang step `Phi1_{dt/2} o Phi2_dt o Phi1_{dt/2}`; symmetric, so `dt < 0` steps backwards.
pub fn step_strang(state: &LagrangianState, cfg: &StepperConfig) -> Result<(LagrangianState, StepReport)> {
    step_strang_dt(state, cfg.dt, cfg)
}

pub fn step_strang_dt(state: &LagrangianState, dt: f64, cfg: &StepperConfig) -> Result<(LagrangianState, StepReport)> {
    let mut report = StepReport::default();
    let (s1, st) = midpoint_substep(state, 0.5 * dt, SubSystem::G1, cfg)?;
    report.absorb(st);
    let (s2, st) = midpoint_substep(&s1, dt, SubSystem::G2, cfg)?;
    report.absorb(st);
    let (s3, st) = midpoint_substep(&s2, 0.5 * dt, SubSystem::G1, cfg)?;
    report.absorb(st);
    Ok((s3, report))
}

/// Forward Euler on the full field. Does not conserve the invariants.
pub fn step_explicit_euler(state: &LagrangianState, cfg: &StepperConfig) -> LagrangianState {
    step_explicit_euler_dt(state, cfg.dt).0
}

pub fn step_explicit_euler_dt(state: &LagrangianState, dt: f64) -> (LagrangianState, StepReport) {
    let (terms, fallback) = source_terms(state);
    let next = state.add_scaled(dt, &vector_field_full(state, &terms));
    (next, StepReport { fallback, ..StepReport::default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, Parameters};
    use crate::integrators::Scheme;

    #[test]
    fn zero_state_stays_zero() {
        let s = LagrangianState::zero(GridSpec::new(10, 0.2).unwrap(), Parameters::new(1.0).unwrap());
        let cfg = StepperConfig::new(0.3, Scheme::Strang);
        let (a, ra) = step_lie_trotter(&s, &cfg).unwrap();
        let (b, rb) = step_strang(&s, &cfg).unwrap();
        assert_eq!(a, s);
        assert_eq!(b, s);
        assert_eq!(step_explicit_euler(&s, &cfg), s);
        assert_eq!(ra.fp_iterations, vec![1, 1]);
        assert_eq!(rb.fp_iterations, vec![1, 1, 1]);
    }
}
