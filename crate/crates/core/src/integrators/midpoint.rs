use crate::error::{Error, Result};
use crate::field::{vector_field, SubSystem};
use crate::norm::{distance_f, norm_f};
use crate::source::source_terms;
use crate::state::LagrangianState;

use super::StepperConfig;

/// Relative size of the rounding noise in `distance_f` below which a
/// residual that no longer contracts counts as converged.
const ROUNDOFF_FLOOR: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstepStats {
    pub iterations: usize,
    pub residual: f64,
    pub fallback: bool,
}

/// One implicit midpoint step `Z = Y + dt G_k((Z + Y) / 2)` for a sub-system.
///
/// Solved by fixed-point iteration from `Z = Y`, with the source terms
/// recomputed at every midpoint iterate. Iteration stops once the residual
/// drops below `fp_tol`, or once it stops contracting at rounding level. Fields frozen by the sub-system are
/// copied through untouched.
pub fn midpoint_substep(
    state: &LagrangianState,
    dt: f64,
    which: SubSystem,
    cfg: &StepperConfig,
) -> Result<(LagrangianState, SubstepStats)> {
    let mut current = state.clone();
    let mut fallback = false;
    let mut residual = f64::INFINITY;
    let floor = ROUNDOFF_FLOOR * (1.0 + norm_f(state));
    for iteration in 1..=cfg.fp_max_iter {
        let mid = state.midpoint(&current);
        let (terms, fell_back) = source_terms(&mid);
        fallback |= fell_back;
        let t = vector_field(which, &mid, &terms);

        let mut next = state.clone();
        let advance = |dst: &mut Vec<f64>, rate: &[f64]| {
            dst.iter_mut().zip(rate).for_each(|(x, r)| *x += dt * r);
        };
        match which {
            SubSystem::G1 => {
                advance(&mut next.v, &t.v);
                advance(&mut next.w, &t.w);
                advance(&mut next.h, &t.h);
            }
            SubSystem::G2 => {
                advance(&mut next.zeta, &t.zeta);
                advance(&mut next.u, &t.u);
                advance(&mut next.energy, &t.energy);
                advance(&mut next.h, &t.h);
            }
        }

        let previous = residual;
        residual = distance_f(&next, &current)?;
        current = next;
        if !residual.is_finite() {
            break;
        }
        let stalled = residual <= floor && residual > 0.5 * previous;
        if residual <= cfg.fp_tol || stalled {
            return Ok((current, SubstepStats { iterations: iteration, residual, fallback }));
        }
    }
    Err(Error::FixedPointDiverged { iterations: cfg.fp_max_iter, residual })
}
