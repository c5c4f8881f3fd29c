//! Per-cell invariants and the admissibility check.

use serde::{Deserialize, Serialize};

use crate::state::LagrangianState;

/// Default slack for admissibility checks.
pub const DEFAULT_ADMISSIBLE_TOL: f64 = 1e-10;

/// `I_i = U_i^2 q_i^2 + w_i^2 - q_i h_i`, conserved by the semi-discrete flow.
pub fn invariants(state: &LagrangianState) -> Vec<f64> {
    (0..state.cells())
        .map(|k| {
            let (u, w, h, q) = (state.u[k], state.w[k], state.h[k], state.q(k));
            u * u * q * q + w * w - q * h
        })
        .collect()
}

/// Largest per-cell change of the invariants between two states.
pub fn max_invariant_drift(before: &[f64], after: &LagrangianState) -> f64 {
    invariants(after).iter().zip(before).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    NegativeQ,
    NegativeH,
    Floor,
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub cell: i64,
    pub kind: ViolationKind,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Lists every cell that leaves the admissible set:
/// `q >= 0`, `h >= 0`, `q + h >= c_floor` and `q h >= U^2 q^2 + w^2`, each up to `tol`.
pub fn check_admissible(state: &LagrangianState, c_floor: f64, tol: f64) -> AdmissibilityReport {
    let inv = invariants(state);
    let mut violations = Vec::new();
    for k in 0..state.cells() {
        let cell = state.grid.index(k);
        let (q, h) = (state.q(k), state.h[k]);
        if q < -tol {
            violations.push(Violation { cell, kind: ViolationKind::NegativeQ, value: q });
        }
        if h < -tol {
            violations.push(Violation { cell, kind: ViolationKind::NegativeH, value: h });
        }
        if q + h < c_floor - tol {
            violations.push(Violation { cell, kind: ViolationKind::Floor, value: q + h });
        }
        // I > 0 means q h < U^2 q^2 + w^2
        if inv[k] > tol {
            violations.push(Violation { cell, kind: ViolationKind::Invariant, value: inv[k] });
        }
    }
    AdmissibilityReport { violations }
}

/// Half of the smallest `q + h`, the floor used to certify constructed data.
pub fn natural_floor(state: &LagrangianState) -> f64 {
    0.5 * (0..state.cells()).map(|k| state.q(k) + state.h[k]).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, Parameters};

    fn zero() -> LagrangianState {
        LagrangianState::zero(GridSpec::new(3, 0.5).unwrap(), Parameters::new(1.0).unwrap())
    }

    #[test]
    fn peakon_type_cell_has_zero_invariant() {
        let mut s = zero();
        s.u[2] = 0.7;
        s.w[2] = -0.3;
        s.h[2] = 0.7 * 0.7 + 0.3 * 0.3;
        assert!(invariants(&s)[2].abs() < 1e-16);
    }

    #[test]
    fn empty_cell_invariant_is_w_squared() {
        let mut s = zero();
        s.v[1] = -1.0;
        s.w[1] = 0.4;
        s.h[1] = 3.0;
        s.u[1] = 5.0;
        assert_eq!(invariants(&s)[1], 0.4 * 0.4);
    }

    #[test]
    fn negative_q_is_reported_once() {
        let mut s = zero();
        s.v[4] = -1.1;
        s.h[4] = 1.0;
        let r = check_admissible(&s, 0.5, DEFAULT_ADMISSIBLE_TOL);
        assert_eq!(r.count(ViolationKind::NegativeQ), 1);
        assert_eq!(r.violations[0].cell, 1);
    }

    #[test]
    fn degenerate_cell_breaks_floor() {
        let mut s = zero();
        s.v[0] = -1.0;
        let r = check_admissible(&s, 0.5, DEFAULT_ADMISSIBLE_TOL);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::Floor);
    }

    #[test]
    fn zero_state_is_admissible() {
        assert!(check_admissible(&zero(), 0.5, DEFAULT_ADMISSIBLE_TOL).is_empty());
    }
}
