//! Construction of admissible discrete initial states.
//!
//! Two routes exist. The generic route maps an Eulerian profile `u0` to
//! Lagrangian variables by solving `y + int_{-inf}^{y} (u0^2 + u0x^2) dx = xi`
//! on a fine label grid and then averages onto the cells. The traveling-wave
//! constructors use a relabeled representation instead (`y = xi`, `q = 1`
//! for smooth waves and peakons, a smoothing relabeling for the cuspon).

mod cuspon;
mod eulerian;
mod peakon;
mod quad;
mod smooth;

use serde::{Deserialize, Serialize};

use crate::grid::{GridSpec, Parameters};
use crate::state::LagrangianState;

pub use cuspon::{make_cuspon, CusponProfile, CusponSample, DEFAULT_BLEND};
pub use eulerian::{
    eulerian_to_lagrangian, gaussian_derivative_profile, make_gaussian_derivative, project_to_grid, EulerianProfile,
    FineGrid, FineLagrangian,
};
pub use peakon::{make_peakon, make_peakon_train, peakon_train_eval};
pub use quad::adaptive_simpson;
pub use smooth::{make_smooth_tw, SmoothProfile};

/// Parameters of a decaying traveling wave `u(x - ct)` with `u_x^2 = F(u)`,
///
/// `F(u) = (M - u)(u - m)(u - z) / (c - gamma u)`, `z = c - M - m`, `m = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TravelingWaveSpec {
    pub gamma: f64,
    pub c: f64,
    /// Maximum amplitude `M`.
    pub m_max: f64,
    /// Crest position at `t = 0`.
    #[serde(default)]
    pub x0: f64,
    /// Cuspon blend interval `(a, b)`; defaults to `(0.2, 0.5) * sqrt(c / gamma)`.
    #[serde(default)]
    pub blend: Option<(f64, f64)>,
}

impl TravelingWaveSpec {
    pub fn new(gamma: f64, c: f64) -> Self {
        Self { gamma, c, m_max: c, x0: 0.0, blend: None }
    }

    pub fn z(&self) -> f64 {
        self.c - self.m_max
    }

    /// `F(u)` of the traveling-wave ODE.
    pub fn f(&self, u: f64) -> f64 {
        (self.m_max - u) * u * (u - self.z()) / (self.c - self.gamma * u)
    }

    /// `F'(u)`.
    pub fn df(&self, u: f64) -> f64 {
        let (m, z) = (self.m_max, self.z());
        let num = (m - u) * u * (u - z);
        let dnum = -u * (u - z) + (m - u) * (u - z) + (m - u) * u;
        let den = self.c - self.gamma * u;
        (dnum * den + self.gamma * num) / (den * den)
    }
}

/// Builds the `y = xi`, `q = 1` representation from `(U, w, h)` samples at the nodes.
pub(crate) fn assemble_relabeled(
    grid: GridSpec,
    params: Parameters,
    samples: impl Iterator<Item = (f64, f64, f64)>,
) -> LagrangianState {
    let mut s = LagrangianState::zero(grid, params);
    for (k, (u, w, h)) in samples.enumerate() {
        s.u[k] = u;
        s.w[k] = w;
        s.h[k] = h;
    }
    fill_cumulative_energy(&mut s);
    s
}

/// `H_i = dxi * sum_{j < i} h_j` and `H_inf` = total.
pub(crate) fn fill_cumulative_energy(s: &mut LagrangianState) {
    let dxi = s.grid.dxi();
    let mut acc = 0.0;
    for k in 0..s.cells() {
        s.energy[k] = acc;
        acc += dxi * s.h[k];
    }
    s.h_plus = acc;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_f_matches_finite_difference() {
        for spec in [TravelingWaveSpec::new(0.2, 1.0), TravelingWaveSpec::new(5.0, 1.0)] {
            let top = if spec.gamma > 1.0 { spec.c / spec.gamma } else { spec.m_max };
            for i in 1..20 {
                let u = top * i as f64 / 21.0;
                let eps = 1e-6;
                let fd = (spec.f(u + eps) - spec.f(u - eps)) / (2.0 * eps);
                assert!((fd - spec.df(u)).abs() < 1e-7 * (1.0 + fd.abs()), "u = {u}");
            }
        }
    }
}
