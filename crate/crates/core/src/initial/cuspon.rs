//! Cuspon for `gamma > 1`, built through a smoothing relabeling.
//!
//! `U(xi) = chi1 (c/gamma - xi^2) + chi2 (c/gamma) exp(-sqrt(M/c) xi)` on
//! `xi >= 0`, `y = x0 + g(U)` with `g(u) = int_u^{c/gamma} dz / sqrt(F(z))`,
//! extended by parity.

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Parameters};
use crate::state::LagrangianState;

use super::{adaptive_simpson, fill_cumulative_energy, TravelingWaveSpec};

const QUAD_TOL: f64 = 1e-11;

/// Default blend interval as multiples of `sqrt(c / gamma)`.
pub const DEFAULT_BLEND: (f64, f64) = (0.2, 0.5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CusponProfile {
    pub spec: TravelingWaveSpec,
    pub a: f64,
    pub b: f64,
    top: f64,
    kappa: f64,
}

/// Point values of the construction at one `xi >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CusponSample {
    pub u: f64,
    pub u_xi: f64,
    /// `y - x0`.
    pub g: f64,
    pub y_xi: f64,
    pub h: f64,
}

/// Smooth step from 0 at `t <= 0` to 1 at `t >= 1`, with its derivative.
fn smooth_step(t: f64) -> (f64, f64) {
    if t <= 0.0 {
        return (0.0, 0.0);
    }
    if t >= 1.0 {
        return (1.0, 0.0);
    }
    let x = 1.0 / t - 1.0 / (1.0 - t);
    if x.abs() > 700.0 {
        return (if x > 0.0 { 0.0 } else { 1.0 }, 0.0);
    }
    let e = x.exp();
    let d = e * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / ((1.0 + e) * (1.0 + e));
    (1.0 / (1.0 + e), d)
}

impl CusponProfile {
    pub fn new(spec: TravelingWaveSpec) -> Result<Self> {
        if !(spec.gamma > 1.0) || spec.c <= 0.0 || spec.c != spec.m_max {
            return Err(Error::InvalidParameter(format!(
                "cuspon needs gamma > 1 and c = M > 0, got gamma = {}, c = {}, M = {}",
                spec.gamma, spec.c, spec.m_max
            )));
        }
        let top = spec.c / spec.gamma;
        let root = top.sqrt();
        let (a, b) = spec.blend.unwrap_or((DEFAULT_BLEND.0 * root, DEFAULT_BLEND.1 * root));
        if !(0.0 < a && a < b && b.is_finite()) {
            return Err(Error::InvalidParameter(format!("blend interval needs 0 < a < b, got ({a}, {b})")));
        }
        Ok(Self { spec, a, b, top, kappa: (spec.m_max / spec.c).sqrt() })
    }

    /// Crest value `c / gamma`.
    pub fn crest(&self) -> f64 {
        self.top
    }

    fn u_and_derivative(&self, xi: f64) -> (f64, f64) {
        let quad = self.top - xi * xi;
        if xi <= self.a {
            return (quad, -2.0 * xi);
        }
        let tail = self.top * (-self.kappa * xi).exp();
        let (psi, dpsi) = smooth_step((xi - self.a) / (self.b - self.a));
        let dpsi = dpsi / (self.b - self.a);
        let u = (1.0 - psi) * quad + psi * tail;
        let du = (1.0 - psi) * (-2.0 * xi) + psi * (-self.kappa * tail) + dpsi * (tail - quad);
        (u, du)
    }

    /// `g(u)` given `t = sqrt(c - gamma u)`.
    fn g(&self, u: f64, t: f64) -> f64 {
        let TravelingWaveSpec { gamma, c, m_max, .. } = self.spec;
        let t_split = (0.5 * c).sqrt();
        let near = |s: f64| {
            let z = (c - s * s) / gamma;
            2.0 * s * s / (gamma * z * (m_max - z).sqrt())
        };
        if t <= t_split {
            return adaptive_simpson(near, 0.0, t, QUAD_TOL);
        }
        let z_split = 0.5 * c / gamma;
        let far = |s: f64| {
            let z = s.exp();
            ((c - gamma * z) / (m_max - z)).sqrt()
        };
        adaptive_simpson(near, 0.0, t_split, QUAD_TOL) + adaptive_simpson(far, u.ln(), z_split.ln(), QUAD_TOL)
    }

    /// Construction at `xi >= 0`.
    pub fn sample(&self, xi: f64) -> CusponSample {
        let TravelingWaveSpec { gamma, c, m_max, .. } = self.spec;
        let (u, u_xi) = self.u_and_derivative(xi);
        let (t, r) = if xi <= self.a {
            (gamma.sqrt() * xi, 2.0 / gamma.sqrt())
        } else {
            let t = (c - gamma * u).sqrt();
            (t, -u_xi / t)
        };
        let root = (m_max - u).sqrt();
        let y_xi = r * t * t / (u * root);
        let h = u * u * y_xi + r * u * root;
        CusponSample { u, u_xi, g: self.g(u, t), y_xi, h }
    }

    /// `|(U_xi / y_xi)^2 - F(U)|`, the traveling-wave residual at `xi > 0`.
    pub fn ode_residual(&self, xi: f64) -> f64 {
        let s = self.sample(xi);
        let ux = s.u_xi / s.y_xi;
        (ux * ux - self.spec.f(s.u)).abs()
    }

    /// First `xi` in `[0, xi_max]` where `U` fails to decrease or leaves `(0, c/gamma]`.
    pub fn first_violation(&self, xi_max: f64, step: f64) -> Option<f64> {
        let n = (xi_max / step).ceil() as usize;
        (0..=n).map(|k| k as f64 * step).find(|&xi| {
            let (u, du) = self.u_and_derivative(xi);
            !(u > 0.0 && u <= self.top && du <= 0.0)
        })
    }
}

/// Cuspon state with the crest at `spec.x0`.
pub fn make_cuspon(spec: TravelingWaveSpec, grid: GridSpec, params: Parameters) -> Result<LagrangianState> {
    let profile = CusponProfile::new(spec)?;
    if let Some(xi) = profile.first_violation(grid.r(), grid.dxi() / 16.0) {
        return Err(Error::NonMonotoneConstruction { xi });
    }
    let mut s = LagrangianState::zero(grid, params);
    for k in 0..grid.cells() {
        let xi = grid.xi(k);
        let sign = if xi < 0.0 { -1.0 } else { 1.0 };
        let p = profile.sample(xi.abs());
        s.u[k] = p.u;
        s.w[k] = sign * p.u_xi;
        s.zeta[k] = spec.x0 + sign * p.g - xi;
        s.v[k] = p.y_xi - 1.0;
        s.h[k] = p.h;
    }
    fill_cumulative_energy(&mut s);
    let edge = profile.sample(grid.r());
    s.zeta_plus = spec.x0 + edge.g - grid.r();
    s.zeta_minus = spec.x0 - edge.g + grid.r();
    Ok(s)
}
