//! Smooth decaying traveling wave for `gamma < 1`.

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Parameters};
use crate::state::LagrangianState;

use super::{assemble_relabeled, TravelingWaveSpec};

/// Fraction of the crest height where the profile switches to the first-order form.
const SWITCH: f64 = 0.5;

/// Right half `x >= 0` of an even profile sampled at `x_j = j dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothProfile {
    pub spec: TravelingWaveSpec,
    pub dx: f64,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    /// Index of the first node computed with the first-order equation.
    pub switch_index: usize,
}

fn rk4<const D: usize>(y: [f64; D], h: f64, f: impl Fn([f64; D]) -> [f64; D]) -> [f64; D] {
    let axpy = |a: [f64; D], s: f64, b: [f64; D]| std::array::from_fn(|i| a[i] + s * b[i]);
    let k1 = f(y);
    let k2 = f(axpy(y, 0.5 * h, k1));
    let k3 = f(axpy(y, 0.5 * h, k2));
    let k4 = f(axpy(y, h, k3));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

impl SmoothProfile {
    /// Integrates `u'' = F'(u)/2` from the crest `u(0) = M`, `u'(0) = 0`, then
    /// `u' = -u sqrt((M - u)/(c - gamma u))` once `u` has halved.
    pub fn compute(spec: TravelingWaveSpec, dx: f64, x_max: f64) -> Result<Self> {
        if !(spec.gamma < 1.0) || spec.c <= 0.0 || spec.c != spec.m_max {
            return Err(Error::InvalidParameter(format!(
                "smooth wave needs gamma < 1 and c = M > 0, got gamma = {}, c = {}, M = {}",
                spec.gamma, spec.c, spec.m_max
            )));
        }
        let steps = (x_max / dx).ceil() as usize + 1;
        let mut u = Vec::with_capacity(steps + 1);
        let mut du = Vec::with_capacity(steps + 1);
        let mut state = [spec.m_max, 0.0];
        u.push(state[0]);
        du.push(state[1]);
        while u.len() <= steps && state[0] > SWITCH * spec.m_max {
            state = rk4(state, dx, |[a, p]| [p, 0.5 * spec.df(a)]);
            if !state.iter().all(|v| v.is_finite()) || state[0] > spec.m_max || state[1] > 0.0 {
                return Err(Error::ProfileBlowup(format!(
                    "second-order profile left the regime at x = {}",
                    u.len() as f64 * dx
                )));
            }
            u.push(state[0]);
            du.push(state[1]);
        }
        let switch_index = u.len();
        let slope = |a: f64| -a * ((spec.m_max - a) / (spec.c - spec.gamma * a)).sqrt();
        let mut a = state[0];
        while u.len() <= steps {
            a = rk4([a], dx, |[b]| [slope(b)])[0];
            if !a.is_finite() || a < 0.0 {
                return Err(Error::ProfileBlowup(format!("tail left the regime at x = {}", u.len() as f64 * dx)));
            }
            u.push(a);
            du.push(slope(a));
        }
        Ok(Self { spec, dx, u, du, switch_index })
    }

    /// `(u, u_x)` at any `x` by cubic Hermite interpolation; zero past the table.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let s = x.abs();
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        let pos = s / self.dx;
        let j = pos.floor() as usize;
        if j + 1 >= self.u.len() {
            return (0.0, 0.0);
        }
        let t = pos - j as f64;
        let (u0, u1) = (self.u[j], self.u[j + 1]);
        let (m0, m1) = (self.du[j] * self.dx, self.du[j + 1] * self.dx);
        let (t2, t3) = (t * t, t * t * t);
        let val =
            (2.0 * t3 - 3.0 * t2 + 1.0) * u0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * u1 + (t3 - t2) * m1;
        let der = ((6.0 * t2 - 6.0 * t) * u0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * u1
            + (3.0 * t2 - 2.0 * t) * m1)
            / self.dx;
        (val, sign * der)
    }

    /// `max |u'^2 - F(u)|` over the tabulated nodes.
    pub fn max_residual(&self) -> f64 {
        self.u.iter().zip(&self.du).map(|(&a, &p)| (p * p - self.spec.f(a)).abs()).fold(0.0, f64::max)
    }
}

/// Smooth traveling wave on the grid with `y0 = xi`, `q0 = 1`.
pub fn make_smooth_tw(spec: TravelingWaveSpec, grid: GridSpec, params: Parameters) -> Result<LagrangianState> {
    let dx = grid.dxi() / 32.0;
    let x_max = grid.r() + spec.x0.abs() + 2.0 * grid.dxi();
    let profile = SmoothProfile::compute(spec, dx, x_max)?;
    let samples = grid.nodes().map(|x| {
        let (u, w) = profile.eval(x - spec.x0);
        (u, w, u * u + w * w)
    });
    Ok(assemble_relabeled(grid, params, samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_residual_and_shape() {
        let spec = TravelingWaveSpec::new(0.2, 1.0);
        let p = SmoothProfile::compute(spec, 0.25 / 32.0, 26.0).unwrap();
        assert_eq!(p.u[0], 1.0);
        assert!(p.u.windows(2).all(|w| w[1] <= w[0]));
        assert!(p.max_residual() <= 1e-8, "residual {}", p.max_residual());
        let (a, b) = (p.eval(1.3), p.eval(-1.3));
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, -b.1);
    }

    #[test]
    fn rejects_wrong_regime() {
        assert!(SmoothProfile::compute(TravelingWaveSpec::new(2.0, 1.0), 0.01, 1.0).is_err());
    }
}
