//! Eulerian to Lagrangian transform and cell projection.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Parameters};
use crate::state::LagrangianState;

use super::fill_cumulative_energy;

type Evaluator = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// Eulerian initial datum `u0` together with its derivative.
///
/// The profile is taken to vanish outside `support`.
#[derive(Clone)]
pub struct EulerianProfile {
    eval: Evaluator,
    support: (f64, f64),
}

impl fmt::Debug for EulerianProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EulerianProfile").field("support", &self.support).finish_non_exhaustive()
    }
}

impl EulerianProfile {
    /// Closed-form profile; `f(x)` returns `(u0(x), u0x(x))`.
    pub fn analytic<F>(support_radius: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> (f64, f64) + Send + Sync + 'static,
    {
        if !(support_radius > 0.0 && support_radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("support radius must be positive, got {support_radius}")));
        }
        Ok(Self { eval: Arc::new(f), support: (-support_radius, support_radius) })
    }

    /// Samples on an increasing x-grid with linear interpolation. Missing
    /// derivatives are taken by central differences (one-sided at the ends).
    pub fn tabulated(x: Vec<f64>, u: Vec<f64>, ux: Option<Vec<f64>>) -> Result<Self> {
        let n = x.len();
        if n < 2 || u.len() != n || ux.as_ref().is_some_and(|d| d.len() != n) {
            return Err(Error::InvalidParameter("tabulated profile needs at least two rows of equal length".into()));
        }
        if (1..n).any(|k| x[k] <= x[k - 1]) {
            return Err(Error::InvalidParameter("tabulated x must be strictly increasing".into()));
        }
        if x.iter().chain(&u).chain(ux.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("tabulated profile has non-finite entries".into()));
        }
        let ux = ux.unwrap_or_else(|| central_differences(&x, &u));
        let support = (x[0], x[n - 1]);
        let eval = move |s: f64| {
            if s < x[0] || s > x[n - 1] {
                return (0.0, 0.0);
            }
            let j = x.partition_point(|&xj| xj <= s).clamp(1, n - 1);
            let t = (s - x[j - 1]) / (x[j] - x[j - 1]);
            (u[j - 1] + t * (u[j] - u[j - 1]), ux[j - 1] + t * (ux[j] - ux[j - 1]))
        };
        Ok(Self { eval: Arc::new(eval), support })
    }

    /// Parses numeric text with columns `x u` or `x u ux`.
    ///
    /// Blank lines and lines starting with `#` are skipped. The first other
    /// line is the header and must name the columns, e.g. `x,u` or `x u ux`.
    /// Columns may be separated by commas or whitespace.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let split = |l: &str| -> Vec<String> {
            l.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::to_owned).collect()
        };
        let (hline, header) = rows.next().ok_or(Error::ProfileParse { line: 0, message: "empty profile".into() })?;
        let names: Vec<String> = split(header).iter().map(|s| s.to_ascii_lowercase()).collect();
        let cols = match names.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
            ["x", "u"] => 2,
            ["x", "u", "ux"] => 3,
            _ => {
                return Err(Error::ProfileParse {
                    line: hline,
                    message: format!("expected header `x u` or `x u ux`, got `{header}`"),
                })
            }
        };
        let (mut x, mut u, mut ux) = (Vec::new(), Vec::new(), Vec::new());
        for (line, l) in rows {
            let fields = split(l);
            if fields.len() != cols {
                return Err(Error::ProfileParse {
                    line,
                    message: format!("expected {cols} columns, got {}", fields.len()),
                });
            }
            let mut vals = [0.0; 3];
            for (slot, f) in vals.iter_mut().zip(&fields) {
                *slot = f.parse().map_err(|e| Error::ProfileParse { line, message: format!("`{f}`: {e}") })?;
            }
            if x.last().is_some_and(|&prev| vals[0] <= prev) {
                return Err(Error::ProfileParse { line, message: "x must be strictly increasing".into() });
            }
            x.push(vals[0]);
            u.push(vals[1]);
            ux.push(vals[2]);
        }
        Self::tabulated(x, u, (cols == 3).then_some(ux))
    }

    /// `(u0(x), u0x(x))`, zero outside the support.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        if x < self.support.0 || x > self.support.1 {
            return (0.0, 0.0);
        }
        (self.eval)(x)
    }

    /// Energy density `u0^2 + u0x^2`.
    pub fn energy_density(&self, x: f64) -> f64 {
        let (u, ux) = self.eval(x);
        u * u + ux * ux
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }
}

fn central_differences(x: &[f64], u: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let (a, b) = (k.saturating_sub(1), (k + 1).min(n - 1));
            (u[b] - u[a]) / (x[b] - x[a])
        })
        .collect()
}

/// `u0(x) = -x exp(-x^2/2)`.
pub fn gaussian_derivative_profile() -> EulerianProfile {
    EulerianProfile::analytic(12.0, |x| {
        let g = (-0.5 * x * x).exp();
        (-x * g, (x * x - 1.0) * g)
    })
    .expect("constant radius is valid")
}

/// Sub-cell refinement used for the cell averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FineGrid {
    pub m_ref: usize,
}

impl Default for FineGrid {
    fn default() -> Self {
        Self { m_ref: 16 }
    }
}

impl FineGrid {
    pub fn new(m_ref: usize) -> Result<Self> {
        if m_ref == 0 {
            return Err(Error::InvalidParameter("m_ref must be at least 1".into()));
        }
        Ok(Self { m_ref })
    }
}

/// Continuum Lagrangian data sampled on the fine label nodes
/// `xi_j = -R + j dxi / m_ref`, `j = 0 ..= 2 N m_ref`.
#[derive(Debug, Clone, PartialEq)]
pub struct FineLagrangian {
    pub xi: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub q: Vec<f64>,
    pub w: Vec<f64>,
    pub h: Vec<f64>,
    pub m_ref: usize,
    pub grid: GridSpec,
}

struct CumulativeEnergy {
    x: Vec<f64>,
    e: Vec<f64>,
}

impl CumulativeEnergy {
    fn build(profile: &EulerianProfile, dx_target: f64) -> Result<Self> {
        let (lo, hi) = profile.support();
        let peak = (0..=256).map(|k| profile.energy_density(lo + (hi - lo) * k as f64 / 256.0)).fold(0.0, f64::max);
        for edge in [lo, hi] {
            let e = profile.energy_density(edge);
            if !e.is_finite() || e > 1e-12 * peak.max(1.0) {
                return Err(Error::RootBracketFailure { xi: edge });
            }
        }
        let n = ((hi - lo) / dx_target).ceil().max(1.0) as usize;
        let x: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
        let dens: Vec<f64> = x.iter().map(|&s| profile.energy_density(s)).collect();
        let mut e = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        e.push(0.0);
        for k in 1..=n {
            acc += 0.5 * (x[k] - x[k - 1]) * (dens[k] + dens[k - 1]);
            e.push(acc);
        }
        if !acc.is_finite() {
            return Err(Error::InvalidParameter("profile energy is not finite".into()));
        }
        Ok(Self { x, e })
    }

    fn total(&self) -> f64 {
        *self.e.last().unwrap()
    }

    fn at(&self, y: f64) -> f64 {
        let n = self.x.len();
        if y <= self.x[0] {
            return 0.0;
        }
        if y >= self.x[n - 1] {
            return self.total();
        }
        let j = self.x.partition_point(|&s| s <= y).clamp(1, n - 1);
        let t = (y - self.x[j - 1]) / (self.x[j] - self.x[j - 1]);
        self.e[j - 1] + t * (self.e[j] - self.e[j - 1])
    }

    /// Root of `y + E(y) = xi`; the map is strictly increasing with slope at least one.
    fn solve(&self, xi: f64) -> Result<f64> {
        let (mut lo, mut hi) = (xi - self.total() - 1.0, xi + 1.0);
        let f = |y: f64| y + self.at(y) - xi;
        if f(lo) > 0.0 || f(hi) < 0.0 {
            return Err(Error::RootBracketFailure { xi });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let r = f(mid);
            if r.abs() <= 1e-13 || mid == lo || mid == hi {
                return Ok(mid);
            }
            if r > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Samples `y0`, `U0`, `q0`, `w0`, `h0` on the fine label nodes.
pub fn eulerian_to_lagrangian(profile: &EulerianProfile, fine: FineGrid, grid: GridSpec) -> Result<FineLagrangian> {
    let m = fine.m_ref.max(1);
    let count = grid.cells() * m;
    let dfine = grid.dxi() / m as f64;
    let energy = CumulativeEnergy::build(profile, 0.25 * dfine)?;
    let mut out = FineLagrangian {
        xi: Vec::with_capacity(count + 1),
        y: Vec::with_capacity(count + 1),
        u: Vec::with_capacity(count + 1),
        q: Vec::with_capacity(count + 1),
        w: Vec::with_capacity(count + 1),
        h: Vec::with_capacity(count + 1),
        m_ref: m,
        grid,
    };
    for j in 0..=count {
        let xi = -grid.r() + j as f64 * dfine;
        let y = energy.solve(xi)?;
        let (u, ux) = profile.eval(y);
        let q = 1.0 / (1.0 + u * u + ux * ux);
        out.xi.push(xi);
        out.y.push(y);
        out.u.push(u);
        out.q.push(q);
        out.w.push(ux * q);
        out.h.push(1.0 - q);
    }
    Ok(out)
}

/// Trapezoid cell averages onto the coarse grid.
///
/// `U` is the `q^2`-weighted average, zero in cells where that weight vanishes.
pub fn project_to_grid(fine: &FineLagrangian, params: Parameters) -> LagrangianState {
    let grid = fine.grid;
    let m = fine.m_ref;
    let mut s = LagrangianState::zero(grid, params);
    let weight = |j: usize| if j == 0 || j == m { 0.5 / m as f64 } else { 1.0 / m as f64 };
    for k in 0..grid.cells() {
        let (mut hb, mut wb, mut qq, mut qqu) = (0.0, 0.0, 0.0, 0.0);
        for j in 0..=m {
            let f = k * m + j;
            let om = weight(j);
            let q2 = fine.q[f] * fine.q[f];
            hb += om * fine.h[f];
            wb += om * fine.w[f];
            qq += om * q2;
            qqu += om * q2 * fine.u[f];
        }
        s.h[k] = hb;
        s.v[k] = -hb;
        s.w[k] = wb;
        s.u[k] = if qq > 0.0 { qqu / qq } else { 0.0 };
    }
    fill_cumulative_energy(&mut s);
    for k in 0..grid.cells() {
        s.zeta[k] = -s.energy[k];
    }
    s.zeta_minus = 0.0;
    s.zeta_plus = -s.h_plus;
    s
}

/// Collision datum `u0 = -x exp(-x^2/2)` through the generic pipeline.
pub fn make_gaussian_derivative(grid: GridSpec, params: Parameters, fine: FineGrid) -> Result<LagrangianState> {
    let fine_data = eulerian_to_lagrangian(&gaussian_derivative_profile(), fine, grid)?;
    Ok(project_to_grid(&fine_data, params))
}
