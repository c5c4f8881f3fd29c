//! Time integration of the semi-discrete system.

mod adaptive;
mod evolve;
mod midpoint;
mod splitting;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use adaptive::{step_adaptive_rk, AdaptiveIntegrator, AdaptiveReport};
pub use evolve::{evolve, Evolution, Observer, RunSummary, Sample};
pub use midpoint::{midpoint_substep, SubstepStats};
pub use splitting::{
    step_explicit_euler, step_explicit_euler_dt, step_lie_trotter, step_lie_trotter_dt, step_strang, step_strang_dt,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    LieTrotter,
    Strang,
    ExplicitEuler,
    AdaptiveRk,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::ExplicitEuler, Scheme::LieTrotter, Scheme::Strang, Scheme::AdaptiveRk];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::LieTrotter => "lie_trotter",
            Scheme::Strang => "strang",
            Scheme::ExplicitEuler => "explicit_euler",
            Scheme::AdaptiveRk => "adaptive_rk",
        }
    }

    /// Whether the scheme conserves the per-cell invariants up to solver tolerance.
    pub fn is_splitting(self) -> bool {
        matches!(self, Scheme::LieTrotter | Scheme::Strang)
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "lie_trotter" | "lie" | "lt" => Ok(Scheme::LieTrotter),
            "strang" => Ok(Scheme::Strang),
            "explicit_euler" | "euler" => Ok(Scheme::ExplicitEuler),
            "adaptive_rk" | "rk45" | "ode45" | "dopri5" => Ok(Scheme::AdaptiveRk),
            other => Err(Error::InvalidParameter(format!("unknown scheme '{other}'"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn default_fp_tol() -> f64 {
    1e-12
}
fn default_fp_max_iter() -> usize {
    50
}
fn default_rk_rel_tol() -> f64 {
    1e-6
}
fn default_rk_abs_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub scheme: Scheme,
    /// Fixed-point residual tolerance, measured with `distance_f`.
    #[serde(default = "default_fp_tol")]
    pub fp_tol: f64,
    #[serde(default = "default_fp_max_iter")]
    pub fp_max_iter: usize,
    #[serde(default = "default_rk_rel_tol")]
    pub rk_rel_tol: f64,
    #[serde(default = "default_rk_abs_tol")]
    pub rk_abs_tol: f64,
}

impl StepperConfig {
    pub fn new(dt: f64, scheme: Scheme) -> Self {
        Self {
            dt,
            scheme,
            fp_tol: default_fp_tol(),
            fp_max_iter: default_fp_max_iter(),
            rk_rel_tol: default_rk_rel_tol(),
            rk_abs_tol: default_rk_abs_tol(),
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.fp_tol > 0.0) {
            return Err(Error::InvalidParameter("fp_tol must be positive".into()));
        }
        if self.fp_max_iter == 0 {
            return Err(Error::InvalidParameter("fp_max_iter must be at least 1".into()));
        }
        if !(self.rk_rel_tol > 0.0 && self.rk_abs_tol > 0.0) {
            return Err(Error::InvalidParameter("adaptive tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// What happened during one time step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepReport {
    /// Fixed-point iterations of each implicit sub-step, in execution order.
    pub fp_iterations: Vec<usize>,
    /// Largest final fixed-point residual over the sub-steps.
    pub residual: f64,
    /// Some source-term evaluation had to fall back to direct summation.
    pub fallback: bool,
    pub accepted: usize,
    pub rejected: usize,
    /// Smallest `q` and `h` seen at internal stages (adaptive scheme only).
    pub min_q: Option<f64>,
    pub min_h: Option<f64>,
}

impl StepReport {
    fn absorb(&mut self, stats: SubstepStats) {
        self.fp_iterations.push(stats.iterations);
        self.residual = self.residual.max(stats.residual);
        self.fallback |= stats.fallback;
    }

    pub fn max_fp_iterations(&self) -> usize {
        self.fp_iterations.iter().copied().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("ODE45".parse::<Scheme>().unwrap(), Scheme::AdaptiveRk);
        assert!("rk4".parse::<Scheme>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(StepperConfig::new(0.1, Scheme::Strang).validate().is_ok());
        assert!(StepperConfig::new(0.0, Scheme::Strang).validate().is_err());
        let mut c = StepperConfig::new(0.1, Scheme::Strang);
        c.fp_max_iter = 0;
        assert!(c.validate().is_err());
    }
}
