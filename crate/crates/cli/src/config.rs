//! Experiment configuration files.

use std::path::{Path, PathBuf};

use rodwave::initial::{
    eulerian_to_lagrangian, make_cuspon, make_gaussian_derivative, make_peakon, make_peakon_train, make_smooth_tw,
    project_to_grid, EulerianProfile, FineGrid, TravelingWaveSpec,
};
use rodwave::{GridSpec, LagrangianState, Parameters, Scheme, StepperConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    Peakon {
        c: f64,
        #[serde(default)]
        x0: f64,
    },
    PeakonTrain {
        /// `[c, x0]` per peak.
        peaks: Vec<[f64; 2]>,
    },
    SmoothTravelingWave {
        c: f64,
        #[serde(default)]
        m_max: Option<f64>,
        #[serde(default)]
        x0: f64,
    },
    Cuspon {
        c: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        blend: Option<(f64, f64)>,
    },
    GaussianDerivative {
        #[serde(default = "default_m_ref")]
        m_ref: usize,
    },
    /// Tabulated `x u [ux]` profile.
    Profile {
        path: PathBuf,
        #[serde(default = "default_m_ref")]
        m_ref: usize,
    },
}

fn default_m_ref() -> usize {
    FineGrid::default().m_ref
}

fn default_r() -> f64 {
    25.0
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub dxi: f64,
    #[serde(default = "default_r")]
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Plot {
    Overlay,
    Waterfall,
    EnergyDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Time,
    Space,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reference {
    /// Same grid, this time step, Strang.
    FineStep {
        dt: f64,
    },
    ExactPeakon {
        c: f64,
        x0: f64,
    },
    /// Finest member of the sweep.
    Finest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub axis: Axis,
    pub values: Vec<f64>,
    /// Space sweeps use `dt = dt_ratio * dxi` when set.
    #[serde(default)]
    pub dt_ratio: Option<f64>,
    pub reference: Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub gamma: f64,
    pub initial: InitialData,
    pub grid: GridConfig,
    pub stepper: StepperConfig,
    pub t_final: f64,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default)]
    pub schemes: Vec<Scheme>,
    /// Reference step for `compare`; defaults to `stepper.dt / 10`.
    #[serde(default)]
    pub compare_dt: Option<f64>,
    #[serde(default)]
    pub plots: Vec<Plot>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
}

const BUNDLED: [(&str, &str); 8] = [
    ("smooth_gamma02", include_str!("../configs/smooth_gamma02.json")),
    ("peakon_gamma1", include_str!("../configs/peakon_gamma1.json")),
    ("cuspon_gamma5", include_str!("../configs/cuspon_gamma5.json")),
    ("peakon_antipeakon_gamma1", include_str!("../configs/peakon_antipeakon_gamma1.json")),
    ("peakon_antipeakon_gamma5", include_str!("../configs/peakon_antipeakon_gamma5.json")),
    ("collision_smooth", include_str!("../configs/collision_smooth.json")),
    ("peakon_time_order", include_str!("../configs/peakon_time_order.json")),
    ("peakon_space_order", include_str!("../configs/peakon_space_order.json")),
];

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn bundled(name: &str) -> CliResult<ExperimentConfig> {
    let (_, text) =
        BUNDLED.iter().find(|(n, _)| *n == name).ok_or_else(|| CliError::UnknownExperiment(name.to_string()))?;
    ExperimentConfig::parse(text, &format!("<bundled {name}>"), None)
}

impl ExperimentConfig {
    /// Parses a config or a run manifest. Relative profile paths are taken
    /// relative to `base`.
    pub fn parse(text: &str, origin: &str, base: Option<&Path>) -> CliResult<Self> {
        let err = |e: serde_json::Error| CliError::Config { path: origin.to_string(), message: e.to_string() };
        let value: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        let value = match value.get("config") {
            Some(inner) if value.get("version").is_some() => inner.clone(),
            _ => value,
        };
        let mut cfg: ExperimentConfig = serde_json::from_value(value).map_err(err)?;
        if let (InitialData::Profile { path, .. }, Some(base)) = (&mut cfg.initial, base) {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
        cfg.validate().map_err(|e| CliError::Config { path: origin.to_string(), message: e.to_string() })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text, &path.display().to_string(), path.parent())
    }

    /// A bundled experiment name or a path to a config file.
    pub fn resolve(name_or_path: &str) -> CliResult<Self> {
        let path = Path::new(name_or_path);
        if path.exists() {
            Self::load(path)
        } else {
            bundled(name_or_path)
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.grid_spec()?;
        self.parameters()?;
        self.stepper.validate()?;
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(CliError::Invalid(format!("t_final must be nonnegative, got {}", self.t_final)));
        }
        if self.stride == 0 {
            return Err(CliError::Invalid("stride must be at least 1".into()));
        }
        if let InitialData::Profile { path, .. } = &self.initial {
            if !path.exists() {
                return Err(CliError::Invalid(format!("profile file {} does not exist", path.display())));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.iter().any(|v| !(*v > 0.0)) {
                return Err(CliError::Invalid("sweep values must be positive".into()));
            }
        }
        let ratio = self.t_final / self.stepper.dt;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            log::warn!(
                "t_final = {} is not a multiple of dt = {}; the last step is shortened",
                self.t_final,
                self.stepper.dt
            );
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> CliResult<GridSpec> {
        Ok(GridSpec::with_radius(self.grid.dxi, self.grid.r)?)
    }

    pub fn parameters(&self) -> CliResult<Parameters> {
        Ok(Parameters::new(self.gamma)?)
    }

    pub fn initial_state(&self) -> CliResult<LagrangianState> {
        self.initial_state_on(self.grid_spec()?)
    }

    pub fn initial_state_on(&self, grid: GridSpec) -> CliResult<LagrangianState> {
        let params = self.parameters()?;
        let wave = |c: f64, m_max: Option<f64>, x0: f64, blend| TravelingWaveSpec {
            gamma: self.gamma,
            c,
            m_max: m_max.unwrap_or(c),
            x0,
            blend,
        };
        let state = match &self.initial {
            InitialData::Peakon { c, x0 } => make_peakon(*c, *x0, grid, params),
            InitialData::PeakonTrain { peaks } => {
                let peaks: Vec<(f64, f64)> = peaks.iter().map(|p| (p[0], p[1])).collect();
                make_peakon_train(&peaks, grid, params)
            }
            InitialData::SmoothTravelingWave { c, m_max, x0 } => {
                make_smooth_tw(wave(*c, *m_max, *x0, None), grid, params)?
            }
            InitialData::Cuspon { c, x0, blend } => make_cuspon(wave(*c, None, *x0, *blend), grid, params)?,
            InitialData::GaussianDerivative { m_ref } => {
                make_gaussian_derivative(grid, params, FineGrid::new(*m_ref)?)?
            }
            InitialData::Profile { path, m_ref } => {
                let text = std::fs::read_to_string(path).map_err(crate::error::io_err(path))?;
                let profile = EulerianProfile::parse_table(&text)?;
                project_to_grid(&eulerian_to_lagrangian(&profile, FineGrid::new(*m_ref)?, grid)?, params)
            }
        };
        Ok(state)
    }

    pub fn schemes_or_default(&self) -> Vec<Scheme> {
        if self.schemes.is_empty() {
            vec![self.stepper.scheme]
        } else {
            self.schemes.clone()
        }
    }

    pub fn plots_or_default(&self) -> Vec<Plot> {
        if !self.plots.is_empty() {
            return self.plots.clone();
        }
        match self.initial {
            InitialData::PeakonTrain { .. } | InitialData::GaussianDerivative { .. } => {
                vec![Plot::Waterfall, Plot::EnergyDensity]
            }
            _ => vec![Plot::Overlay],
        }
    }
}
