//! Browser front end: step a simulation, read back its graph, compare schemes.

use rodwave::initial::{
    make_cuspon, make_gaussian_derivative, make_peakon, make_peakon_train, make_smooth_tw, FineGrid, TravelingWaveSpec,
};
use rodwave::observables::{energy_density_points, DEFAULT_Q_FLOOR};
use rodwave::{evolve, invariants, GridSpec, LagrangianState, Parameters, Scheme, StepperConfig};
use wasm_bindgen::prelude::*;

const RADIUS: f64 = 25.0;

fn initial_state(kind: &str, gamma: f64, dxi: f64) -> Result<LagrangianState, String> {
    let grid = GridSpec::with_radius(dxi, RADIUS).map_err(|e| e.to_string())?;
    let params = Parameters::new(gamma).map_err(|e| e.to_string())?;
    let wave = TravelingWaveSpec::new(gamma, 1.0);
    let state = match kind {
        "peakon" => make_peakon(1.0, 0.0, grid, params),
        "peakon_antipeakon" => make_peakon_train(&[(1.0, 0.0), (-1.0, 1.0)], grid, params),
        "smooth" => make_smooth_tw(wave, grid, params).map_err(|e| e.to_string())?,
        "cuspon" => make_cuspon(wave, grid, params).map_err(|e| e.to_string())?,
        "collision" => make_gaussian_derivative(grid, params, FineGrid::default()).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown initial data '{other}'")),
    };
    Ok(state)
}

fn drift(a: &[f64], s: &LagrangianState) -> f64 {
    invariants(s).iter().zip(a).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Plain Rust core of [`Simulation`], usable off the browser.
pub struct Session {
    state: LagrangianState,
    inv0: Vec<f64>,
    cfg: StepperConfig,
    t: f64,
    min_q: f64,
}

impl Session {
    pub fn new(kind: &str, gamma: f64, dxi: f64, dt: f64, scheme: &str) -> Result<Self, String> {
        let scheme: Scheme = scheme.parse().map_err(|e: rodwave::Error| e.to_string())?;
        let cfg = StepperConfig::new(dt, scheme);
        cfg.validate().map_err(|e| e.to_string())?;
        let state = initial_state(kind, gamma, dxi)?;
        let inv0 = invariants(&state);
        let min_q = state.q_values().into_iter().fold(f64::INFINITY, f64::min);
        Ok(Self { state, inv0, cfg, t: 0.0, min_q })
    }

    pub fn step(&mut self, steps: u32) -> Result<(), String> {
        let span = self.cfg.dt * f64::from(steps);
        let out = evolve(&self.state, span, &self.cfg, usize::MAX, &mut []).map_err(|e| e.to_string())?;
        self.min_q = self.min_q.min(out.summary.min_q);
        self.state = out.state;
        self.t += span;
        Ok(())
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn xs(&self) -> Vec<f64> {
        self.state.y_values()
    }

    pub fn us(&self) -> Vec<f64> {
        self.state.u.clone()
    }

    /// `h/q` per cell, NaN where the energy has concentrated.
    pub fn energy_density(&self) -> Vec<f64> {
        energy_density_points(&self.state, DEFAULT_Q_FLOOR).iter().map(|(_, d)| d.value().unwrap_or(f64::NAN)).collect()
    }

    pub fn invariant_drift(&self) -> f64 {
        drift(&self.inv0, &self.state)
    }

    pub fn min_q(&self) -> f64 {
        self.min_q
    }

    pub fn total_energy(&self) -> f64 {
        self.state.total_energy()
    }
}

/// One JSON line per scheme: invariant drift, min q, min h and the final crest.
pub fn compare_json(kind: &str, gamma: f64, dxi: f64, dt: f64, t_final: f64) -> Result<String, String> {
    let s0 = initial_state(kind, gamma, dxi)?;
    let inv0 = invariants(&s0);
    let mut rows = Vec::new();
    for scheme in Scheme::ALL {
        let out =
            evolve(&s0, t_final, &StepperConfig::new(dt, scheme), usize::MAX, &mut []).map_err(|e| e.to_string())?;
        let crest = out.state.u.iter().copied().fold(f64::MIN, f64::max);
        rows.push(format!(
            "{{\"scheme\":\"{}\",\"drift\":{:e},\"min_q\":{:e},\"min_h\":{:e},\"crest\":{}}}",
            scheme,
            drift(&inv0, &out.state),
            out.summary.min_q,
            out.summary.min_h,
            crest
        ));
    }
    Ok(format!("[{}]", rows.join(",")))
}

#[wasm_bindgen]
pub struct Simulation {
    inner: Session,
}

#[wasm_bindgen]
impl Simulation {
    /// `kind` is one of `peakon`, `peakon_antipeakon`, `smooth`, `cuspon`, `collision`.
    #[wasm_bindgen(constructor)]
    pub fn new(kind: &str, gamma: f64, dxi: f64, dt: f64, scheme: &str) -> Result<Simulation, JsError> {
        Session::new(kind, gamma, dxi, dt, scheme).map(|inner| Simulation { inner }).map_err(|e| JsError::new(&e))
    }

    pub fn step(&mut self, steps: u32) -> Result<(), JsError> {
        self.inner.step(steps).map_err(|e| JsError::new(&e))
    }

    pub fn time(&self) -> f64 {
        self.inner.time()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.inner.xs()
    }

    pub fn us(&self) -> Vec<f64> {
        self.inner.us()
    }

    #[wasm_bindgen(js_name = energyDensity)]
    pub fn energy_density(&self) -> Vec<f64> {
        self.inner.energy_density()
    }

    #[wasm_bindgen(js_name = invariantDrift)]
    pub fn invariant_drift(&self) -> f64 {
        self.inner.invariant_drift()
    }

    #[wasm_bindgen(js_name = minQ)]
    pub fn min_q(&self) -> f64 {
        self.inner.min_q()
    }

    #[wasm_bindgen(js_name = totalEnergy)]
    pub fn total_energy(&self) -> f64 {
        self.inner.total_energy()
    }
}

#[wasm_bindgen(js_name = compareSchemes)]
pub fn compare_schemes(kind: &str, gamma: f64, dxi: f64, dt: f64, t_final: f64) -> Result<String, JsError> {
    compare_json(kind, gamma, dxi, dt, t_final).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn session_steps_and_keeps_invariants() {
        let mut s = Session::new("peakon", 1.0, 0.2, 0.1, "strang").unwrap();
        s.step(5).unwrap();
        assert!((s.time() - 0.5).abs() < 1e-12);
        assert!(s.invariant_drift() < 1e-9);
        assert_eq!(s.xs().len(), s.us().len());
        assert!(s.energy_density().iter().all(|e| e.is_finite()));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(Session::new("blob", 1.0, 0.2, 0.1, "strang").is_err());
        assert!(Session::new("peakon", 1.0, 0.2, 0.1, "leapfrog").is_err());
        assert!(Session::new("peakon", 1.0, 0.2, -0.1, "strang").is_err());
        assert!(Session::new("cuspon", 0.5, 0.2, 0.1, "strang").is_err());
    }

    #[test]
    fn comparison_lists_every_scheme() {
        let json = compare_json("peakon", 1.0, 0.2, 0.2, 1.0).unwrap();
        for scheme in Scheme::ALL {
            assert!(json.contains(scheme.name()));
        }
    }
}
