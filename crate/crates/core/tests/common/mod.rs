#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rodwave::{GridSpec, LagrangianState, Parameters};

/// Random admissible state: `q > 0`, `q h >= U^2 q^2 + w^2`, `y` increasing.
pub fn random_state(seed: u64, n_half: usize, dxi: f64, gamma: f64) -> LagrangianState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = GridSpec::new(n_half, dxi).unwrap();
    let mut s = LagrangianState::zero(grid, Parameters::new(gamma).unwrap());
    let mut y = -grid.r();
    for k in 0..s.cells() {
        let q: f64 = rng.gen_range(0.05..2.0);
        let u: f64 = rng.gen_range(-1.5..1.5);
        let w: f64 = rng.gen_range(-1.0..1.0);
        let slack: f64 = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.5) };
        s.u[k] = u;
        s.w[k] = w;
        s.v[k] = q - 1.0;
        s.h[k] = (u * u * q * q + w * w) / q + slack;
        s.zeta[k] = y - grid.xi(k);
        y += dxi * q;
    }
    let mut acc = 0.0;
    for k in 0..s.cells() {
        s.energy[k] = acc;
        acc += dxi * s.h[k];
    }
    s.h_plus = acc;
    s.zeta_minus = s.zeta[0];
    s.zeta_plus = s.zeta[s.cells() - 1];
    s
}

/// Smooth, well-resolved bump used by the time-order tests.
pub fn smooth_state(n_half: usize, dxi: f64, gamma: f64) -> LagrangianState {
    let grid = GridSpec::new(n_half, dxi).unwrap();
    let mut s = LagrangianState::zero(grid, Parameters::new(gamma).unwrap());
    for k in 0..s.cells() {
        let x = grid.xi(k);
        let g = (-x * x).exp();
        s.u[k] = 0.6 * g;
        s.w[k] = -1.2 * x * g;
        s.h[k] = s.u[k] * s.u[k] + s.w[k] * s.w[k];
    }
    let mut acc = 0.0;
    for k in 0..s.cells() {
        s.energy[k] = acc;
        acc += dxi * s.h[k];
    }
    s.h_plus = acc;
    s
}
