//! Right-hand sides of the semi-discrete system and of its two sub-systems.
//!
//! `G1` moves the derivative fields `(v, w, h)` with `(zeta, U, H)` frozen;
//! `G2` moves `(zeta, U, H)` and `h` with `(v, w)` frozen. Each sub-system
//! keeps the per-cell invariant `U^2 q^2 + w^2 - q h` quadratic.

use serde::{Deserialize, Serialize};

use crate::source::SourceTerms;
use crate::state::{LagrangianState, Tangent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubSystem {
    G1,
    G2,
}

struct Coefficients {
    gamma: f64,
    half_gamma: f64,
    cu: f64,
}

impl Coefficients {
    fn of(state: &LagrangianState) -> Self {
        let gamma = state.gamma();
        Self { gamma, half_gamma: 0.5 * gamma, cu: 0.5 * (3.0 - 2.0 * gamma) }
    }
}

/// Full vector field of the semi-discrete system.
pub fn vector_field_full(state: &LagrangianState, terms: &SourceTerms) -> Tangent {
    vector_field_g1(state, terms).add(&vector_field_g2(state, terms))
}

pub fn vector_field_g1(state: &LagrangianState, terms: &SourceTerms) -> Tangent {
    let c = Coefficients::of(state);
    let n = state.cells();
    let mut t = Tangent::zeros(n);
    for k in 0..n {
        let (u, w, h, q, p) = (state.u[k], state.w[k], state.h[k], state.q(k), terms.p[k]);
        t.v[k] = c.gamma * w;
        t.w[k] = c.half_gamma * h + (c.cu * u * u - p) * q;
        t.h[k] = (3.0 * u * u - 2.0 * p) * w;
    }
    t
}

pub fn vector_field_g2(state: &LagrangianState, terms: &SourceTerms) -> Tangent {
    let c = Coefficients::of(state);
    let n = state.cells();
    let mut t = Tangent::zeros(n);
    for k in 0..n {
        let (u, q, p, qq) = (state.u[k], state.q(k), terms.p[k], terms.q[k]);
        t.zeta[k] = c.gamma * u;
        t.u[k] = -qq;
        t.energy[k] = u * u * u - 2.0 * p * u;
        t.h[k] = -2.0 * qq * u * q;
    }
    t
}

pub fn vector_field(which: SubSystem, state: &LagrangianState, terms: &SourceTerms) -> Tangent {
    match which {
        SubSystem::G1 => vector_field_g1(state, terms),
        SubSystem::G2 => vector_field_g2(state, terms),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, Parameters};
    use crate::source::{integrand_a, source_terms_direct};

    fn zero(gamma: f64) -> LagrangianState {
        LagrangianState::zero(GridSpec::new(6, 0.5).unwrap(), Parameters::new(gamma).unwrap())
    }

    #[test]
    fn zero_state_is_fixed_point() {
        let s = zero(0.8);
        let terms = source_terms_direct(&s);
        for t in [vector_field_full(&s, &terms), vector_field_g1(&s, &terms), vector_field_g2(&s, &terms)] {
            assert!(t.fields().iter().all(|f| f.iter().all(|&x| x == 0.0)));
        }
    }

    #[test]
    fn zero_velocity_reduces_to_energy_forcing() {
        let mut s = zero(0.8);
        for k in 0..s.cells() {
            s.h[k] = 0.1 * k as f64;
            s.w[k] = 0.05 * (k as f64 - 5.0);
            s.v[k] = -0.01 * k as f64;
        }
        let a = integrand_a(&s);
        for k in 0..s.cells() {
            assert_eq!(a[k], 0.4 * s.h[k]);
        }
        let terms = source_terms_direct(&s);
        let t = vector_field_full(&s, &terms);
        for k in 0..s.cells() {
            assert_eq!(t.u[k], -terms.q[k]);
            assert_eq!(t.v[k], 0.8 * s.w[k]);
            assert_eq!(t.w[k], 0.4 * s.h[k] - terms.p[k] * s.q(k));
            assert_eq!(t.h[k], -2.0 * terms.p[k] * s.w[k]);
            assert_eq!(t.energy[k], 0.0);
        }
    }

    #[test]
    fn gamma_zero_freezes_characteristics() {
        let mut s = zero(0.0);
        s.u.iter_mut().enumerate().for_each(|(k, u)| *u = (k as f64 * 0.3).sin());
        s.w.iter_mut().enumerate().for_each(|(k, w)| *w = (k as f64 * 0.7).cos());
        let terms = source_terms_direct(&s);
        let t = vector_field_full(&s, &terms);
        assert!(t.zeta.iter().chain(&t.v).all(|&x| x == 0.0));
        assert!(t.u.iter().any(|&x| x != 0.0));
    }

    #[test]
    fn g1_freezes_primary_fields() {
        let mut s = zero(1.3);
        s.u.iter_mut().enumerate().for_each(|(k, u)| *u = 0.2 * k as f64);
        s.h.iter_mut().for_each(|h| *h = 0.5);
        let terms = source_terms_direct(&s);
        let t = vector_field_g1(&s, &terms);
        assert!(t.zeta.iter().chain(&t.u).chain(&t.energy).all(|&x| x == 0.0));
        let t2 = vector_field_g2(&s, &terms);
        assert!(t2.v.iter().chain(&t2.w).all(|&x| x == 0.0));
    }
}
