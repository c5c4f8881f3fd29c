//! Discrete norm on the Lagrangian state space.
//!
//! Sup norms on `zeta`, `U`, `H` plus `dxi`-weighted l2 norms on `U`, `v`,
//! `w`, `h`, plus the boundary constants.

use crate::error::{Error, Result};
use crate::state::LagrangianState;

fn sup(x: impl Iterator<Item = f64>) -> f64 {
    x.fold(0.0, |m, v| m.max(v.abs()))
}

fn l2(dxi: f64, x: impl Iterator<Item = f64>) -> f64 {
    (dxi * x.map(|v| v * v).sum::<f64>()).sqrt()
}

pub fn norm_f(state: &LagrangianState) -> f64 {
    let dxi = state.grid.dxi();
    sup(state.zeta.iter().copied())
        + sup(state.u.iter().copied())
        + sup(state.energy.iter().copied())
        + l2(dxi, state.u.iter().copied())
        + l2(dxi, state.v.iter().copied())
        + l2(dxi, state.w.iter().copied())
        + l2(dxi, state.h.iter().copied())
        + state.zeta_minus.abs()
        + state.zeta_plus.abs()
        + state.h_plus.abs()
}

pub fn distance_f(a: &LagrangianState, b: &LagrangianState) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let dxi = a.grid.dxi();
    let diff = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>();
    let dz = diff(&a.zeta, &b.zeta);
    let du = diff(&a.u, &b.u);
    let de = diff(&a.energy, &b.energy);
    let dv = diff(&a.v, &b.v);
    let dw = diff(&a.w, &b.w);
    let dh = diff(&a.h, &b.h);
    Ok(sup(dz.into_iter())
        + sup(du.iter().copied())
        + sup(de.into_iter())
        + l2(dxi, du.into_iter())
        + l2(dxi, dv.into_iter())
        + l2(dxi, dw.into_iter())
        + l2(dxi, dh.into_iter())
        + (a.zeta_minus - b.zeta_minus).abs()
        + (a.zeta_plus - b.zeta_plus).abs()
        + (a.h_plus - b.h_plus).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, Parameters};

    fn sample() -> LagrangianState {
        let mut s = LagrangianState::zero(GridSpec::new(8, 0.25).unwrap(), Parameters::new(1.0).unwrap());
        for k in 0..s.cells() {
            let x = k as f64;
            s.zeta[k] = 0.1 * x.sin();
            s.u[k] = x.cos();
            s.energy[k] = 0.05 * x;
            s.v[k] = -0.2 * (0.3 * x).sin().abs();
            s.w[k] = 0.3 * (2.0 * x).sin();
            s.h[k] = 0.5 * (0.1 * x).cos().abs();
        }
        s.zeta_plus = -0.7;
        s.h_plus = 0.8;
        s
    }

    #[test]
    fn distance_to_self_is_zero() {
        let s = sample();
        assert_eq!(distance_f(&s, &s).unwrap(), 0.0);
    }

    #[test]
    fn constant_velocity_shift() {
        let a = sample();
        let mut b = a.clone();
        b.u.iter_mut().for_each(|u| *u += 1.0);
        let expected = 1.0 + (0.25 * 16.0_f64).sqrt();
        assert!((distance_f(&a, &b).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn homogeneity() {
        let a = sample();
        let zero = LagrangianState::zero(a.grid, a.params);
        let mut scaled = a.clone();
        for f in scaled.fields_mut() {
            f.iter_mut().for_each(|x| *x *= 2.5);
        }
        scaled.zeta_plus *= 2.5;
        scaled.h_plus *= 2.5;
        let d1 = distance_f(&zero, &a).unwrap();
        let d2 = distance_f(&zero, &scaled).unwrap();
        assert!((d2 - 2.5 * d1).abs() < 1e-12 * d2);
        assert!((norm_f(&a) - d1).abs() < 1e-14);
    }

    #[test]
    fn grid_mismatch() {
        let a = sample();
        let b = LagrangianState::zero(GridSpec::new(8, 0.5).unwrap(), a.params);
        assert_eq!(distance_f(&a, &b), Err(Error::GridMismatch));
    }
}
