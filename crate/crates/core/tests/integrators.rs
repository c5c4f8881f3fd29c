mod common;

use common::smooth_state;
use rodwave::field::SubSystem;
use rodwave::initial::make_peakon;
use rodwave::integrators::{midpoint_substep, step_strang_dt};
use rodwave::observables::convergence_order;
use rodwave::*;

fn peakon(dxi: f64, r: f64) -> LagrangianState {
    make_peakon(1.0, 0.0, GridSpec::with_radius(dxi, r).unwrap(), Parameters::new(1.0).unwrap())
}

#[test]
fn substeps_freeze_their_fields() {
    let s = smooth_state(40, 0.1, 0.8);
    let cfg = StepperConfig::new(0.1, Scheme::Strang);
    let (g1, _) = midpoint_substep(&s, 0.1, SubSystem::G1, &cfg).unwrap();
    assert_eq!((&g1.zeta, &g1.u, &g1.energy), (&s.zeta, &s.u, &s.energy));
    assert_ne!(g1.w, s.w);
    let (g2, _) = midpoint_substep(&s, 0.1, SubSystem::G2, &cfg).unwrap();
    assert_eq!((&g2.v, &g2.w), (&s.v, &s.w));
    assert_ne!(g2.u, s.u);
}

#[test]
fn zero_state_is_stationary_for_every_scheme() {
    let s = LagrangianState::zero(GridSpec::new(16, 0.25).unwrap(), Parameters::new(1.3).unwrap());
    for scheme in Scheme::ALL {
        let out = evolve(&s, 0.5, &StepperConfig::new(0.1, scheme), 1, &mut []).unwrap();
        assert_eq!(out.state.u, s.u, "{scheme}");
        assert_eq!(out.state.h, s.h, "{scheme}");
    }
}

#[test]
fn splitting_keeps_invariants_and_euler_does_not() {
    let s = peakon(0.1, 15.0);
    let drift = |scheme| evolve(&s, 1.0, &StepperConfig::new(0.2, scheme), 1, &mut []).unwrap().summary.max_inv_drift;
    let lt = drift(Scheme::LieTrotter);
    let st = drift(Scheme::Strang);
    let eu = drift(Scheme::ExplicitEuler);
    assert!(lt < 1e-9 && st < 1e-9, "{lt:e} {st:e}");
    assert!(eu > 1e-6, "{eu:e}");
}

#[test]
fn energy_drift_is_small() {
    let s = smooth_state(60, 0.1, 0.6);
    let out = evolve(&s, 2.0, &StepperConfig::new(0.1, Scheme::Strang), 1, &mut []).unwrap();
    let d = (out.state.total_energy() - s.total_energy()).abs();
    assert!(d < 1e-3 * s.total_energy(), "{d:e}");
}

#[test]
fn strang_is_second_order_in_time() {
    let s = smooth_state(50, 0.1, 0.8);
    let reference = evolve(&s, 1.0, &StepperConfig::new(1e-3, Scheme::Strang), 1, &mut []).unwrap().state;
    let order = |scheme| {
        let pts: Vec<_> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&dt| {
                let out = evolve(&s, 1.0, &StepperConfig::new(dt, scheme), 1, &mut []).unwrap().state;
                (dt, distance_f(&out, &reference).unwrap())
            })
            .collect();
        convergence_order(&pts).unwrap()
    };
    let strang = order(Scheme::Strang);
    let lie = order(Scheme::LieTrotter);
    assert!((1.8..=2.2).contains(&strang), "{strang}");
    assert!((0.8..=1.2).contains(&lie), "{lie}");
}

#[test]
fn adaptive_rk_agrees_with_fine_strang() {
    let s = smooth_state(50, 0.1, 0.8);
    let reference = evolve(&s, 1.0, &StepperConfig::new(2e-3, Scheme::Strang), 1, &mut []).unwrap().state;
    let rk = evolve(&s, 1.0, &StepperConfig::new(0.1, Scheme::AdaptiveRk), 1, &mut []).unwrap();
    assert!(rk.summary.rk_accepted > 0);
    assert!(distance_f(&rk.state, &reference).unwrap() < 1e-5);
}

#[test]
fn observers_follow_the_stride() {
    let s = smooth_state(20, 0.2, 1.0);
    let mut times = Vec::new();
    let mut obs = |sample: &Sample<'_>| times.push(sample.t);
    evolve(&s, 1.05, &StepperConfig::new(0.1, Scheme::Strang), 4, &mut [&mut obs]).unwrap();
    let expected = [0.0, 0.4, 0.8, 1.05];
    assert_eq!(times.len(), expected.len());
    for (t, e) in times.iter().zip(expected) {
        assert!((t - e).abs() < 1e-12);
    }
}

#[test]
fn strang_step_matches_evolve() {
    let s = smooth_state(20, 0.2, 1.0);
    let cfg = StepperConfig::new(0.1, Scheme::Strang);
    let (one, report) = step_strang_dt(&s, 0.1, &cfg).unwrap();
    assert_eq!(report.fp_iterations.len(), 3);
    assert_eq!(evolve(&s, 0.1, &cfg, 1, &mut []).unwrap().state.u, one.u);
}

#[test]
fn invalid_step_is_rejected() {
    let s = smooth_state(4, 0.5, 1.0);
    let err = evolve(&s, 1.0, &StepperConfig::new(-0.1, Scheme::Strang), 1, &mut []).unwrap_err();
    assert!(matches!(err, Error::InvalidParameter(_)));
}
