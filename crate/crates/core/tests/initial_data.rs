use rodwave::initial::{
    eulerian_to_lagrangian, gaussian_derivative_profile, make_cuspon, make_gaussian_derivative, make_peakon,
    make_peakon_train, make_smooth_tw, project_to_grid, CusponProfile, EulerianProfile, FineGrid, SmoothProfile,
    TravelingWaveSpec,
};
use rodwave::observables::to_graph;
use rodwave::{check_admissible, distance_f, invariants, natural_floor, GridSpec, LagrangianState, Parameters};

fn peakon_profile() -> EulerianProfile {
    // the energy table samples x = 0, where the one-sided slopes give the density 2
    EulerianProfile::analytic(40.0, |x| {
        let u = (-x.abs()).exp();
        (u, if x > 0.0 { -u } else { u })
    })
    .unwrap()
}

fn assert_admissible(s: &LagrangianState) {
    let floor = natural_floor(s);
    assert!(floor > 0.0);
    let report = check_admissible(s, floor, 1e-10);
    assert!(report.is_empty(), "{:?}", &report.violations[..report.violations.len().min(5)]);
}

#[test]
fn every_constructor_is_admissible() {
    let g1 = GridSpec::with_radius(0.1, 25.0).unwrap();
    let g2 = GridSpec::with_radius(0.25, 25.0).unwrap();
    assert_admissible(&make_peakon(1.0, 0.0, g1, Parameters::new(1.0).unwrap()));
    assert_admissible(&make_peakon_train(&[(1.0, 0.0), (-1.0, 1.0)], g1, Parameters::new(5.0).unwrap()));
    assert_admissible(&make_smooth_tw(TravelingWaveSpec::new(0.2, 1.0), g2, Parameters::new(0.2).unwrap()).unwrap());
    assert_admissible(&make_cuspon(TravelingWaveSpec::new(5.0, 1.0), g1, Parameters::new(5.0).unwrap()).unwrap());
    assert_admissible(&make_gaussian_derivative(g2, Parameters::new(0.8).unwrap(), FineGrid::default()).unwrap());
}

#[test]
fn projected_data_satisfies_the_cell_identities() {
    let grid = GridSpec::with_radius(0.1, 25.0).unwrap();
    let params = Parameters::new(1.0).unwrap();
    for profile in [peakon_profile(), gaussian_derivative_profile()] {
        let fine = eulerian_to_lagrangian(&profile, FineGrid::default(), grid).unwrap();
        for j in 0..fine.xi.len() {
            assert!((fine.q[j] + fine.h[j] - 1.0).abs() <= 1e-10);
        }
        let s = project_to_grid(&fine, params);
        for k in 0..s.cells() {
            assert_eq!(s.q(k) + s.h[k], 1.0, "cell {k}");
        }
        assert!(invariants(&s).iter().all(|&i| i <= 1e-12));
    }
}

#[test]
fn relabeled_pipeline_has_unit_density() {
    let g = GridSpec::with_radius(0.25, 25.0).unwrap();
    let s = make_smooth_tw(TravelingWaveSpec::new(0.2, 1.0), g, Parameters::new(0.2).unwrap()).unwrap();
    for k in 0..s.cells() {
        assert_eq!(s.q(k), 1.0);
        assert_eq!(s.h[k], s.u[k] * s.u[k] + s.w[k] * s.w[k]);
    }
}

#[test]
fn generic_peakon_energy_and_far_field() {
    let grid = GridSpec::with_radius(0.1, 25.0).unwrap();
    let fine = eulerian_to_lagrangian(&peakon_profile(), FineGrid::default(), grid).unwrap();
    let last = fine.xi.len() - 1;
    assert!((fine.xi[last] - fine.y[last] - 2.0).abs() < 1e-4);
    let s = project_to_grid(&fine, Parameters::new(1.0).unwrap());
    assert!((s.h_plus - 2.0).abs() < 1e-4);
}

/// Largest difference between the points `(xb, ub)` and the graph `(xa, ua)`
/// interpolated linearly at `xb`.
fn interp_mismatch(xa: &[f64], ua: &[f64], xb: &[f64], ub: &[f64]) -> f64 {
    xb.iter()
        .zip(ub)
        .filter(|(&x, _)| x > xa[0] && x < xa[xa.len() - 1])
        .map(|(&x, &u)| {
            let j = xa.partition_point(|&s| s <= x);
            let t = (x - xa[j - 1]) / (xa[j] - xa[j - 1]);
            (ua[j - 1] + t * (ua[j] - ua[j - 1]) - u).abs()
        })
        .fold(0.0, f64::max)
}

fn graph_mismatch(a: &LagrangianState, b: &LagrangianState) -> f64 {
    let (ga, gb) = (to_graph(a), to_graph(b));
    interp_mismatch(&ga.xs(), &ga.us(), &gb.xs(), &gb.us())
}

#[test]
fn relabelings_describe_the_same_peakon() {
    let params = Parameters::new(1.0).unwrap();
    let errors: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&dxi| {
            let grid = GridSpec::with_radius(dxi, 25.0).unwrap();
            let direct = make_peakon(1.0, 0.0, grid, params);
            let fine = eulerian_to_lagrangian(&peakon_profile(), FineGrid::default(), grid).unwrap();
            graph_mismatch(&direct, &project_to_grid(&fine, params))
        })
        .collect();
    assert!(errors[0] < 0.1, "{errors:?}");
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn projection_is_refinement_consistent() {
    let grid = GridSpec::with_radius(0.2, 20.0).unwrap();
    let params = Parameters::new(0.8).unwrap();
    let project = |m| {
        project_to_grid(
            &eulerian_to_lagrangian(&gaussian_derivative_profile(), FineGrid::new(m).unwrap(), grid).unwrap(),
            params,
        )
    };
    let reference = project(256);
    let d16 = distance_f(&project(16), &reference).unwrap();
    let d64 = distance_f(&project(64), &reference).unwrap();
    assert!(d16 < 1e-2, "{d16}");
    assert!(d64 < d16, "{d64} vs {d16}");
}

#[test]
fn gaussian_derivative_energy() {
    // int (x^2 + (x^2 - 1)^2) exp(-x^2) dx = 5 sqrt(pi) / 4
    let exact = 1.25 * std::f64::consts::PI.sqrt();
    let grid = GridSpec::with_radius(0.05, 25.0).unwrap();
    let s = make_gaussian_derivative(grid, Parameters::new(0.8).unwrap(), FineGrid::default()).unwrap();
    assert!((s.h_plus - exact).abs() < 1e-6, "{} vs {exact}", s.h_plus);
}

#[test]
fn gaussian_derivative_graph_is_odd() {
    let grid = GridSpec::with_radius(0.05, 20.0).unwrap();
    let s = make_gaussian_derivative(grid, Parameters::new(0.8).unwrap(), FineGrid::default()).unwrap();
    // cell averages sit at the cell midpoints
    let y = s.y_values();
    let xs: Vec<f64> = y.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    let us = &s.u[..xs.len()];
    let rx: Vec<f64> = xs.iter().rev().map(|x| -x).collect();
    let ru: Vec<f64> = us.iter().rev().map(|u| -u).collect();
    let m = interp_mismatch(&xs, us, &rx, &ru);
    assert!(m < 2e-3, "{m}");
}

#[test]
fn smooth_profile_oracle() {
    let spec = TravelingWaveSpec::new(0.2, 1.0);
    let p = SmoothProfile::compute(spec, 0.25 / 32.0, 30.0).unwrap();
    assert!(p.max_residual() <= 1e-8);
    assert_eq!(p.eval(0.0).0, 1.0);
    let samples: Vec<f64> = (0..200).map(|k| p.eval(0.1 * k as f64).0).collect();
    assert!(samples.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn smooth_profile_flattens_as_gamma_decreases() {
    let width = |gamma: f64| {
        let p = SmoothProfile::compute(TravelingWaveSpec::new(gamma, 1.0), 0.01, 20.0).unwrap();
        (0..2000).map(|k| 0.01 * k as f64).find(|&x| p.eval(x).0 < 0.5).unwrap()
    };
    let ws: Vec<f64> = [0.6, 0.3, 0.1].iter().map(|&g| width(g)).collect();
    assert!(ws.windows(2).all(|w| w[1] > w[0]), "{ws:?}");
}

#[test]
fn cuspon_closed_form_energy_at_crest() {
    let g = GridSpec::with_radius(0.1, 25.0).unwrap();
    let s = make_cuspon(TravelingWaveSpec::new(5.0, 1.0), g, Parameters::new(5.0).unwrap()).unwrap();
    let n = g.n_half();
    assert_eq!(s.u[n], 0.2);
    assert!((s.h[n] - 0.16).abs() <= 1e-10);
    let p = CusponProfile::new(TravelingWaveSpec::new(5.0, 1.0)).unwrap();
    for xi in [0.3, 1.0, 3.0] {
        assert!(p.ode_residual(xi) < 1e-12);
    }
}
