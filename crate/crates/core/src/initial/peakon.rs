//! Peakon data in the `y = xi` relabeling.

use crate::grid::{GridSpec, Parameters};
use crate::state::LagrangianState;

use super::assemble_relabeled;

/// `u` and the one-sided slopes `(u_x(x-), u_x(x+))` of a peakon superposition.
fn one_sided(peaks: &[(f64, f64)], x: f64) -> (f64, f64, f64) {
    peaks.iter().fold((0.0, 0.0, 0.0), |(u, l, r), &(c, x0)| {
        let p = c * (-(x - x0).abs()).exp();
        let (sl, sr) = if x < x0 {
            (p, p)
        } else if x > x0 {
            (-p, -p)
        } else {
            (p, -p)
        };
        (u + p, l + sl, r + sr)
    })
}

/// `(u, u_x)` of a superposition of peakons `c exp(-|x - x0|)`.
///
/// At a crest the derivative is the mean of its one-sided limits.
pub fn peakon_train_eval(peaks: &[(f64, f64)], x: f64) -> (f64, f64) {
    let (u, l, r) = one_sided(peaks, x);
    (u, 0.5 * (l + r))
}

/// Single peakon `c exp(-|x - x0|)` with `y0 = xi`, `q0 = 1`, `h0 = U0^2 + w0^2`.
///
/// A node sitting on the crest gets the means of the one-sided limits of
/// `w` and `h`, so its invariant is `-c^2` instead of zero.
pub fn make_peakon(c: f64, x0: f64, grid: GridSpec, params: Parameters) -> LagrangianState {
    make_peakon_train(&[(c, x0)], grid, params)
}

/// Superposed peakons given as `(c, x0)` pairs, e.g. `[(1, 0), (-1, 1)]`
/// for the peakon-antipeakon datum.
pub fn make_peakon_train(peaks: &[(f64, f64)], grid: GridSpec, params: Parameters) -> LagrangianState {
    let samples = grid.nodes().map(|x| {
        let (u, l, r) = one_sided(peaks, x);
        (u, 0.5 * (l + r), u * u + 0.5 * (l * l + r * r))
    });
    assemble_relabeled(grid, params, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariants;

    fn params() -> Parameters {
        Parameters::new(1.0).unwrap()
    }

    #[test]
    fn unit_peakon_energy() {
        let g = GridSpec::new(500, 0.05).unwrap();
        let s = make_peakon(1.0, 0.0, g, params());
        for k in 0..s.cells() {
            let xi = g.xi(k);
            assert!((s.u[k] - (-xi.abs()).exp()).abs() < 1e-15);
            assert!((s.h[k] - 2.0 * (-2.0 * xi.abs()).exp()).abs() < 1e-14);
        }
        assert!((s.h_plus - 2.0).abs() < 0.02);
        let inv = invariants(&s);
        for k in 0..s.cells() {
            let expected = if g.index(k) == 0 { -1.0 } else { 0.0 };
            assert!((inv[k] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn off_node_crest_has_zero_invariants() {
        let g = GridSpec::new(50, 0.1).unwrap();
        let s = make_peakon(1.0, 0.05, g, params());
        assert!(invariants(&s).iter().all(|i| i.abs() < 1e-15));
    }

    #[test]
    fn antipeakon_is_mirror() {
        let g = GridSpec::new(20, 0.1).unwrap();
        let a = make_peakon(1.0, 0.0, g, params());
        let b = make_peakon(-1.0, 0.0, g, params());
        for k in 0..a.cells() {
            assert_eq!(a.u[k], -b.u[k]);
            assert_eq!(a.w[k], -b.w[k]);
            assert_eq!(a.h[k], b.h[k]);
        }
    }

    #[test]
    fn peakon_antipeakon_superposition() {
        let g = GridSpec::new(20, 0.1).unwrap();
        let s = make_peakon_train(&[(1.0, 0.0), (-1.0, 1.0)], g, params());
        for k in 0..s.cells() {
            let x = g.xi(k);
            let u = (-x.abs()).exp() - (-(x - 1.0).abs()).exp();
            assert!((s.u[k] - u).abs() < 1e-15);
        }
    }

    #[test]
    fn crest_slope_is_mean_of_limits() {
        assert_eq!(peakon_train_eval(&[(2.0, 0.0)], 0.0), (2.0, 0.0));
        let (u, l, r) = one_sided(&[(2.0, 0.0)], 0.0);
        assert_eq!((u, l, r), (2.0, 2.0, -2.0));
    }
}
