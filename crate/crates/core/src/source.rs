//! Nonlocal source terms `P` and `Q`.
//!
//! Both are convolutions of the cell integrand
//! `a_j = (3 - 2 gamma)/2 U_j^2 q_j + gamma/2 h_j`
//! against the Helmholtz kernel `exp(-|y_i - y_j|) / 2`, written in label
//! space as
//!
//! ```text
//! P_i =  dxi/2 * ( L_i + a_i + R_i )    L_i = sum_{j < i} exp(-(y_i - y_j)) a_j
//! Q_i = -dxi/2 * ( L_i - R_i )          R_i = sum_{j > i} exp(-(y_j - y_i)) a_j
//! ```
//!
//! The kernel `sgn(xi - eta) exp(-|y(xi) - y(eta)|)` of `Q` vanishes on the
//! diagonal, so the own cell enters `P` only. The kernel is sampled with `y`
//! at the left endpoint of each cell.

use crate::error::{Error, Result};
use crate::state::LagrangianState;

/// Per-cell values of the cut-off source terms.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceTerms {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl SourceTerms {
    pub fn zeros(cells: usize) -> Self {
        Self { p: vec![0.0; cells], q: vec![0.0; cells] }
    }
}

/// Cell integrand `a_j` of the source terms.
pub fn integrand_a(state: &LagrangianState) -> Vec<f64> {
    let gamma = state.gamma();
    let cu = 0.5 * (3.0 - 2.0 * gamma);
    let ch = 0.5 * gamma;
    (0..state.cells()).map(|k| cu * state.u[k] * state.u[k] * state.q(k) + ch * state.h[k]).collect()
}

/// O(N^2) summation. Valid for any `y`, monotone or not.
pub fn source_terms_direct(state: &LagrangianState) -> SourceTerms {
    let a = integrand_a(state);
    let y = state.y_values();
    let n = a.len();
    let half = 0.5 * state.grid.dxi();
    let mut out = SourceTerms::zeros(n);
    for i in 0..n {
        let mut left = 0.0;
        for j in 0..i {
            left += (-(y[i] - y[j])).exp() * a[j];
        }
        let mut right = 0.0;
        for j in i + 1..n {
            right += (-(y[j] - y[i])).exp() * a[j];
        }
        out.p[i] = half * (left + a[i] + right);
        out.q[i] = -half * (left - right);
    }
    out
}

/// O(N) evaluation by a forward and a backward recursion.
///
/// Only incremental factors `exp(-(y_i - y_{i-1}))` are formed, which stay
/// in `(0, 1]` as long as `y` is nondecreasing. A decreasing step is reported
/// as [`Error::NonMonotoneY`] so the caller can fall back to
/// [`source_terms_direct`].
pub fn source_terms_fast(state: &LagrangianState) -> Result<SourceTerms> {
    let y = state.y_values();
    if let Some(index) = (1..y.len()).find(|&k| y[k] < y[k - 1]) {
        return Err(Error::NonMonotoneY { index });
    }
    let a = integrand_a(state);
    let n = a.len();
    let dxi = state.grid.dxi();

    let mut left = vec![0.0; n];
    for i in 1..n {
        left[i] = (-(y[i] - y[i - 1])).exp() * (left[i - 1] + a[i - 1] * dxi);
    }
    let mut right = vec![0.0; n];
    for i in (0..n - 1).rev() {
        right[i] = (-(y[i + 1] - y[i])).exp() * (right[i + 1] + a[i + 1] * dxi);
    }

    let p = (0..n).map(|i| 0.5 * (left[i] + a[i] * dxi + right[i])).collect();
    let q = left.iter().zip(&right).map(|(l, r)| -0.5 * (l - r)).collect();
    Ok(SourceTerms { p, q })
}

/// Fast path with fallback to direct summation. The flag reports a fallback.
pub fn source_terms(state: &LagrangianState) -> (SourceTerms, bool) {
    match source_terms_fast(state) {
        Ok(terms) => (terms, false),
        Err(err) => {
            log::debug!("{err}; using direct summation");
            (source_terms_direct(state), true)
        }
    }
}
