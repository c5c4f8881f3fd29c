use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower and upper end of the physically meaningful range of the material constant.
pub const PHYSICAL_GAMMA_RANGE: (f64, f64) = (-29.4760, 3.4174);

/// Material parameters of the rod equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub gamma: f64,
}

impl Parameters {
    /// Values outside the physical range are accepted with a warning.
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma must be finite, got {gamma}")));
        }
        let (lo, hi) = PHYSICAL_GAMMA_RANGE;
        if gamma < lo || gamma > hi {
            log::warn!("gamma = {gamma} lies outside the physical range [{lo}, {hi}]");
        }
        Ok(Self { gamma })
    }
}

/// Uniform grid `xi_i = i * dxi` for `i = -N .. N-1`, truncated at `R = N * dxi`.
///
/// Cells are stored with offset `k = i + N`, so array index `k` covers
/// `[xi_i, xi_{i+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    n_half: usize,
    dxi: f64,
    r: f64,
}

impl GridSpec {
    pub fn new(n_half: usize, dxi: f64) -> Result<Self> {
        if n_half == 0 {
            return Err(Error::InvalidParameter("grid needs at least one cell per half-line".into()));
        }
        if !(dxi > 0.0 && dxi.is_finite()) {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {dxi}")));
        }
        Ok(Self { n_half, dxi, r: n_half as f64 * dxi })
    }

    /// Grid with `N = round(r / dxi)` cells per half-line.
    pub fn with_radius(dxi: f64, r: f64) -> Result<Self> {
        if !(dxi > 0.0 && dxi.is_finite()) || !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("bad grid dxi = {dxi}, r = {r}")));
        }
        Self::new((r / dxi).round().max(1.0) as usize, dxi)
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn dxi(&self) -> f64 {
        self.dxi
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Total number of cells, `2N`.
    pub fn cells(&self) -> usize {
        2 * self.n_half
    }

    /// Signed cell index `i` of array position `k`.
    pub fn index(&self, k: usize) -> i64 {
        k as i64 - self.n_half as i64
    }

    /// Left endpoint `xi_i` of the cell stored at array position `k`.
    pub fn xi(&self, k: usize) -> f64 {
        self.index(k) as f64 * self.dxi
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.cells()).map(|k| self.xi(k))
    }
}
