use serde::{Deserialize, Serialize};

use crate::grid::{GridSpec, Parameters};

/// Discrete Lagrangian state `(zeta, U, H, v, w, h)` on a uniform label grid.
///
/// `y = xi + zeta` are the characteristics, `q = 1 + v` the Lagrangian
/// density, `w` and `h` the (decoupled) derivatives of `U` and `H`.
/// Outside `[-R, R)` the state is described by the boundary constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangianState {
    pub zeta: Vec<f64>,
    pub u: Vec<f64>,
    /// Cumulative energy `H`.
    pub energy: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    /// Energy density `h`.
    pub h: Vec<f64>,
    pub zeta_minus: f64,
    pub zeta_plus: f64,
    /// Total energy carried to the right of the domain.
    pub h_plus: f64,
    pub grid: GridSpec,
    pub params: Parameters,
}

/// Time derivative of the six cell arrays. Boundary constants never move.
#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    pub zeta: Vec<f64>,
    pub u: Vec<f64>,
    pub energy: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub h: Vec<f64>,
}

impl Tangent {
    pub fn zeros(cells: usize) -> Self {
        let z = vec![0.0; cells];
        Self { zeta: z.clone(), u: z.clone(), energy: z.clone(), v: z.clone(), w: z.clone(), h: z }
    }

    pub fn fields(&self) -> [&[f64]; 6] {
        [&self.zeta, &self.u, &self.energy, &self.v, &self.w, &self.h]
    }

    pub fn fields_mut(&mut self) -> [&mut Vec<f64>; 6] {
        [&mut self.zeta, &mut self.u, &mut self.energy, &mut self.v, &mut self.w, &mut self.h]
    }

    /// Elementwise sum, used to check that the split fields add up.
    pub fn add(&self, other: &Tangent) -> Tangent {
        let mut out = self.clone();
        for (dst, src) in out.fields_mut().into_iter().zip(other.fields()) {
            dst.iter_mut().zip(src).for_each(|(a, b)| *a += b);
        }
        out
    }
}

impl LagrangianState {
    /// The zero state: `y = xi`, `q = 1`, no velocity and no energy.
    pub fn zero(grid: GridSpec, params: Parameters) -> Self {
        let z = vec![0.0; grid.cells()];
        Self {
            zeta: z.clone(),
            u: z.clone(),
            energy: z.clone(),
            v: z.clone(),
            w: z.clone(),
            h: z,
            zeta_minus: 0.0,
            zeta_plus: 0.0,
            h_plus: 0.0,
            grid,
            params,
        }
    }

    pub fn cells(&self) -> usize {
        self.grid.cells()
    }

    pub fn gamma(&self) -> f64 {
        self.params.gamma
    }

    pub fn y(&self, k: usize) -> f64 {
        self.grid.xi(k) + self.zeta[k]
    }

    pub fn q(&self, k: usize) -> f64 {
        1.0 + self.v[k]
    }

    pub fn y_values(&self) -> Vec<f64> {
        (0..self.cells()).map(|k| self.y(k)).collect()
    }

    pub fn q_values(&self) -> Vec<f64> {
        self.v.iter().map(|v| 1.0 + v).collect()
    }

    pub fn fields(&self) -> [&[f64]; 6] {
        [&self.zeta, &self.u, &self.energy, &self.v, &self.w, &self.h]
    }

    pub fn fields_mut(&mut self) -> [&mut Vec<f64>; 6] {
        [&mut self.zeta, &mut self.u, &mut self.energy, &mut self.v, &mut self.w, &mut self.h]
    }

    /// `self + dt * t` on every cell array.
    pub fn add_scaled(&self, dt: f64, t: &Tangent) -> LagrangianState {
        let mut out = self.clone();
        for (dst, src) in out.fields_mut().into_iter().zip(t.fields()) {
            dst.iter_mut().zip(src).for_each(|(a, b)| *a += dt * b);
        }
        out
    }

    /// Average `(self + other) / 2` of the cell arrays.
    pub fn midpoint(&self, other: &LagrangianState) -> LagrangianState {
        let mut out = self.clone();
        for (dst, src) in out.fields_mut().into_iter().zip(other.fields()) {
            dst.iter_mut().zip(src).for_each(|(a, b)| *a = 0.5 * (*a + b));
        }
        out
    }

    /// Right boundary energy recomputed from the last cell, as reported in outputs.
    pub fn refresh_h_plus(&mut self) {
        let n = self.cells();
        self.h_plus = self.energy[n - 1] + self.grid.dxi() * self.h[n - 1];
    }

    /// Total energy `dxi * sum h_i`.
    pub fn total_energy(&self) -> f64 {
        self.grid.dxi() * self.h.iter().sum::<f64>()
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.iter().all(|x| x.is_finite()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_accessors() {
        let grid = GridSpec::new(2, 0.5).unwrap();
        let mut s = LagrangianState::zero(grid, Parameters::new(1.0).unwrap());
        s.zeta[1] = 0.25;
        s.v[2] = -0.5;
        assert_eq!(s.y(1), -0.5 + 0.25);
        assert_eq!(s.q(2), 0.5);
        assert_eq!(s.y_values(), vec![-1.0, -0.25, 0.0, 0.5]);
    }

    #[test]
    fn add_scaled_and_midpoint() {
        let grid = GridSpec::new(1, 1.0).unwrap();
        let s = LagrangianState::zero(grid, Parameters::new(1.0).unwrap());
        let mut t = Tangent::zeros(2);
        t.u = vec![1.0, 2.0];
        let s2 = s.add_scaled(0.5, &t);
        assert_eq!(s2.u, vec![0.5, 1.0]);
        assert_eq!(s.midpoint(&s2).u, vec![0.25, 0.5]);
    }
}
