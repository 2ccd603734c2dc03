//! Initial data `ψ` for the evolution experiments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::potential::SpatialGrid;

/// Initial wave functions, serialized like potentials:
/// `{"kind": "gaussian", "params": {"center": 0.0, "width": 1.0}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum InitialState {
    /// `exp(-(x - center)² / (2 width²))`.
    Gaussian { center: f64, width: f64 },
    /// `x · exp(-x² / (2 width²))`, odd about the origin.
    OddGaussian { width: f64 },
    /// `1 / (1 + (x / width)²)`. Its weighted `L¹` norms diverge.
    Lorentzian { width: f64 },
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::Gaussian { center: 0.0, width: 1.0 }
    }
}

impl InitialState {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            InitialState::Gaussian { center, width } => {
                let s = (x - center) / width;
                (-0.5 * s * s).exp()
            }
            InitialState::OddGaussian { width } => {
                let s = x / width;
                x * (-0.5 * s * s).exp()
            }
            InitialState::Lorentzian { width } => {
                let s = x / width;
                1.0 / (1.0 + s * s)
            }
        }
    }

    pub fn sample(&self, grid: &SpatialGrid) -> Vec<Complex64> {
        (0..grid.len()).map(|i| Complex64::new(self.eval(grid.x(i)), 0.0)).collect()
    }

    pub fn sample_at(&self, xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(self.eval(x), 0.0)).collect()
    }

    /// False when the data has algebraic tails, so no weighted `L¹` norm of
    /// positive order is finite.
    pub fn decays_rapidly(&self) -> bool {
        !matches!(self, InitialState::Lorentzian { .. })
    }
}
