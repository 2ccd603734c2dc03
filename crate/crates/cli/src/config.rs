//! Run configuration. Every field has a default, so `{}` is a valid config
//! (the free case on the desk grid); unknown keys are rejected.

use std::path::{Path, PathBuf};

use jostlab_core::{log_spaced, InitialState, PotentialSpec, ResonanceTolerance, SpatialGrid};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialSpec,
    pub grid: SpatialGrid,
    pub state: InitialState,
    pub lambda_grid: LambdaGrid,
    pub t_samples: Vec<f64>,
    /// Time for `evolve` when `--t` is not given.
    pub t: Option<f64>,
    pub tolerances: Tolerances,
    pub lambda_max: Option<f64>,
    /// Box for the finite-difference oracle. Wider than the grid so that
    /// reflections off the box walls arrive late.
    pub oracle_grid: SpatialGrid,
    pub depth_scan: DepthRange,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            potential: PotentialSpec::Zero,
            grid: SpatialGrid::desk(),
            state: InitialState::default(),
            lambda_grid: LambdaGrid::default(),
            t_samples: log_spaced(10.0, 80.0, 12),
            t: None,
            tolerances: Tolerances::default(),
            lambda_max: None,
            oracle_grid: SpatialGrid { x_min: -70.0, x_max: 70.0, n_points: 7001 },
            depth_scan: DepthRange::default(),
            output_dir: PathBuf::from("jostlab-out"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        LambdaGrid { min: 0.05, max: 10.0, count: 60 }
    }
}

impl LambdaGrid {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        linspace(self.min, self.max, self.count, "lambda_grid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub tol_ode: f64,
    /// Relative resonance threshold; the absolute one is
    /// `tol_res · (1 + ‖V‖_{L¹₁})`.
    pub tol_res: f64,
    pub tol_scatter: f64,
    pub slope_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_ode: 1e-6, tol_res: 1e-6, tol_scatter: 1e-8, slope_tol: 0.15 }
    }
}

impl Tolerances {
    pub fn resonance(&self) -> ResonanceTolerance {
        ResonanceTolerance { relative: self.tol_res, tol_ode: self.tol_ode }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DepthRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for DepthRange {
    fn default() -> Self {
        DepthRange { min: 0.5, max: 4.0, count: 36 }
    }
}

impl DepthRange {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        if !(self.min > 0.0) {
            return Err(CliError::Usage(format!("depth_scan.min must be positive, got {}", self.min)));
        }
        linspace(self.min, self.max, self.count, "depth_scan")
    }
}

fn linspace(a: f64, b: f64, count: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if count < 2 || !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(CliError::Usage(format!("{what}: need min < max and count >= 2")));
    }
    Ok((0..count).map(|k| a + (b - a) * k as f64 / (count - 1) as f64).collect())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.grid.validate()?;
        self.oracle_grid.validate()?;
        self.potential.validate()?;
        let t = &self.tolerances;
        for (name, value) in
            [("tol_ode", t.tol_ode), ("tol_res", t.tol_res), ("tol_scatter", t.tol_scatter), ("slope_tol", t.slope_tol)]
        {
            if !(value > 0.0) || !value.is_finite() {
                return Err(CliError::Usage(format!("tolerances.{name} must be positive, got {value}")));
            }
        }
        if let Some(l) = self.lambda_max {
            if !(l > 0.0) || !l.is_finite() {
                return Err(CliError::Usage(format!("lambda_max must be positive, got {l}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_the_default() {
        assert_eq!(RunConfig::parse("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn round_trips_through_json() {
        let c = RunConfig {
            potential: PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 },
            lambda_max: Some(12.0),
            ..RunConfig::default()
        };
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), c);
    }

    #[test]
    fn unknown_keys_are_usage_errors() {
        assert!(matches!(RunConfig::parse(r#"{"potentail": {"kind": "zero"}}"#), Err(CliError::Usage(_))));
        assert!(matches!(RunConfig::parse("{"), Err(CliError::Usage(_))));
    }

    #[test]
    fn bad_tolerance_rejected() {
        let e = RunConfig::parse(r#"{"tolerances": {"tol_ode": 0}}"#);
        assert!(matches!(e, Err(CliError::Usage(_))));
    }

    #[test]
    fn lambda_points_cover_the_range() {
        let p = LambdaGrid::default().points().unwrap();
        assert_eq!(p.len(), 60);
        assert_eq!(p[0], 0.05);
        assert!((p[59] - 10.0).abs() < 1e-12);
    }
}
