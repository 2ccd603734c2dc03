//! Scattering coefficients and zero-energy classification.
//!
//! With `W(λ) = W[f₊, f₋]` and `W̃(λ) = W[f₋(·,λ), f₊(·,-λ)]`:
//!
//! ```text
//! α = W̃ / (-2iλ),  β = W / (-2iλ),  T = 1/β,  R = α/β,  |β|² - |α|² = 1.
//! ```
//!
//! Zero energy is a resonance exactly when `W(0) = 0`. In that case `f₊(·,0)`
//! and `f₋(·,0)` are bounded multiples of one real solution `f₀`, normalized
//! so that `f₀(+∞)² + f₀(-∞)² = 2` and `f₀(+∞) > 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jost::{solve_jost_with_tol, wronskians_with_tol, Direction, JostSolution, DEFAULT_TOL_ODE};
use crate::potential::{build_potential, PotentialSpec, SampledPotential, SpatialGrid};
use crate::quadrature::trapezoid_c;

/// Default bound on `||β|² - |α|² - 1|` before a row is flagged.
pub const DEFAULT_TOL_SCATTER: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum RowStatus {
    Ok,
    /// Unitarity defect above `tol_scatter`.
    Flagged,
    /// The Jost solver failed; numeric fields are NaN.
    Failed(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScatteringRow {
    pub lambda: f64,
    pub w: Complex64,
    pub w_tilde: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub transmission: Complex64,
    pub reflection: Complex64,
    pub unitarity_defect: f64,
    pub status: RowStatus,
}

impl ScatteringRow {
    /// Coefficients at a single nonzero `λ` (negative values allowed).
    pub fn compute(v: &SampledPotential, lambda: f64) -> Result<ScatteringRow> {
        Self::compute_with_tol(v, lambda, DEFAULT_TOL_ODE)
    }

    pub fn compute_with_tol(v: &SampledPotential, lambda: f64, tol_ode: f64) -> Result<ScatteringRow> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidInput(format!("scattering needs finite lambda != 0, got {lambda}")));
        }
        let wp = wronskians_with_tol(v, lambda, tol_ode)?;
        let denom = Complex64::new(0.0, -2.0 * lambda);
        let alpha = wp.w_tilde / denom;
        let beta = wp.w / denom;
        let unitarity_defect = (beta.norm_sqr() - alpha.norm_sqr() - 1.0).abs();
        Ok(ScatteringRow {
            lambda,
            w: wp.w,
            w_tilde: wp.w_tilde,
            alpha,
            beta,
            transmission: beta.inv(),
            reflection: alpha / beta,
            unitarity_defect,
            status: RowStatus::Ok,
        })
    }

    fn failed(lambda: f64, reason: String) -> ScatteringRow {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        ScatteringRow {
            lambda,
            w: nan,
            w_tilde: nan,
            alpha: nan,
            beta: nan,
            transmission: nan,
            reflection: nan,
            unitarity_defect: f64::NAN,
            status: RowStatus::Failed(reason),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScatteringTable {
    pub rows: Vec<ScatteringRow>,
    pub tol_scatter: f64,
}

impl ScatteringTable {
    pub const CSV_HEADER: &'static str = "lambda,re_W,im_W,re_Wt,im_Wt,re_T,im_T,re_R,im_R,unitarity_defect";

    /// Largest unitarity defect over rows that did not fail.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !matches!(r.status, RowStatus::Failed(_)))
            .map(|r| r.unitarity_defect)
            .fold(0.0, f64::max)
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::Failed(_))).count()
    }

    pub fn flagged_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Flagged).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.lambda,
                r.w.re,
                r.w.im,
                r.w_tilde.re,
                r.w_tilde.im,
                r.transmission.re,
                r.transmission.im,
                r.reflection.re,
                r.reflection.im,
                r.unitarity_defect
            ));
        }
        out
    }
}

pub fn scattering_table(v: &SampledPotential, lambdas: &[f64]) -> Result<ScatteringTable> {
    scattering_table_with_tol(v, lambdas, DEFAULT_TOL_ODE, DEFAULT_TOL_SCATTER)
}

/// One row per `λ`. Jost failures produce a `Failed` row instead of an error;
/// only invalid `λ` values are rejected outright.
pub fn scattering_table_with_tol(
    v: &SampledPotential,
    lambdas: &[f64],
    tol_ode: f64,
    tol_scatter: f64,
) -> Result<ScatteringTable> {
    if let Some(bad) = lambdas.iter().find(|l| !(**l > 0.0) || !l.is_finite()) {
        return Err(Error::InvalidInput(format!("scattering table needs lambda > 0, got {bad}")));
    }
    let rows = lambdas
        .iter()
        .map(|&lambda| match ScatteringRow::compute_with_tol(v, lambda, tol_ode) {
            Ok(mut row) => {
                if !(row.unitarity_defect <= tol_scatter) {
                    row.status = RowStatus::Flagged;
                }
                row
            }
            Err(e) => ScatteringRow::failed(lambda, e.to_string()),
        })
        .collect();
    Ok(ScatteringTable { rows, tol_scatter })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Generic,
    Resonant,
}

/// `tol_res = relative · (1 + ‖V‖_{L¹₁})`, plus the Jost tolerance used for
/// the zero-energy solutions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceTolerance {
    pub relative: f64,
    pub tol_ode: f64,
}

impl Default for ResonanceTolerance {
    fn default() -> Self {
        ResonanceTolerance { relative: 1e-6, tol_ode: DEFAULT_TOL_ODE }
    }
}

impl ResonanceTolerance {
    pub fn for_potential(&self, v: &SampledPotential) -> f64 {
        self.relative * (1.0 + v.norms()[1])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub w0: Complex64,
    pub classification: Classification,
    pub tol_res: f64,
    pub alpha0: Option<f64>,
    pub beta0: Option<f64>,
    /// `f₀` at the grid nodes; resonant case only.
    #[serde(skip)]
    pub f0: Option<Vec<f64>>,
    pub norm_check: Option<f64>,
    pub grid: SpatialGrid,
}

impl ResonanceReport {
    pub fn is_resonant(&self) -> bool {
        self.classification == Classification::Resonant
    }

    fn require_f0(&self) -> Result<&[f64]> {
        self.f0.as_deref().ok_or_else(|| Error::Hypothesis("zero energy is not a resonance for this potential".into()))
    }

    /// `f₀(x)` at any point; outside the grid the constant asymptotic value
    /// is used, since `V` vanishes there.
    pub fn f0_at(&self, x: f64) -> Result<f64> {
        let f0 = self.require_f0()?;
        let g = &self.grid;
        if x >= g.x_max {
            return Ok(f0[f0.len() - 1]);
        }
        if x <= g.x_min {
            return Ok(f0[0]);
        }
        let s = (x - g.x_min) / g.spacing();
        let i = (s.floor() as usize).min(f0.len() - 2);
        let w = s - i as f64;
        Ok(f0[i] * (1.0 - w) + f0[i + 1] * w)
    }

    /// `⟨ψ, f₀⟩ = ∫ ψ f₀` for `ψ` sampled on the report's grid.
    pub fn overlap(&self, psi: &[Complex64]) -> Result<Complex64> {
        let f0 = self.require_f0()?;
        if psi.len() != f0.len() {
            return Err(Error::InvalidInput(format!("state has {} samples, grid has {}", psi.len(), f0.len())));
        }
        let prod: Vec<Complex64> = psi.iter().zip(f0).map(|(p, f)| p * *f).collect();
        Ok(trapezoid_c(&prod, self.grid.spacing()))
    }
}

pub fn detect_resonance(v: &SampledPotential) -> Result<ResonanceReport> {
    detect_resonance_with(v, ResonanceTolerance::default())
}

/// Classify zero energy from `W(0)`, computed directly at `λ = 0`.
///
/// `|W(0)| ≤ tol/10` is resonant, `|W(0)| ≥ 10·tol` is generic; anything in
/// between is reported as [`Error::NearResonant`].
pub fn detect_resonance_with(v: &SampledPotential, tol: ResonanceTolerance) -> Result<ResonanceReport> {
    let tol_res = tol.for_potential(v);
    let w0 = wronskians_with_tol(v, 0.0, tol.tol_ode)?.w;
    let grid = *v.grid();
    let w_abs = w0.norm();
    if w_abs >= 10.0 * tol_res {
        return Ok(ResonanceReport {
            w0,
            classification: Classification::Generic,
            tol_res,
            alpha0: None,
            beta0: None,
            f0: None,
            norm_check: None,
            grid,
        });
    }
    if w_abs > tol_res / 10.0 {
        return Err(Error::NearResonant { w0_abs: w_abs, tol: tol_res });
    }
    let minus = solve_jost_with_tol(v, 0.0, Direction::Minus, tol.tol_ode)?;
    let plus = solve_jost_with_tol(v, 0.0, Direction::Plus, tol.tol_ode)?;
    let n = grid.len();
    let a_minus = zero_energy_value(&minus, n - 1);
    let a_plus = zero_energy_value(&plus, 0);
    let beta0 = 0.5 * (a_minus + a_plus);
    let alpha0 = 0.5 * (a_minus - a_plus);
    let scale = a_minus.signum() * ((1.0 + (beta0 + alpha0).powi(2)) / 2.0).sqrt();
    let f0: Vec<f64> = (0..n).map(|i| zero_energy_value(&minus, i) / scale).collect();
    let norm_check = f0[n - 1].powi(2) + f0[0].powi(2);
    Ok(ResonanceReport {
        w0,
        classification: Classification::Resonant,
        tol_res,
        alpha0: Some(alpha0),
        beta0: Some(beta0),
        f0: Some(f0),
        norm_check: Some(norm_check),
        grid,
    })
}

fn zero_energy_value(sol: &JostSolution, i: usize) -> f64 {
    sol.m[i].re
}

/// `P₀ψ = ⟨ψ, f₀⟩ f₀` on the report's grid.
pub fn project_resonance(psi: &[Complex64], report: &ResonanceReport) -> Result<Vec<Complex64>> {
    let c = report.overlap(psi)?;
    Ok(report.require_f0()?.iter().map(|f| c * *f).collect())
}

/// `W(0)` against well depth.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DepthScan {
    pub depths: Vec<f64>,
    pub w0: Vec<f64>,
    pub tol_res: Vec<f64>,
}

impl DepthScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("depth,w0,abs_w0,tol_res\n");
        for ((d, w), t) in self.depths.iter().zip(&self.w0).zip(&self.tol_res) {
            out.push_str(&format!("{},{},{},{}\n", d, w, w.abs(), t));
        }
        out
    }

    /// Consecutive depth pairs across which `W(0)` changes sign.
    pub fn brackets(&self) -> Vec<(f64, f64)> {
        self.depths
            .windows(2)
            .zip(self.w0.windows(2))
            .filter(|(_, w)| w[0].signum() != w[1].signum())
            .map(|(d, _)| (d[0], d[1]))
            .collect()
    }
}

/// Real `W(0)` and `tol_res` for `spec` rescaled to `depth`.
pub fn zero_energy_wronskian(
    spec: &PotentialSpec,
    depth: f64,
    grid: &SpatialGrid,
    tol: ResonanceTolerance,
) -> Result<(f64, f64)> {
    let v = build_potential(&spec.with_depth(depth)?, grid)?;
    Ok((wronskians_with_tol(&v, 0.0, tol.tol_ode)?.w.re, tol.for_potential(&v)))
}

pub fn depth_scan(
    spec: &PotentialSpec,
    depths: &[f64],
    grid: &SpatialGrid,
    tol: ResonanceTolerance,
) -> Result<DepthScan> {
    let mut scan = DepthScan { depths: depths.to_vec(), w0: Vec::new(), tol_res: Vec::new() };
    for &d in depths {
        let (w, t) = zero_energy_wronskian(spec, d, grid, tol)?;
        scan.w0.push(w);
        scan.tol_res.push(t);
    }
    Ok(scan)
}

/// Bisect a sign change of `W(0)` in `[lo, hi]` until `|W(0)| ≤ tol_res/10`.
pub fn bisect_resonant_depth(
    spec: &PotentialSpec,
    lo: f64,
    hi: f64,
    grid: &SpatialGrid,
    tol: ResonanceTolerance,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut wa, _) = zero_energy_wronskian(spec, a, grid, tol)?;
    let (wb, _) = zero_energy_wronskian(spec, b, grid, tol)?;
    if wa.signum() == wb.signum() {
        return Err(Error::InvalidInput(format!("W(0) does not change sign on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let (wm, t) = zero_energy_wronskian(spec, m, grid, tol)?;
        if wm.abs() <= t / 10.0 || b - a <= 4.0 * f64::EPSILON * m {
            return Ok(m);
        }
        if wm.signum() == wa.signum() {
            a = m;
            wa = wm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
