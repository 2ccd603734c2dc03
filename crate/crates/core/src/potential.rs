//! Spatial grids, the potential corpus, and weighted `L¹` norms.
//!
//! Weighted norms use the Japanese bracket `⟨x⟩ = (1 + x²)^{1/2}`:
//! `‖V‖_{L¹_σ} = ∫ ⟨x⟩^σ |V(x)| dx`. The norms for `σ = 0..=4` decide which
//! of the decay statements apply to a given potential.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{trapezoid, GAUSS3_OFFSETS};

/// Uniform grid on `[x_min, x_max]` with `n_points` nodes, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let grid = SpatialGrid { x_min, x_max, n_points };
        grid.validate()?;
        Ok(grid)
    }

    /// `[-40, 40]` with 4001 nodes (`h = 0.02`).
    pub fn desk() -> Self {
        SpatialGrid { x_min: -40.0, x_max: 40.0, n_points: 4001 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite()) {
            return Err(Error::InvalidGrid("non-finite bounds".into()));
        }
        if self.n_points < 3 {
            return Err(Error::InvalidGrid(format!("n_points = {} < 3", self.n_points)));
        }
        if !(self.x_min < 0.0 && 0.0 < self.x_max) {
            return Err(Error::InvalidGrid(format!("grid [{}, {}] must straddle the origin", self.x_min, self.x_max)));
        }
        let k = self.matching_index();
        if self.x(k).abs() > 0.5 * self.spacing() + 1e-12 {
            return Err(Error::InvalidGrid("no node within h/2 of the origin".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        // Interpolating between the endpoints keeps nodes such as x = ±1
        // exact on the desk grid.
        let s = i as f64 / (self.n_points - 1) as f64;
        self.x_min + (self.x_max - self.x_min) * s
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Node nearest to `x = 0`, where Wronskians are evaluated.
    pub fn matching_index(&self) -> usize {
        let i = (-self.x_min / self.spacing()).round();
        (i.max(0.0) as usize).min(self.n_points - 1)
    }

    /// Index of the node at `x`, if `x` is a node up to a small tolerance.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let h = self.spacing();
        let s = (x - self.x_min) / h;
        let i = s.round();
        if i < 0.0 || i > (self.n_points - 1) as f64 {
            return None;
        }
        if (self.x(i as usize) - x).abs() <= 1e-9 * h.max(1.0) {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Same interval, `factor` times as many cells.
    pub fn refined(&self, factor: usize) -> Self {
        SpatialGrid { x_min: self.x_min, x_max: self.x_max, n_points: (self.n_points - 1) * factor + 1 }
    }
}

/// The potential corpus. Serialized as `{"kind": "...", "params": {...}}`.
///
/// Every built-in kind is attractive (`V ≤ 0`), real and even. Tables are
/// even unless flagged `asymmetric`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum PotentialSpec {
    Zero,
    /// `V = -depth` on `|x| < halfwidth`.
    SquareWell {
        depth: f64,
        halfwidth: f64,
    },
    /// `V = -n(n+1) sech²x`; reflectionless for integer `n`.
    PoschlTeller {
        strength: u32,
    },
    /// `V = -depth · exp(-x² / (2 width²))`.
    GaussianWell {
        depth: f64,
        width: f64,
    },
    /// Linearly interpolated samples.
    CustomTable {
        x: Vec<f64>,
        v: Vec<f64>,
        #[serde(default)]
        asymmetric: bool,
    },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidPotential(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            PotentialSpec::Zero => Ok(()),
            PotentialSpec::SquareWell { depth, halfwidth } => {
                positive("depth", *depth)?;
                positive("halfwidth", *halfwidth)
            }
            PotentialSpec::PoschlTeller { strength } => {
                if *strength == 0 {
                    Err(Error::InvalidPotential("strength must be >= 1".into()))
                } else {
                    Ok(())
                }
            }
            PotentialSpec::GaussianWell { depth, width } => {
                positive("depth", *depth)?;
                positive("width", *width)
            }
            PotentialSpec::CustomTable { x, v, .. } => {
                if x.len() != v.len() || x.len() < 2 {
                    return Err(Error::InvalidPotential(
                        "custom table needs at least two x/value pairs of equal length".into(),
                    ));
                }
                if x.iter().chain(v).any(|a| !a.is_finite()) {
                    return Err(Error::InvalidPotential("custom table has non-finite entries".into()));
                }
                if x.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidPotential("custom table x values must be strictly increasing".into()));
                }
                Ok(())
            }
        }
    }

    /// Points where `V` or its derivative jumps. Cells containing one are
    /// integrated piecewise so the solver keeps its order there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            PotentialSpec::SquareWell { halfwidth, .. } => vec![-halfwidth, *halfwidth],
            PotentialSpec::CustomTable { x, .. } => x.clone(),
            _ => Vec::new(),
        }
    }

    pub fn is_even(&self) -> bool {
        match self {
            PotentialSpec::CustomTable { asymmetric, .. } => !asymmetric,
            _ => true,
        }
    }

    /// Point value. Jumps of the square well take the mean of both sides so
    /// that trapezoid sums stay second order across them.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::SquareWell { depth, halfwidth } => {
                let d = x.abs() - halfwidth;
                if d.abs() <= 1e-12 * halfwidth.max(1.0) {
                    -0.5 * depth
                } else if d < 0.0 {
                    -depth
                } else {
                    0.0
                }
            }
            PotentialSpec::PoschlTeller { strength } => {
                let n = *strength as f64;
                let c = x.cosh();
                -n * (n + 1.0) / (c * c)
            }
            PotentialSpec::GaussianWell { depth, width } => -depth * (-x * x / (2.0 * width * width)).exp(),
            PotentialSpec::CustomTable { x: xs, v, .. } => interpolate(xs, v, x),
        }
    }

    /// The same well with a different depth; only wells with a depth
    /// parameter support this.
    pub fn with_depth(&self, depth: f64) -> Result<PotentialSpec> {
        let spec = match self {
            PotentialSpec::SquareWell { halfwidth, .. } => PotentialSpec::SquareWell { depth, halfwidth: *halfwidth },
            PotentialSpec::GaussianWell { width, .. } => PotentialSpec::GaussianWell { depth, width: *width },
            other => {
                return Err(Error::InvalidPotential(format!("{} has no depth parameter", other.label())));
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Short label for file names and reports.
    pub fn label(&self) -> &'static str {
        match self {
            PotentialSpec::Zero => "zero",
            PotentialSpec::SquareWell { .. } => "square_well",
            PotentialSpec::PoschlTeller { .. } => "poschl_teller",
            PotentialSpec::GaussianWell { .. } => "gaussian_well",
            PotentialSpec::CustomTable { .. } => "custom_table",
        }
    }
}

fn interpolate(xs: &[f64], vs: &[f64], x: f64) -> f64 {
    if x < xs[0] || x > xs[xs.len() - 1] {
        return 0.0;
    }
    let k = xs.partition_point(|&a| a <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let s = (x - x0) / (x1 - x0);
    vs[k - 1] + s * (vs[k] - vs[k - 1])
}

/// `V` sampled on a grid, with the weighted norms precomputed.
#[derive(Clone, Debug)]
pub struct SampledPotential {
    grid: SpatialGrid,
    spec: PotentialSpec,
    values: Vec<f64>,
    /// `V` at the three Gauss–Legendre points of every cell, used by the
    /// cell propagators and the cell quadratures.
    gauss: Vec<[f64; 3]>,
    /// Breakpoints strictly inside the grid, ascending.
    breaks: Vec<f64>,
    norms: [f64; 5],
    compact_support: Option<(f64, f64)>,
}

/// Sample `spec` on `grid` and compute the weighted norms for `σ = 0..=4`.
pub fn build_potential(spec: &PotentialSpec, grid: &SpatialGrid) -> Result<SampledPotential> {
    grid.validate()?;
    spec.validate()?;
    if let PotentialSpec::CustomTable { x, .. } = spec {
        let lo = x[0];
        let hi = x[x.len() - 1];
        let slack = 1e-9 * grid.spacing();
        if lo > grid.x_min + slack || hi < grid.x_max - slack {
            return Err(Error::InvalidPotential(format!(
                "custom table covers [{lo}, {hi}], grid needs [{}, {}]",
                grid.x_min, grid.x_max
            )));
        }
    }
    let h = grid.spacing();
    let values: Vec<f64> = (0..grid.len()).map(|i| spec.eval(grid.x(i))).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidPotential(format!("non-finite sample at x = {}", grid.x(i))));
    }
    let gauss: Vec<[f64; 3]> = (0..grid.len() - 1)
        .map(|j| {
            let x0 = grid.x(j);
            GAUSS3_OFFSETS.map(|c| spec.eval(x0 + c * h))
        })
        .collect();

    let mut norms = [0.0; 5];
    for (sigma, slot) in norms.iter_mut().enumerate() {
        *slot = weighted_trapezoid(grid, &values, sigma as f64);
    }

    let first = values.iter().position(|v| *v != 0.0);
    let last = values.iter().rposition(|v| *v != 0.0);
    let compact_support = match (first, last) {
        (None, _) | (_, None) => Some((0.0, 0.0)),
        (Some(a), Some(b)) if a > 0 && b < grid.len() - 1 => Some((grid.x(a - 1), grid.x(b + 1))),
        _ => None,
    };

    let mut breaks: Vec<f64> = spec.breakpoints().into_iter().filter(|p| grid.x_min < *p && *p < grid.x_max).collect();
    breaks.sort_by(f64::total_cmp);

    Ok(SampledPotential { grid: *grid, spec: spec.clone(), values, gauss, breaks, norms, compact_support })
}

fn weighted_trapezoid(grid: &SpatialGrid, values: &[f64], sigma: f64) -> f64 {
    let integrand: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let x = grid.x(i);
            (1.0 + x * x).powf(0.5 * sigma) * v.abs()
        })
        .collect();
    trapezoid(&integrand, grid.spacing())
}

impl SampledPotential {
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn gauss_values(&self) -> &[[f64; 3]] {
        &self.gauss
    }

    /// Breakpoints in the open interval `(a, b)`, ignoring ones that sit on
    /// an end up to rounding.
    pub(crate) fn breaks_in(&self, a: f64, b: f64) -> &[f64] {
        let eps = 1e-12 * self.grid.spacing().max(1.0);
        let lo = self.breaks.partition_point(|p| *p <= a + eps);
        let hi = self.breaks.partition_point(|p| *p < b - eps);
        &self.breaks[lo..hi.max(lo)]
    }

    /// `‖⟨x⟩^σ V‖₁` for `σ = 0..=4`.
    pub fn norms(&self) -> &[f64; 5] {
        &self.norms
    }

    /// `‖V‖_{L¹}`.
    pub fn l1_norm(&self) -> f64 {
        self.norms[0]
    }

    /// Support interval when the samples vanish identically near both grid
    /// ends; `Some((0, 0))` for the zero potential.
    pub fn compact_support(&self) -> Option<(f64, f64)> {
        self.compact_support
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// `∫ ⟨x⟩^σ |V(x)| dx` by the trapezoid rule.
    pub fn weighted_norm(&self, sigma: f64) -> Result<f64> {
        if !sigma.is_finite() {
            return Err(Error::InvalidInput(format!("sigma must be finite, got {sigma}")));
        }
        Ok(weighted_trapezoid(&self.grid, &self.values, sigma))
    }

    /// Tail mass `I(ρ) = ∫_{|t| > ρ} |V(t)| dt`.
    ///
    /// Computed as `‖V‖₁` minus the integral over `[-ρ, ρ]`, where the inner
    /// integral uses the piecewise-linear interpolant of `|V|`, so `I` is
    /// non-increasing in `ρ` and `I(0) = ‖V‖₁`.
    pub fn tail_mass(&self, rho: f64) -> Result<f64> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidInput(format!("rho must be finite and >= 0, got {rho}")));
        }
        let inner = self.linear_integral(-rho, rho);
        Ok((self.norms[0] - inner).max(0.0))
    }

    /// `∫_a^b |V|` of the piecewise-linear interpolant through the nodes.
    fn linear_integral(&self, a: f64, b: f64) -> f64 {
        let g = &self.grid;
        let (a, b) = (a.max(g.x_min), b.min(g.x_max));
        if b <= a {
            return 0.0;
        }
        let h = g.spacing();
        let abs_at = |x: f64| -> f64 {
            let s = ((x - g.x_min) / h).clamp(0.0, (g.len() - 1) as f64);
            let j = (s.floor() as usize).min(g.len() - 2);
            let f = s - j as f64;
            (1.0 - f) * self.values[j].abs() + f * self.values[j + 1].abs()
        };
        // Nodes strictly inside (a, b).
        let first = ((a - g.x_min) / h).floor() as usize + 1;
        let last = ((b - g.x_min) / h).ceil() as usize - 1;
        if first > last {
            return 0.5 * (abs_at(a) + abs_at(b)) * (b - a);
        }
        let mut total = 0.5 * (abs_at(a) + self.values[first].abs()) * (g.x(first) - a);
        for j in first..last {
            total += 0.5 * (self.values[j].abs() + self.values[j + 1].abs()) * h;
        }
        total += 0.5 * (self.values[last].abs() + abs_at(b)) * (b - g.x(last));
        total
    }

    /// Smallest symmetric radius outside which `|V| ≤ threshold` on the grid.
    pub fn support_radius(&self, threshold: f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > threshold)
            .map(|(i, _)| self.grid.x(i).abs())
            .fold(0.0, f64::max)
    }

    /// Same potential sampled on another grid.
    pub fn resample(&self, grid: &SpatialGrid) -> Result<SampledPotential> {
        build_potential(&self.spec, grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn well() -> SampledPotential {
        build_potential(&PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 }, &SpatialGrid::desk()).unwrap()
    }

    /// Adaptive Simpson used as an independent quadrature oracle.
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        #[allow(clippy::too_many_arguments)]
        fn rec(
            f: &dyn Fn(f64) -> f64,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                    + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
            }
        }
        let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, 50)
    }

    #[test]
    fn grid_validation() {
        assert!(SpatialGrid::new(-1.0, 1.0, 2).is_err());
        assert!(SpatialGrid::new(0.5, 1.0, 10).is_err());
        assert!(SpatialGrid::new(-1.0, 1.0, 3).is_ok());
        let g = SpatialGrid::desk();
        assert_eq!(g.spacing(), 0.02);
        assert_eq!(g.x(g.matching_index()), 0.0);
        assert_eq!(g.x(2050), 1.0);
        assert_eq!(g.index_of(-1.0), Some(1950));
        assert_eq!(g.index_of(-0.99), None);
        assert_eq!(g.index_of(0.011), None);
    }

    #[test]
    fn zero_potential_has_zero_norms() {
        let v = build_potential(&PotentialSpec::Zero, &SpatialGrid::desk()).unwrap();
        assert!(v.values().iter().all(|&x| x == 0.0));
        assert_eq!(v.norms(), &[0.0; 5]);
        assert_eq!(v.weighted_norm(3.0).unwrap(), 0.0);
        assert!(v.is_zero());
    }

    #[test]
    fn square_well_norms() {
        let v = well();
        assert!((v.l1_norm() - 2.0).abs() < 1e-12);
        // ∫_{-1}^{1} √(1+x²) dx = √2 + asinh(1), checked against adaptive Simpson.
        let oracle = adaptive_simpson(&|x: f64| (1.0 + x * x).sqrt(), -1.0, 1.0, 1e-13);
        assert!((oracle - (2f64.sqrt() + 1f64.asinh())).abs() < 1e-12);
        assert!((v.norms()[1] - oracle).abs() < 1e-4, "{} vs {oracle}", v.norms()[1]);
        let (a, b) = v.compact_support().unwrap();
        assert!((a + 1.02).abs() < 1e-12 && (b - 1.02).abs() < 1e-12);
    }

    #[test]
    fn poschl_teller_weighted_norm_matches_quadrature() {
        let v = build_potential(&PotentialSpec::PoschlTeller { strength: 1 }, &SpatialGrid::desk()).unwrap();
        let f = |x: f64| (1.0 + x * x).powf(1.5) * 2.0 / x.cosh().powi(2);
        let oracle = 2.0 * adaptive_simpson(&f, 0.0, 40.0, 1e-12);
        let got = v.weighted_norm(3.0).unwrap();
        assert!((got - oracle).abs() < 1e-4 * oracle, "{got} vs {oracle}");
        assert!(v.compact_support().is_none());
    }

    #[test]
    fn tail_mass_examples() {
        let v = well();
        assert!((v.tail_mass(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(v.tail_mass(2.0).unwrap(), 0.0);
        assert!((v.tail_mass(0.0).unwrap() - v.l1_norm()).abs() <= 1e-12 * v.l1_norm());

        let pt = build_potential(&PotentialSpec::PoschlTeller { strength: 1 }, &SpatialGrid::desk()).unwrap();
        let oracle = 2.0 * adaptive_simpson(&|t: f64| 2.0 / t.cosh().powi(2), 2.0, 40.0, 1e-13);
        assert!((pt.tail_mass(2.0).unwrap() - oracle).abs() < 1e-4, "{}", oracle);
        assert!(v.tail_mass(-1.0).is_err());
    }

    #[test]
    fn norms_converge_at_second_order() {
        let spec = PotentialSpec::GaussianWell { depth: 1.5, width: 0.8 };
        let coarse = build_potential(&spec, &SpatialGrid::new(-20.0, 20.0, 201).unwrap()).unwrap();
        let fine = coarse.resample(&coarse.grid().refined(2)).unwrap();
        let h = coarse.grid().spacing();
        for s in 0..5 {
            let d = (coarse.norms()[s] - fine.norms()[s]).abs();
            assert!(d < 2.0 * h * h, "sigma={s}: {d}");
        }
    }

    #[test]
    fn custom_table_interpolates_and_checks_coverage() {
        let grid = SpatialGrid::new(-2.0, 2.0, 41).unwrap();
        let spec = PotentialSpec::CustomTable { x: vec![-2.0, 0.0, 2.0], v: vec![0.0, -1.0, 0.0], asymmetric: false };
        let v = build_potential(&spec, &grid).unwrap();
        assert!((v.values()[10] + 0.5).abs() < 1e-12);
        assert!((v.l1_norm() - 2.0).abs() < 1e-12);

        let short = PotentialSpec::CustomTable { x: vec![-1.0, 1.0], v: vec![0.0, 0.0], asymmetric: true };
        assert!(matches!(build_potential(&short, &grid), Err(Error::InvalidPotential(_))));
        assert!(!short.is_even());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = SpatialGrid::desk();
        assert!(build_potential(&PotentialSpec::SquareWell { depth: -1.0, halfwidth: 1.0 }, &g).is_err());
        assert!(build_potential(&PotentialSpec::PoschlTeller { strength: 0 }, &g).is_err());
        let nan = PotentialSpec::CustomTable { x: vec![-50.0, 50.0], v: vec![f64::NAN, 0.0], asymmetric: false };
        assert!(build_potential(&nan, &g).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let s = PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"square_well","params":{"depth":1.0,"halfwidth":1.0}}"#);
        let z: PotentialSpec = serde_json::from_str(r#"{"kind":"zero"}"#).unwrap();
        assert_eq!(z, PotentialSpec::Zero);
        let p: PotentialSpec = serde_json::from_str(r#"{"kind":"poschl_teller","params":{"strength":1}}"#).unwrap();
        assert_eq!(p, PotentialSpec::PoschlTeller { strength: 1 });
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn tail_mass_is_monotone(depth in 0.1f64..5.0, width in 0.2f64..3.0, a in 0.0f64..10.0, b in 0.0f64..10.0) {
                let grid = SpatialGrid::new(-20.0, 20.0, 801).unwrap();
                let v = build_potential(&PotentialSpec::GaussianWell { depth, width }, &grid).unwrap();
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                prop_assert!(v.tail_mass(lo).unwrap() >= v.tail_mass(hi).unwrap() - 1e-14);
                prop_assert!((v.tail_mass(0.0).unwrap() - v.l1_norm()).abs() <= 1e-12 * v.l1_norm());
            }

            #[test]
            fn weighted_norms_are_monotone_in_sigma(depth in 0.1f64..5.0, halfwidth in 0.1f64..5.0) {
                let v = build_potential(&PotentialSpec::SquareWell { depth, halfwidth }, &SpatialGrid::desk()).unwrap();
                for w in v.norms().windows(2) {
                    prop_assert!(w[1] >= w[0]);
                }
            }
        }
    }
}
