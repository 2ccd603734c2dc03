//! Evolution operators.
//!
//! The flow is `u(t) = e^{itH} P_ac(H) ψ`, evaluated through
//!
//! ```text
//! u(t, x) = (1/πi) ∫_ℝ e^{itλ²} λ [R_V⁺(λ²) ψ](x) dλ
//! ```
//!
//! with the outgoing resolvent kernel `R(x, y) = f₊(x, λ) f₋(y, λ) / W(λ)` for
//! `x ≥ y`. For `V = 0` this is `(i / 2λ) e^{iλ|x-y|}` and the flow has kernel
//! `(-4πit)^{-1/2} e^{-i(x-y)²/(4t)}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jost::JostPair;
use crate::potential::{SampledPotential, SpatialGrid};
use crate::quadrature::{
    cumulative_from_left, cumulative_to_right, gauss_legendre, trapezoid_c, GAUSS3_OFFSETS, GAUSS3_WEIGHTS,
};
use crate::scattering::ResonanceReport;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest `|t|` accepted by the evolution routines.
pub const T_MIN: f64 = 0.1;

/// Default cap on the number of λ nodes of the spectral integral.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Spectral,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub panels: usize,
    pub nodes: usize,
    pub lambda_max: f64,
    /// Size of the truncation-tail correction, a proxy for the error of
    /// cutting the λ integral at `lambda_max`.
    pub est_error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvolutionResult {
    pub t: f64,
    pub x: Vec<f64>,
    pub u: Vec<Complex64>,
    pub method: Method,
    pub diagnostics: Option<Diagnostics>,
}

impl EvolutionResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re_u,im_u\n");
        for (x, u) in self.x.iter().zip(&self.u) {
            out.push_str(&format!("{},{},{}\n", x, u.re, u.im));
        }
        out
    }

    /// `{t, method, panels, est_error}` sidecar.
    pub fn diagnostics_json(&self) -> serde_json::Value {
        let d = self.diagnostics;
        serde_json::json!({
            "t": self.t,
            "method": self.method,
            "panels": d.map(|d| d.panels).unwrap_or(0),
            "nodes": d.map(|d| d.nodes).unwrap_or(0),
            "lambda_max": d.map(|d| d.lambda_max),
            "est_error": d.map(|d| d.est_error).unwrap_or(0.0),
        })
    }

    pub fn sup_norm(&self) -> f64 {
        self.u.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest pointwise difference against another result on the same points.
    pub fn sup_difference(&self, other: &EvolutionResult) -> f64 {
        self.u.iter().zip(&other.u).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() < T_MIN {
        return Err(Error::InvalidInput(format!("|t| must be at least {T_MIN}, got {t}")));
    }
    Ok(())
}

/// `(-4πit)^{-1/2}` on the principal branch.
pub fn free_prefactor(t: f64) -> Complex64 {
    Complex64::new(0.0, -4.0 * std::f64::consts::PI * t).sqrt().inv()
}

/// Exact free evolution of `ψ(x) = e^{-x²/2}`:
/// `(1 - 2it)^{-1/2} e^{-x²/(2(1 - 2it))}`.
pub fn free_gaussian(x: f64, t: f64) -> Complex64 {
    let d = Complex64::new(1.0, -2.0 * t);
    d.sqrt().inv() * (-(x * x) / (2.0 * d)).exp()
}

/// Free evolution by direct quadrature of the convolution with the free
/// kernel, evaluated at the grid nodes.
pub fn free_evolve(grid: &SpatialGrid, psi: &[Complex64], t: f64) -> Result<EvolutionResult> {
    free_evolve_at(grid, psi, t, &grid.nodes())
}

/// As [`free_evolve`], at arbitrary observation points.
pub fn free_evolve_at(grid: &SpatialGrid, psi: &[Complex64], t: f64, xs: &[f64]) -> Result<EvolutionResult> {
    check_time(t)?;
    check_len(grid, psi)?;
    let h = grid.spacing();
    let pref = free_prefactor(t);
    let peak = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let support: Vec<(f64, Complex64)> = psi
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > 1e-17 * peak)
        .map(|(i, z)| {
            let w = if i == 0 || i == psi.len() - 1 { 0.5 } else { 1.0 };
            (grid.x(i), z * (w * h))
        })
        .collect();
    let u = xs
        .iter()
        .map(|&x| {
            let s: Complex64 =
                support.iter().map(|(y, p)| p * Complex64::from_polar(1.0, -(x - y) * (x - y) / (4.0 * t))).sum();
            pref * s
        })
        .collect();
    Ok(EvolutionResult { t, x: xs.to_vec(), u, method: Method::ClosedForm, diagnostics: None })
}

fn check_len(grid: &SpatialGrid, psi: &[Complex64]) -> Result<()> {
    if psi.len() != grid.len() {
        return Err(Error::InvalidInput(format!("state has {} samples, grid has {}", psi.len(), grid.len())));
    }
    Ok(())
}

/// Smooth even cutoff `χ` equal to one on `[-λ₀, λ₀]` and vanishing outside
/// `[-2λ₀, 2λ₀]`, and its dilate `χ̃(λ) = χ(λ/4)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub lambda0: f64,
}

impl CutoffSpec {
    /// Requires `λ₀ ≥ ‖V‖₁`.
    pub fn new(lambda0: f64, v: &SampledPotential) -> Result<Self> {
        if !(lambda0 > 0.0) || !lambda0.is_finite() {
            return Err(Error::InvalidInput(format!("lambda0 must be positive, got {lambda0}")));
        }
        if lambda0 < v.l1_norm() {
            return Err(Error::InvalidInput(format!("lambda0 = {lambda0} is below ||V||_1 = {}", v.l1_norm())));
        }
        Ok(CutoffSpec { lambda0 })
    }

    /// `λ₀ = max(‖V‖₁, 1)`.
    pub fn for_potential(v: &SampledPotential) -> Self {
        CutoffSpec { lambda0: v.l1_norm().max(1.0) }
    }

    pub fn profile(&self, lambda: f64) -> f64 {
        let s = (lambda.abs() - self.lambda0) / self.lambda0;
        if s <= 0.0 {
            return 1.0;
        }
        if s >= 1.0 {
            return 0.0;
        }
        let g = |u: f64| (-1.0 / u).exp();
        g(1.0 - s) / (g(1.0 - s) + g(s))
    }

    pub fn tilde_profile(&self, lambda: f64) -> f64 {
        self.profile(lambda / 4.0)
    }

    /// Default truncation of the spectral integral, `max(8, 4λ₀)`.
    pub fn lambda_max(&self) -> f64 {
        (4.0 * self.lambda0).max(8.0)
    }
}

/// `R_V⁺(λ²)(x, y)` from Jost solutions; `x` and `y` must be grid nodes.
pub fn resolvent_kernel(v: &SampledPotential, lambda: f64, x: f64, y: f64) -> Result<Complex64> {
    let grid = v.grid();
    let node = |p: f64| grid.index_of(p).ok_or_else(|| Error::InvalidInput(format!("{p} is not a grid node")));
    let (i, j) = (node(x)?, node(y)?);
    let pair = JostPair::new(v, lambda);
    let w = checked_wronskian(&pair)?;
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    Ok(pair.plus[hi] * pair.minus[lo] / w)
}

fn checked_wronskian(pair: &JostPair) -> Result<Complex64> {
    let w = pair.w();
    if !(w.norm() > 1e-12 * (1.0 + pair.lambda.abs())) {
        return Err(Error::SingularKernel(format!("W({}) = {w} vanishes", pair.lambda)));
    }
    Ok(w)
}

/// Scratch buffers for applying the Jost resolvent to a state.
#[derive(Default)]
struct Workspace {
    integrand: Vec<Complex64>,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
}

/// `[R_V(λ²)ψ](x_j)` at every node, with the Jost data conjugated when
/// `negative` is set (which yields the kernel at `-λ`).
///
/// The trapezoid rule is applied on either side of the diagonal; the kink of
/// the kernel there (`∂_y R` jumps by `-1`) is corrected by `-(h²/12) ψ(x_j)`,
/// leaving an `O(h⁴)` error.
fn apply_resolvent(
    pair: &JostPair,
    w: Complex64,
    psi: &[Complex64],
    h: f64,
    negative: bool,
    ws: &mut Workspace,
) -> (Vec<Complex64>, Complex64, Complex64) {
    let cj = |z: Complex64| if negative { z.conj() } else { z };
    let inv_w = cj(w).inv();
    ws.integrand.clear();
    ws.integrand.extend(pair.minus.iter().zip(psi).map(|(f, p)| cj(*f) * p));
    cumulative_from_left(&ws.integrand, h, &mut ws.left);
    ws.integrand.clear();
    ws.integrand.extend(pair.plus.iter().zip(psi).map(|(f, p)| cj(*f) * p));
    cumulative_to_right(&ws.integrand, h, &mut ws.right);
    let kink = h * h / 12.0;
    let out = (0..psi.len())
        .map(|j| (cj(pair.plus[j]) * ws.left[j] + cj(pair.minus[j]) * ws.right[j]) * inv_w - psi[j] * kink)
        .collect();
    let total_left = *ws.left.last().unwrap() * inv_w;
    let total_right = ws.right[0] * inv_w;
    (out, total_left, total_right)
}

/// `⟨R_V⁺(λ²)ψ, φ⟩ = ∫ (R_V ψ) φ̄` with the Jost kernel.
pub fn jost_quadratic_form(
    v: &SampledPotential,
    lambda: f64,
    psi: &[Complex64],
    phi: &[Complex64],
) -> Result<Complex64> {
    let grid = v.grid();
    check_len(grid, psi)?;
    check_len(grid, phi)?;
    let pair = JostPair::new(v, lambda);
    let w = checked_wronskian(&pair)?;
    let (r, _, _) = apply_resolvent(&pair, w, psi, grid.spacing(), false, &mut Workspace::default());
    let prod: Vec<Complex64> = r.iter().zip(phi).map(|(a, b)| a * b.conj()).collect();
    Ok(trapezoid_c(&prod, grid.spacing()))
}

/// Partial sums of the Born series for `⟨R_V⁺(λ²)ψ, φ⟩`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BornSum {
    pub value: Complex64,
    /// `|⟨R₀(-VR₀)^K ψ, φ⟩|`, the size of the last term kept.
    pub last_term: f64,
    pub terms: Vec<Complex64>,
}

/// `Σ_{k=0}^{K} ⟨R₀⁺(-VR₀⁺)^k ψ, φ⟩`.
///
/// Each application of `R₀` integrates `e^{∓iλy} f(y)` cell by cell with
/// three-point Gauss–Legendre quadrature. Values at the Gauss points come
/// from the cubic Hermite interpolant of the previous iterate, whose
/// derivative is known exactly from the structure of `R₀`.
///
/// Refuses `2|λ| < ‖V‖₁`, where the series need not converge, unless
/// `allow_divergent` is set.
pub fn born_resolvent(
    v: &SampledPotential,
    lambda: f64,
    psi: &[Complex64],
    phi: &[Complex64],
    k_max: usize,
    allow_divergent: bool,
) -> Result<BornSum> {
    let grid = v.grid();
    check_len(grid, psi)?;
    check_len(grid, phi)?;
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("Born series needs finite lambda != 0, got {lambda}")));
    }
    let norm = v.l1_norm();
    if 2.0 * lambda.abs() < norm && !allow_divergent {
        return Err(Error::BornDivergence { two_lambda: 2.0 * lambda.abs(), norm });
    }
    let h = grid.spacing();
    let n = grid.len();
    let gauss_v = v.gauss_values();
    let mut f_gauss: Vec<[Complex64; 3]> = (0..n - 1).map(|j| lagrange_at_gauss(psi, j)).collect();
    let mut terms = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let (val, dval) = free_resolvent_nodes(grid, &f_gauss, lambda);
        let prod: Vec<Complex64> = val.iter().zip(phi).map(|(a, b)| a * b.conj()).collect();
        terms.push(trapezoid_c(&prod, h));
        if k == k_max {
            break;
        }
        for j in 0..n - 1 {
            for (q, c) in GAUSS3_OFFSETS.iter().enumerate() {
                let vq = hermite(val[j], dval[j], val[j + 1], dval[j + 1], h, *c);
                f_gauss[j][q] = -gauss_v[j][q] * vq;
            }
        }
    }
    let value = terms.iter().sum();
    let last_term = terms.last().map(|z| z.norm()).unwrap_or(0.0);
    Ok(BornSum { value, last_term, terms })
}

/// `R₀f` and `∂ₓR₀f` at the nodes, given `f` at the Gauss points of each cell:
/// `R₀f(x) = (i/2λ)[e^{iλx} ∫_{-∞}^x e^{-iλy} f + e^{-iλx} ∫_x^∞ e^{iλy} f]`.
fn free_resolvent_nodes(
    grid: &SpatialGrid,
    f_gauss: &[[Complex64; 3]],
    lambda: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = grid.len();
    let h = grid.spacing();
    let cell = |j: usize, sign: f64| -> Complex64 {
        let x0 = grid.x(j);
        (0..3)
            .map(|q| {
                let y = x0 + GAUSS3_OFFSETS[q] * h;
                f_gauss[j][q] * Complex64::from_polar(GAUSS3_WEIGHTS[q] * h, sign * lambda * y)
            })
            .sum()
    };
    let mut a = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n - 1 {
        a[j + 1] = a[j] + cell(j, -1.0);
    }
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    for j in (0..n - 1).rev() {
        b[j] = b[j + 1] + cell(j, 1.0);
    }
    let c = I / (2.0 * lambda);
    let mut val = Vec::with_capacity(n);
    let mut dval = Vec::with_capacity(n);
    for j in 0..n {
        let e = Complex64::from_polar(1.0, lambda * grid.x(j));
        let (pa, pb) = (e * a[j], e.conj() * b[j]);
        val.push(c * (pa + pb));
        dval.push(-0.5 * (pa - pb));
    }
    (val, dval)
}

fn hermite(v0: Complex64, d0: Complex64, v1: Complex64, d1: Complex64, h: f64, s: f64) -> Complex64 {
    let s2 = s * s;
    let s3 = s2 * s;
    v0 * (2.0 * s3 - 3.0 * s2 + 1.0)
        + d0 * (h * (s3 - 2.0 * s2 + s))
        + v1 * (3.0 * s2 - 2.0 * s3)
        + d1 * (h * (s3 - s2))
}

/// Four-point Lagrange interpolation of node values at the Gauss points of
/// cell `j`, with the stencil shifted inward at the ends.
fn lagrange_at_gauss(values: &[Complex64], j: usize) -> [Complex64; 3] {
    let n = values.len();
    if n < 4 {
        return GAUSS3_OFFSETS.map(|c| values[j] * (1.0 - c) + values[j + 1] * c);
    }
    let start = j.saturating_sub(1).min(n - 4);
    GAUSS3_OFFSETS.map(|c| {
        let s = (j - start) as f64 + c;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            let mut l = 1.0;
            for m in 0..4 {
                if m != k {
                    l *= (s - m as f64) / (k as f64 - m as f64);
                }
            }
            acc += values[start + k] * l;
        }
        acc
    })
}

#[derive(Clone, Copy, Debug)]
enum Observation {
    Node(usize),
    Right(f64),
    Left(f64),
}

/// Spectral evaluation of `e^{itH} P_ac(H) ψ`.
///
/// The λ integral is folded onto `[0, Λ]` and covered by eight-point
/// Gauss–Legendre panels, each spanning at most `π` of the phase
/// `|t|λ² + Xλ` where `X` bounds `|x - y|` over observation and source
/// points. One λ grid serves all requested times.
#[derive(Clone, Debug)]
pub struct SpectralPropagator<'a> {
    v: &'a SampledPotential,
    lambda_max: f64,
    node_budget: usize,
    max_panel: f64,
}

impl<'a> SpectralPropagator<'a> {
    pub fn new(v: &'a SampledPotential, cutoff: CutoffSpec) -> Self {
        SpectralPropagator { v, lambda_max: cutoff.lambda_max(), node_budget: DEFAULT_NODE_BUDGET, max_panel: 0.25 }
    }

    pub fn with_lambda_max(mut self, lambda_max: f64) -> Self {
        self.lambda_max = lambda_max;
        self
    }

    pub fn with_node_budget(mut self, budget: usize) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Evolution at the grid nodes.
    pub fn evolve(&self, psi: &[Complex64], t: f64) -> Result<EvolutionResult> {
        let xs = self.v.grid().nodes();
        Ok(self.evolve_many(psi, &[t], &xs)?.remove(0))
    }

    /// Evolution at several times and arbitrary observation points. Points
    /// inside the grid must be nodes; points outside use the exact
    /// plane-wave form of the Jost solutions there.
    pub fn evolve_many(&self, psi: &[Complex64], ts: &[f64], xs: &[f64]) -> Result<Vec<EvolutionResult>> {
        let grid = self.v.grid();
        check_len(grid, psi)?;
        if ts.is_empty() {
            return Ok(Vec::new());
        }
        for &t in ts {
            check_time(t)?;
        }
        if !(self.lambda_max > 0.0) || !self.lambda_max.is_finite() {
            return Err(Error::InvalidInput(format!("lambda_max must be positive, got {}", self.lambda_max)));
        }
        let obs = xs
            .iter()
            .map(|&x| {
                if x > grid.x_max {
                    Ok(Observation::Right(x))
                } else if x < grid.x_min {
                    Ok(Observation::Left(x))
                } else {
                    grid.index_of(x).map(Observation::Node).ok_or_else(|| {
                        Error::InvalidInput(format!("observation point {x} is inside the grid but not a node"))
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;

        let peak = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let psi_radius = psi
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 1e-14 * peak)
            .map(|(i, _)| grid.x(i).abs())
            .fold(0.0, f64::max);
        let v_radius = self.v.support_radius(1e-14 * self.v.values().iter().fold(0.0f64, |m, v| m.max(v.abs())));
        let x_obs = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let phase_x = x_obs + psi_radius.max(v_radius);
        let t_abs = ts.iter().fold(0.0f64, |m, t| m.max(t.abs()));

        let panels = self.panels(t_abs, phase_x)?;
        let (gl_x, gl_w) = gauss_legendre(8);
        let nodes = panels.len() * 8;

        let mut acc = vec![vec![Complex64::new(0.0, 0.0); obs.len()]; ts.len()];
        let mut ws = Workspace::default();
        let mut g = vec![Complex64::new(0.0, 0.0); obs.len()];
        for &(a, b) in &panels {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (z, wq) in gl_x.iter().zip(&gl_w) {
                let lambda = mid + half * z;
                self.spectral_density(psi, lambda, &obs, &mut ws, &mut g)?;
                let weight = wq * half;
                for (ti, &t) in ts.iter().enumerate() {
                    let ph = Complex64::from_polar(weight, t * lambda * lambda);
                    for (u, gx) in acc[ti].iter_mut().zip(&g) {
                        *u += ph * gx;
                    }
                }
            }
        }

        // ∫_Λ^∞ e^{itλ²} G dλ ≈ -e^{itΛ²} G(Λ) / (2itΛ).
        let lm = self.lambda_max;
        self.spectral_density(psi, lm, &obs, &mut ws, &mut g)?;
        let scale = (I * std::f64::consts::PI).inv();
        let mut out = Vec::with_capacity(ts.len());
        for (ti, &t) in ts.iter().enumerate() {
            let tail_factor = -Complex64::from_polar(1.0, t * lm * lm) / (2.0 * I * t * lm);
            let mut est_error = 0.0f64;
            let u: Vec<Complex64> = acc[ti]
                .iter()
                .zip(&g)
                .map(|(u, gx)| {
                    let tail = scale * tail_factor * gx;
                    est_error = est_error.max(tail.norm());
                    scale * u + tail
                })
                .collect();
            out.push(EvolutionResult {
                t,
                x: xs.to_vec(),
                u,
                method: Method::Spectral,
                diagnostics: Some(Diagnostics { panels: panels.len(), nodes, lambda_max: lm, est_error }),
            });
        }
        Ok(out)
    }

    fn panels(&self, t: f64, x: f64) -> Result<Vec<(f64, f64)>> {
        let pi = std::f64::consts::PI;
        let mut panels = Vec::new();
        let mut a = 0.0;
        while a < self.lambda_max {
            // t(2aΔ + Δ²) + xΔ = π
            let b = 2.0 * t * a + x;
            let width = (2.0 * pi) / (b + (b * b + 4.0 * t * pi).sqrt());
            let width = width.min(self.max_panel).min(self.lambda_max - a);
            panels.push((a, a + width));
            a += width;
            if panels.len() * 8 > self.node_budget {
                let remaining = ((self.lambda_max - a) / width).ceil() as usize;
                return Err(Error::QuadratureBudget {
                    needed: (panels.len() + remaining) * 8,
                    budget: self.node_budget,
                });
            }
            if self.lambda_max - a < 1e-12 * self.lambda_max {
                break;
            }
        }
        Ok(panels)
    }

    /// `g(λ) + g(-λ)` with `g(λ) = λ [R_V⁺(λ²)ψ](x)`, at the observation points.
    fn spectral_density(
        &self,
        psi: &[Complex64],
        lambda: f64,
        obs: &[Observation],
        ws: &mut Workspace,
        out: &mut [Complex64],
    ) -> Result<()> {
        let h = self.v.grid().spacing();
        let pair = JostPair::new(self.v, lambda);
        let w = checked_wronskian(&pair)?;
        let (rp, lp, rtp) = apply_resolvent(&pair, w, psi, h, false, ws);
        let (rm, lm, rtm) = apply_resolvent(&pair, w, psi, h, true, ws);
        for (o, slot) in obs.iter().zip(out.iter_mut()) {
            let (plus, minus) = match *o {
                Observation::Node(j) => (rp[j], rm[j]),
                Observation::Right(x) => {
                    let e = Complex64::from_polar(1.0, lambda * x);
                    (e * lp, e.conj() * lm)
                }
                Observation::Left(x) => {
                    let e = Complex64::from_polar(1.0, -lambda * x);
                    (e * rtp, e.conj() * rtm)
                }
            };
            *slot = (plus - minus) * lambda;
        }
        Ok(())
    }
}

/// `e^{itH} P_ac(H) ψ` at the grid nodes with the default truncation.
pub fn evolve_ac(v: &SampledPotential, psi: &[Complex64], t: f64, cutoff: CutoffSpec) -> Result<EvolutionResult> {
    SpectralPropagator::new(v, cutoff).evolve(psi, t)
}

/// Stationary-phase leading term `(-4πit)^{-1/2} ⟨ψ, f₀⟩ f₀(x)` of the
/// resonant evolution, at the points `xs`.
pub fn resonance_leading_term(
    report: &ResonanceReport,
    psi: &[Complex64],
    t: f64,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidInput(format!("t must be finite and nonzero, got {t}")));
    }
    let c = report.overlap(psi)? * free_prefactor(t);
    xs.iter().map(|&x| Ok(c * report.f0_at(x)?)).collect()
}
