//! Jost solutions and Wronskians.
//!
//! For real `λ` the Jost solutions solve `-f'' + (V - λ²) f = 0` with
//! `f±(x, λ) = e^{±iλx}` at `±∞`. Writing `f± = e^{±iλx} m±`, the modulated
//! solution satisfies the Volterra equation
//!
//! ```text
//! m₊(x, λ) = 1 + ∫ₓ^∞ D_λ(y - x) V(y) m₊(y, λ) dy,   D_λ(u) = (e^{2iλu} - 1) / (2iλ)
//! ```
//!
//! and its mirror image for `m₋`. The solver integrates the equivalent
//! first-order system `(f, f')' = [[0, 1], [V - λ², 0]] (f, f')` cell by cell
//! with a sixth-order Magnus propagator, sweeping inward from the asymptotic
//! end. Every cell map is a real `2 × 2` matrix of unit determinant that
//! depends on `λ²` only, so:
//!
//! - Wronskians of computed solutions are independent of `x` to round-off;
//! - `f±(x, -λ) = conj f±(x, λ)` holds exactly;
//! - the `λ → 0` limit needs no special treatment.
//!
//! Outside the numerical support of `V` the solutions are set to their exact
//! plane-wave form, which makes the free case exact.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::SampledPotential;
use crate::quadrature::GAUSS3_OFFSETS;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Default tolerance on the step-doubling error estimate of a Jost sweep.
pub const DEFAULT_TOL_ODE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `f₊`, normalized at `+∞`.
    Plus,
    /// `f₋`, normalized at `-∞`.
    Minus,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }
}

/// `m±(·, λ)` and `∂ₓm±(·, λ)` on the potential's grid.
#[derive(Clone, Debug)]
pub struct JostSolution {
    pub direction: Direction,
    pub lambda: f64,
    pub m: Vec<Complex64>,
    pub dm_dx: Vec<Complex64>,
    pub converged: bool,
    /// Number of sweeps performed (the solution plus its step-doubling check).
    pub iterations: usize,
    /// Step-doubling estimate of the error in `f`, relative to `1 + |f|`.
    pub error_estimate: f64,
    x: Vec<f64>,
}

impl JostSolution {
    fn phase(&self, i: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.direction.sign() * self.lambda * self.x[i])
    }

    /// `f±(x_i, λ)`.
    pub fn f(&self, i: usize) -> Complex64 {
        self.phase(i) * self.m[i]
    }

    /// `∂ₓ f±(x_i, λ)`.
    pub fn df(&self, i: usize) -> Complex64 {
        let s = self.direction.sign();
        self.phase(i) * (self.dm_dx[i] + I * (s * self.lambda) * self.m[i])
    }

    pub fn f_values(&self) -> Vec<Complex64> {
        (0..self.m.len()).map(|i| self.f(i)).collect()
    }
}

/// `W(λ) = W[f₊(·,λ), f₋(·,λ)]` and `W̃(λ) = W[f₋(·,λ), f₊(·,-λ)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WronskianPair {
    pub lambda: f64,
    pub w: Complex64,
    pub w_tilde: Complex64,
}

/// Traceless real `2 × 2` matrix `[[a, b], [c, -a]]`.
#[derive(Clone, Copy, Debug)]
struct Traceless {
    a: f64,
    b: f64,
    c: f64,
}

impl Traceless {
    fn commutator(x: Traceless, y: Traceless) -> Traceless {
        Traceless { a: x.b * y.c - y.b * x.c, b: 2.0 * (x.a * y.b - y.a * x.b), c: 2.0 * (x.c * y.a - x.a * y.c) }
    }

    fn add(self, o: Traceless) -> Traceless {
        Traceless { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c }
    }

    fn scale(self, s: f64) -> Traceless {
        Traceless { a: s * self.a, b: s * self.b, c: s * self.c }
    }

    /// `exp` in closed form: `Ω² = (a² + bc) I`.
    fn exp(self) -> [f64; 4] {
        let delta = self.a * self.a + self.b * self.c;
        let (c, s) = if delta.abs() < 1e-8 {
            (1.0 + delta / 2.0 + delta * delta / 24.0, 1.0 + delta / 6.0 + delta * delta / 120.0)
        } else if delta > 0.0 {
            let r = delta.sqrt();
            (r.cosh(), r.sinh() / r)
        } else {
            let r = (-delta).sqrt();
            (r.cos(), r.sin() / r)
        };
        [c + s * self.a, s * self.b, s * self.c, c - s * self.a]
    }
}

/// Sixth-order Magnus map over one cell of width `h` for
/// `y' = [[0, 1], [q(x), 0]] y`, given `q` at the three Gauss–Legendre points.
fn magnus6(h: f64, q: [f64; 3]) -> [f64; 4] {
    let k2 = 15f64.sqrt() * h / 3.0;
    let k3 = 10.0 * h / 3.0;
    let a1 = Traceless { a: 0.0, b: h, c: h * q[1] };
    let a2 = Traceless { a: 0.0, b: 0.0, c: k2 * (q[2] - q[0]) };
    let a3 = Traceless { a: 0.0, b: 0.0, c: k3 * (q[2] - 2.0 * q[1] + q[0]) };
    let c1 = Traceless::commutator(a1, a2);
    let c2 = Traceless::commutator(a1, a3.scale(2.0).add(c1)).scale(-1.0 / 60.0);
    let left = a1.scale(-20.0).add(a3.scale(-1.0)).add(c1);
    let right = a2.add(c2);
    let omega = a1.add(a3.scale(1.0 / 12.0)).add(Traceless::commutator(left, right).scale(1.0 / 240.0));
    omega.exp()
}

/// Forward cell maps for one value of `λ²`.
#[derive(Clone, Debug)]
pub(crate) struct CellPropagators {
    mats: Vec<[f64; 4]>,
    /// First node from which `V` vanishes identically to the right.
    free_right: usize,
    /// Last node up to which `V` vanishes identically to the left.
    free_left: usize,
}

impl CellPropagators {
    pub(crate) fn new(v: &SampledPotential, lambda_sq: f64, substeps: usize) -> Self {
        let grid = v.grid();
        let h = grid.spacing();
        let n = grid.len();
        let gauss = v.gauss_values();
        let values = v.values();
        let mats = (0..n - 1)
            .map(|j| {
                let x0 = grid.x(j);
                let x1 = grid.x(j + 1);
                if substeps <= 1 && v.breaks_in(x0, x1).is_empty() {
                    let g = gauss[j];
                    magnus6(h, [g[0] - lambda_sq, g[1] - lambda_sq, g[2] - lambda_sq])
                } else {
                    let hs = (x1 - x0) / substeps.max(1) as f64;
                    let mut acc = [1.0, 0.0, 0.0, 1.0];
                    for k in 0..substeps.max(1) {
                        let a = x0 + k as f64 * hs;
                        acc = matmul(piecewise_map(v, a, a + hs, lambda_sq), acc);
                    }
                    acc
                }
            })
            .collect();
        let cell_free = |j: usize| gauss[j].iter().all(|g| *g == 0.0) && values[j] == 0.0 && values[j + 1] == 0.0;
        let mut free_right = n - 1;
        while free_right > 0 && cell_free(free_right - 1) {
            free_right -= 1;
        }
        let mut free_left = 0;
        while free_left < n - 1 && cell_free(free_left) {
            free_left += 1;
        }
        CellPropagators { mats, free_right, free_left }
    }
}

/// Cell map over `[a, b]`, split at the breakpoints of `V` inside it.
fn piecewise_map(v: &SampledPotential, a: f64, b: f64, lambda_sq: f64) -> [f64; 4] {
    let mut acc = [1.0, 0.0, 0.0, 1.0];
    let mut x = a;
    for &p in v.breaks_in(a, b).iter().chain(std::iter::once(&b)) {
        let len = p - x;
        let q = GAUSS3_OFFSETS.map(|c| v.spec().eval(x + c * len) - lambda_sq);
        acc = matmul(magnus6(len, q), acc);
        x = p;
    }
    acc
}

fn matmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

/// Sweep `(m, ∂ₓm)` for one direction using precomputed cell maps.
fn sweep(
    v: &SampledPotential,
    props: &CellPropagators,
    lambda: f64,
    direction: Direction,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let grid = v.grid();
    let n = grid.len();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![one; n];
    let mut dm = vec![zero; n];
    let s = direction.sign();
    let ik = I * (s * lambda);
    match direction {
        Direction::Plus => {
            let start = props.free_right;
            let e = Complex64::from_polar(1.0, lambda * grid.x(start));
            let (mut f, mut fp) = (e, ik * e);
            for j in (0..start).rev() {
                let [a, b, c, d] = props.mats[j];
                // Inverse of a unit-determinant map.
                let nf = f * d - fp * b;
                let nfp = fp * a - f * c;
                f = nf;
                fp = nfp;
                let ph = Complex64::from_polar(1.0, -lambda * grid.x(j));
                m[j] = ph * f;
                dm[j] = ph * (fp - ik * f);
            }
        }
        Direction::Minus => {
            let start = props.free_left;
            let e = Complex64::from_polar(1.0, -lambda * grid.x(start));
            let (mut f, mut fp) = (e, ik * e);
            for j in start..n - 1 {
                let [a, b, c, d] = props.mats[j];
                let nf = f * a + fp * b;
                let nfp = f * c + fp * d;
                f = nf;
                fp = nfp;
                let ph = Complex64::from_polar(1.0, lambda * grid.x(j + 1));
                m[j + 1] = ph * f;
                dm[j + 1] = ph * (fp - ik * f);
            }
        }
    }
    (m, dm)
}

/// Sweep `(f, ∂ₓf)` directly; used on hot paths where the modulated form
/// is not needed.
fn sweep_f(
    v: &SampledPotential,
    props: &CellPropagators,
    lambda: f64,
    direction: Direction,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let grid = v.grid();
    let n = grid.len();
    let s = direction.sign();
    let ik = I * (s * lambda);
    let mut f = vec![Complex64::new(0.0, 0.0); n];
    let mut fp = vec![Complex64::new(0.0, 0.0); n];
    let free = match direction {
        Direction::Plus => props.free_right..n,
        Direction::Minus => 0..props.free_left + 1,
    };
    for i in free {
        f[i] = Complex64::from_polar(1.0, s * lambda * grid.x(i));
        fp[i] = ik * f[i];
    }
    match direction {
        Direction::Plus => {
            for j in (0..props.free_right).rev() {
                let [a, b, c, d] = props.mats[j];
                f[j] = f[j + 1] * d - fp[j + 1] * b;
                fp[j] = fp[j + 1] * a - f[j + 1] * c;
            }
        }
        Direction::Minus => {
            for j in props.free_left..n - 1 {
                let [a, b, c, d] = props.mats[j];
                f[j + 1] = f[j] * a + fp[j] * b;
                fp[j + 1] = f[j] * c + fp[j] * d;
            }
        }
    }
    (f, fp)
}

/// Solve for `m±(·, λ)` with the default tolerance.
pub fn solve_jost(v: &SampledPotential, lambda: f64, direction: Direction) -> Result<JostSolution> {
    solve_jost_with_tol(v, lambda, direction, DEFAULT_TOL_ODE)
}

/// Solve for `m±(·, λ)` and certify it by step doubling: the sweep is
/// repeated with two Magnus steps per cell and the relative difference in
/// `f` must stay below `tol_ode`.
pub fn solve_jost_with_tol(
    v: &SampledPotential,
    lambda: f64,
    direction: Direction,
    tol_ode: f64,
) -> Result<JostSolution> {
    if !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda must be finite, got {lambda}")));
    }
    let lsq = lambda * lambda;
    let coarse = CellPropagators::new(v, lsq, 1);
    let fine = CellPropagators::new(v, lsq, 2);
    let (m, dm) = sweep(v, &coarse, lambda, direction);
    let (m2, _) = sweep(v, &fine, lambda, direction);
    let error_estimate = m.iter().zip(&m2).map(|(a, b)| (a - b).norm() / (1.0 + b.norm())).fold(0.0, f64::max);
    if !(error_estimate <= tol_ode) {
        return Err(Error::JostNonConvergence { lambda, residual: error_estimate, tol: tol_ode });
    }
    Ok(JostSolution {
        direction,
        lambda,
        m,
        dm_dx: dm,
        converged: true,
        iterations: 2,
        error_estimate,
        x: v.grid().nodes(),
    })
}

/// Both Jost solutions at one `λ`, sharing cell maps. This is the fast path
/// used inside λ-sweeps; it performs no step-doubling check.
#[derive(Clone, Debug)]
pub struct JostPair {
    pub lambda: f64,
    /// `f₊(x_i, λ)` and `∂ₓf₊`.
    pub plus: Vec<Complex64>,
    pub plus_dx: Vec<Complex64>,
    /// `f₋(x_i, λ)` and `∂ₓf₋`.
    pub minus: Vec<Complex64>,
    pub minus_dx: Vec<Complex64>,
    matching: usize,
}

impl JostPair {
    pub fn new(v: &SampledPotential, lambda: f64) -> Self {
        let props = CellPropagators::new(v, lambda * lambda, 1);
        let (plus, plus_dx) = sweep_f(v, &props, lambda, Direction::Plus);
        let (minus, minus_dx) = sweep_f(v, &props, lambda, Direction::Minus);
        JostPair { lambda, plus, plus_dx, minus, minus_dx, matching: v.grid().matching_index() }
    }

    /// `W[f₊, f₋]` evaluated at node `i`.
    pub fn wronskian_at(&self, i: usize) -> Complex64 {
        self.plus[i] * self.minus_dx[i] - self.plus_dx[i] * self.minus[i]
    }

    /// `W(λ)` at the matching node.
    pub fn w(&self) -> Complex64 {
        self.wronskian_at(self.matching)
    }

    /// `W̃(λ) = W[f₋(·,λ), f₊(·,-λ)]` at the matching node, using
    /// `f₊(·,-λ) = conj f₊(·,λ)` for real `V`.
    pub fn w_tilde(&self) -> Complex64 {
        let k = self.matching;
        self.minus[k] * self.plus_dx[k].conj() - self.minus_dx[k] * self.plus[k].conj()
    }
}

/// `W(λ)` and `W̃(λ)` from three certified Jost solutions
/// (`f₊(·,λ)`, `f₋(·,λ)`, `f₊(·,-λ)`), in the modulated form
/// `W = m₊∂ₓm₋ - ∂ₓm₊ m₋ - 2iλ m₊m₋` at the matching node.
pub fn wronskians(v: &SampledPotential, lambda: f64) -> Result<WronskianPair> {
    wronskians_with_tol(v, lambda, DEFAULT_TOL_ODE)
}

pub fn wronskians_with_tol(v: &SampledPotential, lambda: f64, tol_ode: f64) -> Result<WronskianPair> {
    let plus = solve_jost_with_tol(v, lambda, Direction::Plus, tol_ode)?;
    let minus = solve_jost_with_tol(v, lambda, Direction::Minus, tol_ode)?;
    let plus_neg = solve_jost_with_tol(v, -lambda, Direction::Plus, tol_ode)?;
    let k = v.grid().matching_index();
    let w = plus.m[k] * minus.dm_dx[k] - plus.dm_dx[k] * minus.m[k] - 2.0 * I * lambda * plus.m[k] * minus.m[k];
    // W[f₋(·,λ), f₊(·,-λ)] = e^{-2iλx}(m₋ ∂ₓm₊(·,-λ) - ∂ₓm₋ m₊(·,-λ)).
    let xk = v.grid().x(k);
    let w_tilde = Complex64::from_polar(1.0, -2.0 * lambda * xk)
        * (minus.m[k] * plus_neg.dm_dx[k] - minus.dm_dx[k] * plus_neg.m[k]);
    Ok(WronskianPair { lambda, w, w_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{build_potential, PotentialSpec, SpatialGrid};

    fn square_well() -> SampledPotential {
        build_potential(&PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 }, &SpatialGrid::desk()).unwrap()
    }

    fn poschl_teller() -> SampledPotential {
        build_potential(&PotentialSpec::PoschlTeller { strength: 1 }, &SpatialGrid::desk()).unwrap()
    }

    /// Classical RK4 on `f'' = (V - λ²) f`, integrated backward from `x_max`
    /// with `f = e^{iλx_max}`, using `substeps` steps per grid cell. Returns
    /// `f₊` at the grid nodes.
    fn rk4_plus(spec: &PotentialSpec, grid: &SpatialGrid, lambda: f64, substeps: usize) -> Vec<Complex64> {
        let n = grid.len();
        let h = -grid.spacing() / substeps as f64;
        let rhs = |x: f64, y: [Complex64; 2]| [y[1], (spec.eval(x) - lambda * lambda) * y[0]];
        let mut y = [
            Complex64::from_polar(1.0, lambda * grid.x_max),
            I * lambda * Complex64::from_polar(1.0, lambda * grid.x_max),
        ];
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        out[n - 1] = y[0];
        for j in (0..n - 1).rev() {
            let mut x = grid.x(j + 1);
            for _ in 0..substeps {
                let k1 = rhs(x, y);
                let y2 = [y[0] + k1[0] * (h / 2.0), y[1] + k1[1] * (h / 2.0)];
                let k2 = rhs(x + h / 2.0, y2);
                let y3 = [y[0] + k2[0] * (h / 2.0), y[1] + k2[1] * (h / 2.0)];
                let k3 = rhs(x + h / 2.0, y3);
                let y4 = [y[0] + k3[0] * h, y[1] + k3[1] * h];
                let k4 = rhs(x + h, y4);
                for c in 0..2 {
                    y[c] += (k1[c] + k2[c] * 2.0 + k3[c] * 2.0 + k4[c]) * (h / 6.0);
                }
                x += h;
            }
            out[j] = y[0];
        }
        out
    }

    #[test]
    fn free_case_is_exact() {
        let v = build_potential(&PotentialSpec::Zero, &SpatialGrid::desk()).unwrap();
        for dir in [Direction::Plus, Direction::Minus] {
            let s = solve_jost(&v, 1.0, dir).unwrap();
            assert!(s.m.iter().all(|m| *m == Complex64::new(1.0, 0.0)));
            assert!(s.dm_dx.iter().all(|d| *d == Complex64::new(0.0, 0.0)));
        }
        let w = wronskians(&v, 0.7).unwrap();
        assert_eq!(w.w, Complex64::new(0.0, -1.4));
        assert_eq!(w.w_tilde, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn square_well_matches_rk4_oracle() {
        let v = square_well();
        let sol = solve_jost(&v, 0.8, Direction::Plus).unwrap();
        let oracle = rk4_plus(v.spec(), v.grid(), 0.8, 8);
        let err = (0..v.grid().len()).map(|i| (sol.f(i) - oracle[i]).norm()).fold(0.0, f64::max);
        assert!(err < 1e-6, "sup error {err}");
        assert!(sol.converged && sol.error_estimate < 1e-10);
    }

    #[test]
    fn poschl_teller_matches_rk4_oracle() {
        let v = poschl_teller();
        let sol = solve_jost(&v, 1.3, Direction::Plus).unwrap();
        let oracle = rk4_plus(v.spec(), v.grid(), 1.3, 8);
        let err = (0..v.grid().len()).map(|i| (sol.f(i) - oracle[i]).norm()).fold(0.0, f64::max);
        assert!(err < 1e-6, "sup error {err}");
    }

    #[test]
    fn high_energy_envelope() {
        // sup|m - 1| shrinks like ‖V‖₁/λ; the ratio against λ stays bounded.
        let v = square_well();
        let mut scaled = Vec::new();
        for lambda in [10.0, 20.0, 50.0] {
            let sol = solve_jost(&v, lambda, Direction::Plus).unwrap();
            let dev = sol.m.iter().map(|m| (m - 1.0).norm()).fold(0.0, f64::max);
            scaled.push(dev * lambda / v.l1_norm());
            if lambda == 50.0 {
                assert!(dev < 0.05, "sup|m-1| = {dev}");
                let oracle = rk4_plus(v.spec(), v.grid(), lambda, 128);
                let err = (0..v.grid().len()).map(|i| (sol.f(i) - oracle[i]).norm()).fold(0.0, f64::max);
                assert!(err < 1e-6, "{err}");
            }
        }
        assert!(scaled.iter().all(|c| *c < 1.0), "{scaled:?}");
    }

    #[test]
    fn magnus_is_sixth_order() {
        let spec = PotentialSpec::GaussianWell { depth: 2.0, width: 0.7 };
        let err_at = |n: usize| {
            let grid = SpatialGrid::new(-10.0, 10.0, n).unwrap();
            let v = build_potential(&spec, &grid).unwrap();
            let pair = JostPair::new(&v, 1.1);
            let fine = build_potential(&spec, &grid.refined(8)).unwrap();
            let reference = JostPair::new(&fine, 1.1);
            (pair.minus[grid.matching_index()] - reference.minus[fine.grid().matching_index()]).norm()
        };
        let (e1, e2) = (err_at(101), err_at(201));
        let ratio = e1 / e2;
        assert!(ratio > 40.0, "ratio {ratio} ({e1:e}, {e2:e})");
    }

    #[test]
    fn wronskian_is_x_independent() {
        for v in [square_well(), poschl_teller()] {
            for lambda in [0.3, 0.8, 4.0] {
                let pair = JostPair::new(&v, lambda);
                let w0 = pair.w();
                let n = v.grid().len();
                let spread = (1..n - 1).step_by(7).map(|i| (pair.wronskian_at(i) - w0).norm()).fold(0.0, f64::max);
                assert!(spread <= 1e-8 * (1.0 + lambda), "lambda {lambda}: {spread}");
            }
        }
        // Matching points x = 0 and x = 0.5 for the square well.
        let v = square_well();
        let pair = JostPair::new(&v, 0.8);
        let k = v.grid().index_of(0.5).unwrap();
        assert!((pair.wronskian_at(k) - pair.w()).norm() < 1e-8);
    }

    #[test]
    fn wronskian_forms_agree() {
        let v = square_well();
        let w = wronskians(&v, 0.8).unwrap();
        let pair = JostPair::new(&v, 0.8);
        assert!((w.w - pair.w()).norm() < 1e-13);
        assert!((w.w_tilde - pair.w_tilde()).norm() < 1e-13);
    }

    #[test]
    fn conjugate_symmetry() {
        let v = square_well();
        for lambda in [0.05, 0.8, 3.0] {
            let a = wronskians(&v, lambda).unwrap();
            let b = wronskians(&v, -lambda).unwrap();
            assert!((b.w - a.w.conj()).norm() <= 1e-10);
        }
    }

    #[test]
    fn poschl_teller_is_reflectionless() {
        let w = wronskians(&poschl_teller(), 1.0).unwrap();
        assert!(w.w_tilde.norm() <= 1e-6, "{}", w.w_tilde);
    }

    #[test]
    fn zero_energy_well_has_closed_form_wronskian() {
        // For a well of depth d = κ² and half-width a, W(0) = -κ sin(2κa).
        for depth in [1.0, 2.0, 3.5] {
            let v =
                build_potential(&PotentialSpec::SquareWell { depth, halfwidth: 1.0 }, &SpatialGrid::desk()).unwrap();
            let w = wronskians(&v, 0.0).unwrap();
            let kappa: f64 = depth.sqrt();
            let exact = -kappa * (2.0 * kappa).sin();
            assert!((w.w.re - exact).abs() < 1e-10, "depth {depth}: {} vs {exact}", w.w.re);
            assert!(w.w.im.abs() < 1e-14);
        }
    }

    #[test]
    fn well_edges_between_nodes() {
        // Edges inside a cell, including between its Gauss points.
        for a in [1.59, 1.5997, 0.7031] {
            let v =
                build_potential(&PotentialSpec::SquareWell { depth: 2.0, halfwidth: a }, &SpatialGrid::desk()).unwrap();
            let w = wronskians(&v, 0.0).unwrap();
            let kappa = 2f64.sqrt();
            let exact = -kappa * (2.0 * kappa * a).sin();
            assert!((w.w.re - exact).abs() < 1e-10, "halfwidth {a}: {} vs {exact}", w.w.re);
        }
    }

    #[test]
    fn rough_grid_is_rejected() {
        // Four cells across a deep, narrow well cannot meet the tolerance.
        let grid = SpatialGrid::new(-10.0, 10.0, 21).unwrap();
        let v = build_potential(&PotentialSpec::GaussianWell { depth: 400.0, width: 0.3 }, &grid).unwrap();
        assert!(matches!(solve_jost(&v, 2.0, Direction::Plus), Err(Error::JostNonConvergence { .. })));
    }
}
