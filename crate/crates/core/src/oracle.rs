//! Finite-difference ground truth.
//!
//! `H` is replaced by the symmetric tridiagonal matrix
//! `(2/h² + V_i) δ_ij - (1/h²)(δ_{i,j+1} + δ_{i+1,j})` on the grid nodes, with
//! zero Dirichlet data one spacing beyond each end. Its full eigensystem
//! (LAPACK `dstemr`) gives the evolution `Σ e^{itE_k} ⟨ψ, v_k⟩ v_k` with no
//! time-stepping error; dropping the negative eigenvalues realizes `P_ac`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{SampledPotential, SpatialGrid};
use crate::propagator::{EvolutionResult, Method};

/// Eigenvalues below `-TOL_EIG` count as bound states.
pub const TOL_EIG: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct DiscreteHamiltonian {
    pub grid: SpatialGrid,
    pub diag: Vec<f64>,
    /// Common off-diagonal entry `-1/h²`.
    pub off: f64,
}

impl DiscreteHamiltonian {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i.abs_diff(j) == 1 {
            self.off
        } else {
            0.0
        }
    }

    /// `max |M_ij - M_ji|` over the band.
    pub fn symmetry_defect(&self) -> f64 {
        (0..self.len().saturating_sub(1))
            .map(|i| (self.entry(i, i + 1) - self.entry(i + 1, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Full eigendecomposition, eigenvalues ascending.
    pub fn eigensystem(&self) -> Result<Eigensystem> {
        let n = self.len();
        let (values, vectors) = tridiagonal_eigen(&self.diag, self.off, Range::All, true)?;
        debug_assert_eq!(values.len(), n);
        Ok(Eigensystem { grid: self.grid, values, vectors })
    }

    /// Eigenvalues only.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(tridiagonal_eigen(&self.diag, self.off, Range::All, false)?.0)
    }
}

/// The finite-difference Hamiltonian of `V`'s potential on `grid`.
pub fn discretize(v: &SampledPotential, grid: &SpatialGrid) -> Result<DiscreteHamiltonian> {
    let v = if v.grid() == grid { v.clone() } else { v.resample(grid)? };
    let h = grid.spacing();
    let diag = v.values().iter().map(|x| 2.0 / (h * h) + x).collect();
    Ok(DiscreteHamiltonian { grid: *grid, diag, off: -1.0 / (h * h) })
}

enum Range {
    All,
    Below(f64),
}

/// Eigenpairs of the symmetric tridiagonal matrix with diagonal `d` and
/// constant off-diagonal `off`. Vectors are returned column-major and
/// normalized in `ℓ²`.
fn tridiagonal_eigen(d: &[f64], off: f64, range: Range, vectors: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut diag = d.to_vec();
    let mut e = vec![off; n];
    e[n - 1] = 0.0;
    let (range_flag, vl, vu) = match range {
        Range::All => (b'A', 0.0, 0.0),
        Range::Below(vu) => {
            let gersh = d.iter().map(|x| x - 2.0 * off.abs()).fold(f64::INFINITY, f64::min);
            (b'V', gersh - 1.0, vu)
        }
    };
    let jobz = if vectors { b'V' } else { b'N' };
    // Count first so that `z` can be sized for a value range.
    let cols = match range {
        Range::All => n,
        Range::Below(_) if vectors => tridiagonal_eigen(d, off, Range::Below(vu), false)?.0.len(),
        Range::Below(_) => 0,
    };
    let zcols = if vectors { cols.max(1) } else { 1 };
    let ldz = if vectors { n } else { 1 };
    let mut w = vec![0.0; n];
    let mut z = vec![0.0; ldz * zcols];
    let mut isuppz = vec![0i32; 2 * n.max(1)];
    let mut tryrac = 1i32;
    let mut m = 0i32;
    let mut work = vec![0.0; 18 * n];
    let mut iwork = vec![0i32; 10 * n];
    let mut info = 0i32;
    let (lwork, liwork) = (work.len() as i32, iwork.len() as i32);
    if vectors && cols == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    unsafe {
        lapack::dstemr(
            jobz,
            range_flag,
            n as i32,
            &mut diag,
            &mut e,
            vl,
            vu,
            0,
            0,
            &mut m,
            &mut w,
            &mut z,
            ldz as i32,
            &[zcols as i32],
            &mut isuppz,
            &mut tryrac,
            &mut work,
            lwork,
            &mut iwork,
            liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let m = m as usize;
    w.truncate(m);
    if vectors {
        z.truncate(n * m);
    } else {
        z.clear();
    }
    Ok((w, z))
}

#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub grid: SpatialGrid,
    pub values: Vec<f64>,
    vectors: Vec<f64>,
}

impl Eigensystem {
    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.grid.len();
        &self.vectors[k * n..(k + 1) * n]
    }

    pub fn bound_states(&self) -> BoundStateSet {
        let states = self
            .values
            .iter()
            .enumerate()
            .take_while(|(_, e)| **e < -TOL_EIG)
            .map(|(k, e)| BoundState { energy: *e, vector: self.vector(k).to_vec() })
            .collect();
        BoundStateSet { states }
    }

    /// `u(t) = Σ_k e^{itE_k} ⟨ψ, v_k⟩ v_k` for every `t`, optionally
    /// restricted to `E_k ≥ -TOL_EIG`.
    pub fn evolve(&self, psi: &[Complex64], ts: &[f64], project_ac: bool) -> Result<Vec<EvolutionResult>> {
        let n = self.grid.len();
        if psi.len() != n {
            return Err(Error::InvalidInput(format!("state has {} samples, grid has {n}", psi.len())));
        }
        let first = if project_ac { self.values.iter().take_while(|e| **e < -TOL_EIG).count() } else { 0 };
        let coeffs: Vec<Complex64> =
            (first..self.values.len()).map(|k| self.vector(k).iter().zip(psi).map(|(v, p)| p * *v).sum()).collect();
        let x = self.grid.nodes();
        Ok(ts
            .iter()
            .map(|&t| {
                let mut u = vec![Complex64::new(0.0, 0.0); n];
                for (c, k) in coeffs.iter().zip(first..) {
                    let a = c * Complex64::from_polar(1.0, t * self.values[k]);
                    for (ui, v) in u.iter_mut().zip(self.vector(k)) {
                        *ui += a * *v;
                    }
                }
                EvolutionResult { t, x: x.clone(), u, method: Method::Oracle, diagnostics: None }
            })
            .collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    /// Normalized so that `Σ v_i² = 1`.
    pub vector: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BoundStateSet {
    pub states: Vec<BoundState>,
}

impl BoundStateSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    /// Orthogonal projection onto the span of the bound states.
    pub fn project(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for s in &self.states {
            let c: Complex64 = s.vector.iter().zip(psi).map(|(v, p)| p * *v).sum();
            for (o, v) in out.iter_mut().zip(&s.vector) {
                *o += c * *v;
            }
        }
        out
    }

    /// `ψ` with its bound-state components removed.
    pub fn remove_from(&self, psi: &[Complex64]) -> Vec<Complex64> {
        psi.iter().zip(self.project(psi)).map(|(p, b)| p - b).collect()
    }
}

/// Eigenpairs with `E < -TOL_EIG`, computed without the full decomposition.
pub fn bound_states(h: &DiscreteHamiltonian) -> Result<BoundStateSet> {
    let n = h.len();
    let (values, vectors) = tridiagonal_eigen(&h.diag, h.off, Range::Below(-TOL_EIG), true)?;
    let states = values
        .iter()
        .enumerate()
        .filter(|(_, e)| **e < -TOL_EIG)
        .map(|(k, e)| BoundState { energy: *e, vector: vectors[k * n..(k + 1) * n].to_vec() })
        .collect();
    Ok(BoundStateSet { states })
}

/// Exact evolution of the discrete model at one time.
pub fn evolve_exact(h: &DiscreteHamiltonian, psi: &[Complex64], t: f64, project_ac: bool) -> Result<EvolutionResult> {
    Ok(h.eigensystem()?.evolve(psi, &[t], project_ac)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{build_potential, PotentialSpec};
    use crate::propagator::free_gaussian;
    use crate::state::InitialState;

    fn hamiltonian(spec: PotentialSpec, grid: SpatialGrid) -> DiscreteHamiltonian {
        let v = build_potential(&spec, &grid).unwrap();
        discretize(&v, &grid).unwrap()
    }

    #[test]
    fn free_spectrum_matches_closed_form() {
        let grid = SpatialGrid::new(-10.0, 10.0, 401).unwrap();
        let h = hamiltonian(PotentialSpec::Zero, grid);
        let evs = h.eigenvalues().unwrap();
        let n = grid.len();
        let hs = grid.spacing();
        for (k, e) in evs.iter().enumerate() {
            let exact = 2.0 * (1.0 - ((k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()) / (hs * hs);
            assert!((e - exact).abs() <= 1e-10 * exact.max(1.0), "k={k}: {e} vs {exact}");
            assert!(*e >= 0.0 && *e <= 4.0 / (hs * hs));
        }
    }

    #[test]
    fn matrix_is_symmetric() {
        let h = hamiltonian(PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 }, SpatialGrid::desk());
        assert_eq!(h.symmetry_defect(), 0.0);
        assert_eq!(h.entry(3, 4), h.entry(4, 3));
    }

    #[test]
    fn poschl_teller_ground_state() {
        // Richardson extrapolation over two spacings removes the O(h²) error.
        let e = |n: usize| {
            let h = hamiltonian(PotentialSpec::PoschlTeller { strength: 1 }, SpatialGrid::new(-40.0, 40.0, n).unwrap());
            let b = bound_states(&h).unwrap();
            assert_eq!(b.len(), 1);
            b.states[0].energy
        };
        let (coarse, fine) = (e(2001), e(4001));
        assert!((fine + 1.0).abs() < 5e-3);
        let extrapolated = (4.0 * fine - coarse) / 3.0;
        assert!((extrapolated + 1.0).abs() < 1e-6, "{extrapolated}");
    }

    #[test]
    fn bound_state_counts() {
        assert!(bound_states(&hamiltonian(PotentialSpec::Zero, SpatialGrid::desk())).unwrap().is_empty());
        let sw =
            bound_states(&hamiltonian(PotentialSpec::SquareWell { depth: 1.0, halfwidth: 1.0 }, SpatialGrid::desk()))
                .unwrap();
        assert_eq!(sw.len(), 1);
        let v = &sw.states[0].vector;
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bound_states_agree_with_full_decomposition() {
        let h = hamiltonian(PotentialSpec::PoschlTeller { strength: 2 }, SpatialGrid::new(-20.0, 20.0, 801).unwrap());
        let direct = bound_states(&h).unwrap();
        let full = h.eigensystem().unwrap().bound_states();
        assert_eq!(direct.len(), 2);
        assert_eq!(full.len(), 2);
        for (a, b) in direct.states.iter().zip(&full.states) {
            assert!((a.energy - b.energy).abs() < 1e-10);
            let dot: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
            assert!((dot.abs() - 1.0).abs() < 1e-10);
        }
        let dot: f64 = direct.states[0].vector.iter().zip(&direct.states[1].vector).map(|(x, y)| x * y).sum();
        assert!(dot.abs() < 1e-10);
    }

    #[test]
    fn evolution_at_zero_and_unitarity() {
        let grid = SpatialGrid::new(-20.0, 20.0, 801).unwrap();
        let h = hamiltonian(PotentialSpec::PoschlTeller { strength: 1 }, grid);
        let psi = InitialState::Gaussian { center: 1.0, width: 1.0 }.sample(&grid);
        let es = h.eigensystem().unwrap();
        let r = es.evolve(&psi, &[0.0, 3.0], false).unwrap();
        assert!(r[0].u.iter().zip(&psi).all(|(a, b)| (a - b).norm() < 1e-12));
        let l2 = |u: &[Complex64]| u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((l2(&r[1].u) - l2(&psi)).abs() < 1e-10);
        let projected = es.bound_states().remove_from(&psi);
        let ac = es.evolve(&psi, &[3.0], true).unwrap();
        assert!((l2(&ac[0].u) - l2(&projected)).abs() < 1e-10);
    }

    #[test]
    fn projection_is_idempotent() {
        let grid = SpatialGrid::new(-20.0, 20.0, 801).unwrap();
        let h = hamiltonian(PotentialSpec::PoschlTeller { strength: 2 }, grid);
        let b = bound_states(&h).unwrap();
        let psi = InitialState::Gaussian { center: 0.5, width: 1.3 }.sample(&grid);
        let once = b.project(&psi);
        let twice = b.project(&once);
        assert!(once.iter().zip(&twice).all(|(a, c)| (a - c).norm() < 1e-14));
    }

    #[test]
    fn free_oracle_matches_closed_form() {
        let grid = SpatialGrid::desk();
        let h = hamiltonian(PotentialSpec::Zero, grid);
        let psi = InitialState::Gaussian { center: 0.0, width: 1.0 }.sample(&grid);
        let r = evolve_exact(&h, &psi, 3.0, true).unwrap();
        let err = r.x.iter().zip(&r.u).map(|(x, u)| (u - free_gaussian(*x, 3.0)).norm()).fold(0.0, f64::max);
        assert!(err < 2e-3, "{err}");
        assert_eq!(r.method, Method::Oracle);
    }

    #[test]
    fn second_order_convergence() {
        let err = |n: usize| {
            let grid = SpatialGrid::new(-30.0, 30.0, n).unwrap();
            let h = hamiltonian(PotentialSpec::Zero, grid);
            let psi = InitialState::Gaussian { center: 0.0, width: 1.0 }.sample(&grid);
            let r = evolve_exact(&h, &psi, 1.0, false).unwrap();
            r.x.iter().zip(&r.u).map(|(x, u)| (u - free_gaussian(*x, 1.0)).norm()).fold(0.0, f64::max)
        };
        let ratio = err(601) / err(1201);
        assert!((ratio - 4.0).abs() < 0.3, "{ratio}");
    }
}
