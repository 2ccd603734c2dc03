//! Numerical laboratory for the one-dimensional Schrödinger operator
//! `H = -d²/dx² + V(x)`.
//!
//! The crate builds the continuous-spectrum propagator `e^{itH} P_ac(H)` from
//! Jost solutions, classifies the zero-energy threshold (generic vs
//! resonant), and measures the time decay of weighted sup-norms of the
//! evolution. A brute-force finite-difference oracle provides independent
//! ground truth.
//!
//! Module map:
//!
//! - [`potential`]: spatial grids, potential corpus, weighted `L¹` norms.
//! - [`jost`]: Jost solutions `f±(x, λ) = e^{±iλx} m±(x, λ)` and Wronskians.
//! - [`scattering`]: `α`, `β`, `T`, `R`, zero-energy resonance detection.
//! - [`propagator`]: free evolution, resolvent kernels, Born series and the
//!   spectral integral for `e^{itH} P_ac(H)`.
//! - [`oracle`]: finite-difference Hamiltonian and exact eigen-evolution.
//! - [`analysis`]: weighted sup-norms, log-log decay fits, rate verification.
//!
//! Units follow `H = -Δ + V`, i.e. `ħ = 2m = 1`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate lapack_src;

pub mod analysis;
pub mod error;
pub mod jost;
pub mod oracle;
pub mod potential;
pub mod propagator;
pub mod quadrature;
pub mod scattering;
pub mod state;

pub use num_complex::Complex64;

pub use analysis::{
    fit_decay, log_spaced, verify_resonance, verify_transport, weighted_sup_norm, DecayFit, DecayRow, RateVerification,
    Verdict, VerifyOptions,
};
pub use error::{Error, Result};
pub use jost::{
    solve_jost, solve_jost_with_tol, wronskians, wronskians_with_tol, Direction, JostPair, JostSolution, WronskianPair,
};
pub use oracle::{bound_states, discretize, evolve_exact, BoundState, BoundStateSet, DiscreteHamiltonian, Eigensystem};
pub use potential::{build_potential, PotentialSpec, SampledPotential, SpatialGrid};
pub use propagator::{
    born_resolvent, evolve_ac, free_evolve, free_gaussian, jost_quadratic_form, resolvent_kernel,
    resonance_leading_term, BornSum, CutoffSpec, Diagnostics, EvolutionResult, Method, SpectralPropagator,
};
pub use scattering::{
    bisect_resonant_depth, depth_scan, detect_resonance, detect_resonance_with, project_resonance, scattering_table,
    scattering_table_with_tol, zero_energy_wronskian, Classification, DepthScan, ResonanceReport, ResonanceTolerance,
    RowStatus, ScatteringRow, ScatteringTable, DEFAULT_TOL_SCATTER,
};
pub use state::InitialState;
