use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the library.
///
/// Variants fall into three families that the command-line front end maps
/// onto distinct exit codes: invalid input, numerical failure, and violated
/// theorem hypotheses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Jost solution did not converge at lambda = {lambda}: error estimate {residual:.3e} exceeds {tol:.1e}")]
    JostNonConvergence { lambda: f64, residual: f64, tol: f64 },

    #[error("resolvent kernel is singular: {0}")]
    SingularKernel(String),

    #[error("Born series convergence condition violated: 2|lambda| = {two_lambda} < ||V||_1 = {norm}")]
    BornDivergence { two_lambda: f64, norm: f64 },

    #[error("spectral quadrature needs {needed} nodes, budget is {budget}")]
    QuadratureBudget { needed: usize, budget: usize },

    #[error(
        "zero energy is near-resonant: |W(0)| = {w0_abs:.3e} lies in the ambiguous band around tol_res = {tol:.3e}"
    )]
    NearResonant { w0_abs: f64, tol: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("eigensolver failed with LAPACK info = {0}")]
    Eigensolver(i32),

    #[error("decay fit failed: {0}")]
    Fit(String),
}

impl Error {
    /// True for errors caused by inputs that fall outside a theorem's
    /// hypotheses, as opposed to malformed input or numerical trouble.
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::NearResonant { .. } | Error::BornDivergence { .. })
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidGrid(_) | Error::InvalidPotential(_) | Error::InvalidInput(_))
    }

    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::JostNonConvergence { .. }
                | Error::SingularKernel(_)
                | Error::QuadratureBudget { .. }
                | Error::Eigensolver(_)
                | Error::Fit(_)
        )
    }
}
