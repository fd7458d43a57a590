use thiserror::Error;

/// Errors raised by kernel evaluation, assembly, quadrature and the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("kernel has infinite smoothness; a finite smoothness exponent is required")]
    InfiniteSmoothness,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error("matrix numerically singular (lambda_min = {lambda_min:e}, lambda_max = {lambda_max:e})")]
    NumericallySingular { lambda_min: f64, lambda_max: f64 },

    #[error("matrix is indefinite or singular (lambda_min = {0:e})")]
    Indefinite(f64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("quadrature error {achieved:e} exceeds target {target:e}")]
    Quadrature { achieved: f64, target: f64 },

    #[error("Fourier cutoff {cutoff} too small: tail bound {tail_bound:e} dominates the integral {integral:e}; increase the cutoff")]
    CutoffTooSmall {
        cutoff: f64,
        tail_bound: f64,
        integral: f64,
    },

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("need at least {needed} usable samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Failures caused by floating point limits rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericallySingular { .. }
                | Error::Indefinite(_)
                | Error::Quadrature { .. }
                | Error::CutoffTooSmall { .. }
                | Error::NoConvergence(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
