use thiserror::Error;

/// Errors produced by the geometric kernels and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid signature (g, k) = ({g}, {k}): need g > k >= 1")]
    InvalidSignature { g: i64, k: i64 },

    #[error("X_k requires an odd k >= 1, got k = {0}")]
    InvalidXkSignature(i64),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("coefficients ({p}, {q}) are not a coprime pair")]
    NotCoprime { p: i64, q: i64 },

    #[error("slope ({p}, {q}) has length {length:.6} < sqrt(7); the filling is not hyperbolic")]
    NonHyperbolic { p: i64, q: i64, length: f64 },

    #[error("cusp index {index} out of range 1..={k}")]
    CuspIndex { index: usize, k: usize },

    #[error("Newton iteration did not converge (residual {residual:.3e} after {iterations} iterations)")]
    Convergence { residual: f64, iterations: usize },

    #[error("continuation broke down; last converged multiplier t = {last_t}")]
    ContinuationBreakdown { last_t: f64 },

    #[error("singular Dehn filling system at cusp {cusp}: u and v are real-proportional")]
    SingularSystem { cusp: usize },

    #[error("cusp {cusp} is not complete (|u| = {abs_u:.3e})")]
    IncompleteCusp { cusp: usize, abs_u: f64 },

    #[error("cusp {cusp} is unfilled")]
    UnfilledCusp { cusp: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
