use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// Variants split into two families: input problems (parse errors, invalid
/// classes, out-of-radius evaluation points) and numerical-consistency
/// failures that indicate a tolerance breach or an arithmetic bug.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by an octonion of squared norm {0:e}")]
    DivisionByZero(f64),

    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    #[error("invalid conjugacy class (t = {t}, n = {n}): t^2 > 4n")]
    InvalidClass { t: f64, n: f64 },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("normal series has imaginary residual {residual:e} at degree {degree}")]
    RealityViolation { degree: usize, residual: f64 },

    #[error("|alpha| = {alpha_norm} is not inside the convergence radius {radius}")]
    RadiusViolation { alpha_norm: f64, radius: f64 },

    #[error("constant polynomial has no roots")]
    DegreeZero,

    #[error("expected a polynomial of positive degree")]
    NotPositiveDegree,

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("class (t = {t}, n = {n}) divides N(f) but f has no zero on it")]
    ClassificationMismatch { t: f64, n: f64 },

    #[error("fundamental theorem check failed: {0}")]
    FtaViolation(String),

    #[error("no zero found for quotient of degree {0}")]
    NoZeroFound(usize),

    #[error("degenerate denominator {norm:e} in camshaft formula ({case})")]
    DegenerateDenominator { case: &'static str, norm: f64 },

    #[error("no zero of either factor on class (t = {t}, n = {n})")]
    NoFactorZero { t: f64, n: f64 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
