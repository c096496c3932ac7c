//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer near {0}")]
    PoleAtNonPositiveInteger(String),
    #[error("no implemented hypergeometric regime for {0}")]
    RegimeUnsupported(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("integer parameter degeneracy: {0}")]
    IntegerParameterDegeneracy(String),
    #[error("point not in the upper half plane: {0}")]
    NotInUpperHalfPlane(String),
    #[error("quadrature refinement cap reached: {0}")]
    QuadratureNonConvergence(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("removable singularity at {0}; use the product form")]
    RemovableSingularity(String),
    #[error("denominator factor too close to zero: {0}")]
    PoleProximity(String),
    #[error("norm {norm} is not a power of {base}")]
    NotAPower { norm: f64, base: f64 },
    #[error("outside the convergence region: {0}")]
    OutOfConvergenceRegion(String),
    #[error("weight bound violated: {0}")]
    WeightBoundViolated(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("element is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 usage or input, 3 domain, 4 numeric, 5 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvariantViolation(_) | Error::IndexOutOfRange(_) => 2,
            Error::OutOfConvergenceRegion(_)
            | Error::PoleProximity(_)
            | Error::NotInUpperHalfPlane(_)
            | Error::NotHyperbolic(_)
            | Error::NotAPower { .. }
            | Error::WeightBoundViolated(_) => 3,
            Error::PoleAtNonPositiveInteger(_)
            | Error::RegimeUnsupported(_)
            | Error::NonConvergence(_)
            | Error::IntegerParameterDegeneracy(_)
            | Error::QuadratureNonConvergence(_)
            | Error::RemovableSingularity(_) => 4,
            Error::Io(_) => 5,
        }
    }
}
