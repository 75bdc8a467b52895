use thiserror::Error;

/// Errors raised by the representation, square-root and factorization routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion norm {norm:e} is below the zero threshold")]
    ZeroQuaternion { norm: f64 },

    #[error("matrix is not symplectic (residual {residual:e})")]
    NotSymplectic { residual: f64 },

    #[error("matrix is not positive definite symplectic: {reason}")]
    NotPositiveDefinite { reason: &'static str },

    #[error("quadratic for a^2 has negative discriminant {discriminant:e}")]
    NegativeDiscriminant { discriminant: f64 },

    #[error("linear system for p and r is singular (a^2 - q.q = {value:e})")]
    SingularGuard { value: f64 },

    #[error("matrix is not a decomposable tensor u (x) v (rank-1 residual {residual:e})")]
    NotDecomposable { residual: f64 },

    #[error("orthogonal factor is not symplectic: v has i/k components of size {residual:e}")]
    NotSymplecticOrthogonal { residual: f64 },

    #[error("quaternion form violates its constraints: {constraint} (residual {residual:e})")]
    InvalidForm {
        constraint: &'static str,
        residual: f64,
    },

    #[error("square-root candidate failed verification: {check} (residual {residual:e})")]
    CandidateRejected { check: &'static str, residual: f64 },

    #[error("no orthogonal symplectic diagonalization could be verified")]
    DiagonalizationFailed,

    #[error("symmetric matrix has non-positive eigenvalue {eigenvalue:e}")]
    NotPd { eigenvalue: f64 },
}

impl Error {
    /// True for errors that mean the input lacks the required structure, as
    /// opposed to an internal numeric guard tripping on (nominally) valid data.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::NotSymplectic { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::NotDecomposable { .. }
                | Error::NotSymplecticOrthogonal { .. }
                | Error::InvalidForm { .. }
                | Error::NotPd { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
