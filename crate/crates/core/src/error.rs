use thiserror::Error;

use crate::num::Real;
use crate::quadrature::ConvergenceReport;

/// Failure raised by the quadrature engine itself.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("integrand returned non-finite value {value} at abscissa {abscissa}")]
    NonFinite { abscissa: f64, value: f64 },
    #[error("invalid quadrature setting: {0}")]
    InvalidSpec(&'static str),
}

/// Errors surfaced by the physics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("{quantity} must be {requirement}, got {value}")]
    Domain {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{quantity} did not converge (best estimate {value}, estimated error {est_error})")]
    NotConverged {
        quantity: &'static str,
        value: f64,
        est_error: f64,
    },
    #[error("energy truncation audit failed: extending the upper limit 100x changed the result by {relative_change:e} (limit {limit:e})")]
    TruncationAudit { relative_change: f64, limit: f64 },
}

impl CasimirError {
    pub(crate) fn domain(quantity: &'static str, requirement: &'static str, value: f64) -> Self {
        CasimirError::Domain {
            quantity,
            requirement,
            value,
        }
    }

    /// True for failures that come from numerical non-convergence rather
    /// than invalid input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, CasimirError::Domain { .. })
    }
}

pub type Result<T, E = CasimirError> = std::result::Result<T, E>;

/// Unwraps a report, turning non-convergence into [`CasimirError::NotConverged`].
pub(crate) fn accept<T: Real>(report: ConvergenceReport<T>, quantity: &'static str) -> Result<T> {
    if report.converged {
        Ok(report.value)
    } else {
        Err(CasimirError::NotConverged {
            quantity,
            value: report.value.as_f64(),
            est_error: report.est_error.as_f64(),
        })
    }
}
