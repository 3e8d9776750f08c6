//! Tolerance-controlled integration and summation primitives.
//!
//! Every routine comes in two flavours: a `try_*` form taking a fallible
//! integrand (used by the physics code, whose integrands are themselves
//! nested quadratures) and a plain form for ordinary closures.

mod adaptive;
mod kronrod;
mod oscillatory;
mod series;

pub use adaptive::{
    integrate_interval, integrate_semi_infinite, integrate_unit, try_integrate_interval, try_integrate_semi_infinite,
    try_integrate_unit,
};
pub use oscillatory::{integrate_oscillatory, try_integrate_oscillatory, EulerAccumulator};
pub use series::{sum_series, try_sum_series, NeumaierSum};

use crate::error::QuadratureError;
use crate::num::Real;

/// Tolerances and limits governing every numerical evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
    pub series_rel_tol: T,
    pub series_max_terms: usize,
}

impl<T: Real> Default for QuadratureSpec<T> {
    /// `abs_tol = 1e-10`, `rel_tol = 1e-9`, 2000 subdivisions,
    /// `series_rel_tol = 1e-12`, 10^6 series terms. Tolerances are floored
    /// at a small multiple of machine epsilon so the defaults stay
    /// attainable in single precision.
    fn default() -> Self {
        let floor = Self::precision_floor();
        QuadratureSpec {
            abs_tol: T::lit(1e-10).max(floor),
            rel_tol: T::lit(1e-9).max(floor),
            max_subdivisions: 2000,
            series_rel_tol: T::lit(1e-12).max(Self::series_floor()),
            series_max_terms: 1_000_000,
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        if !positive(self.abs_tol) || !positive(self.rel_tol) {
            return Err(QuadratureError::InvalidSpec("integration tolerances must be positive"));
        }
        if !positive(self.series_rel_tol) {
            return Err(QuadratureError::InvalidSpec("series tolerance must be positive"));
        }
        if self.max_subdivisions == 0 || self.series_max_terms == 0 {
            return Err(QuadratureError::InvalidSpec("iteration limits must be at least 1"));
        }
        Ok(())
    }

    /// Smallest integration tolerance the Gauss-Kronrod error estimate can
    /// certify, `100 eps`.
    pub fn precision_floor() -> T {
        T::epsilon() * T::lit(100.0)
    }

    fn series_floor() -> T {
        T::epsilon() * T::lit(4.0)
    }

    /// Same spec with every tolerance multiplied by `factor`, but never
    /// tighter than the precision floor.
    pub fn scaled(&self, factor: T) -> Self {
        let floor = Self::precision_floor();
        QuadratureSpec {
            abs_tol: (self.abs_tol * factor).max(floor.min(self.abs_tol)),
            rel_tol: (self.rel_tol * factor).max(floor.min(self.rel_tol)),
            series_rel_tol: (self.series_rel_tol * factor).max(Self::series_floor().min(self.series_rel_tol)),
            ..*self
        }
    }

    /// Error target for a result of magnitude `value`.
    pub fn target(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of one integration or summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport<T> {
    pub value: T,
    pub est_error: T,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> ConvergenceReport<T> {
    pub(crate) fn new(value: T, est_error: T, evaluations: usize, converged: bool) -> Self {
        ConvergenceReport {
            value,
            est_error: est_error.abs(),
            evaluations,
            converged,
        }
    }
}

pub(crate) fn check_finite<T: Real>(x: T, y: T) -> Result<T, QuadratureError> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QuadratureError::NonFinite {
            abscissa: x.as_f64(),
            value: y.as_f64(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_spec_matches_documented_values() {
        let s = QuadratureSpec::<f64>::default();
        assert_eq!(s.abs_tol, 1e-10);
        assert_eq!(s.rel_tol, 1e-9);
        assert_eq!(s.max_subdivisions, 2000);
        assert_eq!(s.series_rel_tol, 1e-12);
        assert_eq!(s.series_max_terms, 1_000_000);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn single_precision_defaults_are_floored() {
        let s = QuadratureSpec::<f32>::default();
        assert!(s.abs_tol > 1e-6);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn invalid_specs_rejected() {
        let s = QuadratureSpec::<f64> {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
        let s = QuadratureSpec::<f64> {
            series_max_terms: 0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }
}
