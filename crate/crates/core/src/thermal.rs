//! Perfect-mirror thermal factors, the first-order interplay functions and
//! the analytic deviation functions.
//!
//! All series run over `x = alpha m` with `alpha = pi lambda_T / (2L)`.
//! Terms are summed explicitly while `x` is below the point where the
//! hyperbolic parts fall under the series tolerance; past it each summand is
//! a pure combination of `x^-3` and `x^-4`, and the remainder is added in
//! closed form through the Hurwitz zeta function.

use crate::error::{accept, CasimirError, Result};
use crate::num::Real;
use crate::quadrature::{ConvergenceReport, NeumaierSum, QuadratureSpec};
use crate::special::{
    energy_interplay_summand, energy_thermal_summand, exponential_cutoff, force_interplay_summand,
    force_thermal_summand, hurwitz_zeta,
};

/// `alpha = pi lambda_T / (2L)`. An infinite value is the zero-temperature
/// limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalArgument<T> {
    alpha: T,
}

impl<T: Real> ThermalArgument<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::zero() && !alpha.is_nan() {
            Ok(ThermalArgument { alpha })
        } else {
            Err(CasimirError::domain("alpha", "positive", alpha.as_f64()))
        }
    }

    /// From `lt = lambda_T / L`.
    pub fn from_ratio(lt: T) -> Result<Self> {
        Self::new(T::FRAC_PI_2() * lt)
    }

    pub fn from_lengths(gap: T, lambda_t: T) -> Result<Self> {
        if !(gap > T::zero() && gap.is_finite()) {
            return Err(CasimirError::domain("gap", "positive and finite", gap.as_f64()));
        }
        Self::from_ratio(lambda_t / gap)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `lambda_T / L`.
    pub fn lt(&self) -> T {
        self.alpha / T::FRAC_PI_2()
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.alpha.is_infinite()
    }
}

/// `sum_{m >= 1} summand(alpha m)` where, past the cutoff, the summand is
/// `c3 / x^3 + c4 / x^4` up to exponentially small terms.
fn closed_tail_series<T: Real>(
    alpha: T,
    summand: fn(T) -> T,
    c3: T,
    c4: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>> {
    spec.validate()?;
    if alpha.is_infinite() {
        return Ok(ConvergenceReport::new(T::zero(), T::zero(), 0, true));
    }
    let cutoff = exponential_cutoff(spec.series_rel_tol * T::lit(1e-3));
    let wanted = (cutoff / alpha).floor();
    let cap = T::count(spec.series_max_terms);
    let (terms, converged) = if wanted > cap {
        (spec.series_max_terms, false)
    } else {
        (wanted.to_usize().unwrap_or(0), true)
    };

    let mut acc = NeumaierSum::default();
    for m in 1..=terms {
        acc.add(summand(alpha * T::count(m)));
    }
    let a = T::count(terms + 1);
    let mut tail = T::zero();
    if c3 != T::zero() {
        tail = tail + c3 * hurwitz_zeta(3, a) / alpha.powi(3);
    }
    if c4 != T::zero() {
        tail = tail + c4 * hurwitz_zeta(4, a) / alpha.powi(4);
    }
    acc.add(tail);
    let value = acc.total();
    let roundoff = T::epsilon() * T::count(terms.max(1)).sqrt() * value.abs();
    let est = if converged {
        spec.series_rel_tol * value.abs() + roundoff
    } else {
        // the closed tail is only approximate this early
        tail.abs()
    };
    Ok(ConvergenceReport::new(value, est, terms, converged))
}

/// Thermal correction factor of the force between perfect mirrors,
/// `1 + 30 sum_m [1/(alpha m)^4 - cosh(alpha m) / (alpha m sinh^3(alpha m))]`.
pub fn eta_f_t<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let r = closed_tail_series(a.alpha, force_thermal_summand, T::zero(), T::one(), spec)?;
    Ok(T::one() + T::lit(30.0) * accept(r, "eta_F^T")?)
}

/// Thermal correction factor of the free energy between perfect mirrors.
pub fn eta_e_t<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let r = closed_tail_series(a.alpha, energy_thermal_summand, T::one(), -T::lit(2.0), spec)?;
    Ok(T::one() + T::lit(45.0) * accept(r, "eta_E^T")?)
}

/// First-order interplay function of the force (independent of `lambda_P`).
pub fn phi_f<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let r = closed_tail_series(a.alpha, force_interplay_summand, T::one(), T::zero(), spec)?;
    Ok(T::lit(15.0) / T::PI() * accept(r, "phi_F")?)
}

/// First-order interplay function of the free energy.
pub fn phi_e<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let r = closed_tail_series(a.alpha, energy_interplay_summand, T::one(), -T::lit(4.0), spec)?;
    Ok(T::lit(45.0) / T::PI() * accept(r, "phi_E")?)
}

/// Analytic rescaled deviation of the force,
/// `(8/3pi) lt (eta_F^T - 1)/eta_F^T + lt phi_F / eta_F^T` with `lt = lambda_T / L`.
///
/// Meaningful only while `lambda_P << lambda_T`.
pub fn delta_f_analytic<T: Real>(gap: T, lambda_t: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let a = ThermalArgument::from_lengths(gap, lambda_t)?;
    delta_f_from_argument(&a, spec)
}

pub fn delta_f_from_argument<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    if a.is_zero_temperature() {
        return Ok(T::zero());
    }
    let lt = a.lt();
    let eta = eta_f_t(a, spec)?;
    let phi = phi_f(a, spec)?;
    let k = T::lit(8.0) / (T::lit(3.0) * T::PI());
    Ok(k * lt * (eta - T::one()) / eta + lt * phi / eta)
}

/// Analytic rescaled deviation of the free energy,
/// `(2/pi) lt (eta_E^T - 1)/eta_E^T + lt phi_E / eta_E^T`.
pub fn delta_e_analytic<T: Real>(gap: T, lambda_t: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let a = ThermalArgument::from_lengths(gap, lambda_t)?;
    delta_e_from_argument(&a, spec)
}

pub fn delta_e_from_argument<T: Real>(a: &ThermalArgument<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    if a.is_zero_temperature() {
        return Ok(T::zero());
    }
    let lt = a.lt();
    let eta = eta_e_t(a, spec)?;
    let phi = phi_e(a, spec)?;
    Ok(T::FRAC_2_PI() * lt * (eta - T::one()) / eta + lt * phi / eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::thermal_wavelength;
    use proptest::prelude::*;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    fn arg(gap: f64) -> ThermalArgument<f64> {
        ThermalArgument::from_lengths(gap, thermal_wavelength(300.0).unwrap()).unwrap()
    }

    // plain summation of the hyperbolic forms, many terms, no tail model
    fn brute(alpha: f64, f: fn(f64) -> f64, terms: usize) -> f64 {
        let mut acc = NeumaierSum::default();
        for m in (1..=terms).rev() {
            acc.add(f(alpha * m as f64));
        }
        acc.total()
    }

    #[test]
    fn room_temperature_table_values() {
        assert!((eta_f_t(&arg(3e-6), &spec()).unwrap() - 1.117).abs() < 1e-3);
        assert!((eta_f_t(&arg(0.5e-6), &spec()).unwrap() - 1.000).abs() < 1e-3);
        assert!((eta_e_t(&arg(3e-6), &spec()).unwrap() - 1.470).abs() < 1e-3);
        assert!((eta_e_t(&arg(0.5e-6), &spec()).unwrap() - 1.004).abs() < 1e-3);
    }

    #[test]
    fn closed_tail_matches_long_brute_sum() {
        for alpha in [0.05, 0.7, 4.0, 30.0] {
            let n = 4_000_000;
            let b = brute(alpha, force_thermal_summand, n)
                + crate::special::hurwitz_zeta(4, (n + 1) as f64) / alpha.powi(4);
            let r = closed_tail_series(alpha, force_thermal_summand, 0.0, 1.0, &spec()).unwrap();
            assert!(
                (r.value - b).abs() <= 1e-12 * b.abs().max(1e-300) + 1e-18,
                "alpha {alpha}: {} vs {b}",
                r.value
            );
        }
    }

    #[test]
    fn reference_values_at_alpha_four() {
        // 40-digit sums of the hyperbolic series
        let a = ThermalArgument::new(4.0).unwrap();
        let s = spec();
        let ft = 1.0 + 30.0 * 0.003_891_855_742_918_266;
        assert!(
            (eta_f_t(&a, &s).unwrap() - ft).abs() < 1e-12,
            "{}",
            eta_f_t(&a, &s).unwrap()
        );
        assert!((phi_f(&a, &s).unwrap() - 15.0 / std::f64::consts::PI * 0.014_836_808_779_977_874).abs() < 1e-12);
        assert!((phi_e(&a, &s).unwrap() - 45.0 / std::f64::consts::PI * 0.002_637_193_514_712_441_4).abs() < 1e-12);
        assert!((eta_e_t(&a, &s).unwrap() - (1.0 + 45.0 * 0.010_420_905_000_548_974)).abs() < 1e-12);
    }

    #[test]
    fn zero_temperature_limits() {
        let a = ThermalArgument::new(f64::INFINITY).unwrap();
        let s = spec();
        assert_eq!(eta_f_t(&a, &s).unwrap(), 1.0);
        assert_eq!(eta_e_t(&a, &s).unwrap(), 1.0);
        assert_eq!(phi_f(&a, &s).unwrap(), 0.0);
        assert_eq!(phi_e(&a, &s).unwrap(), 0.0);
        let big = ThermalArgument::new(1e6).unwrap();
        assert!((eta_f_t(&big, &s).unwrap() - 1.0).abs() < 1e-20);
        assert!(phi_f(&big, &s).unwrap().abs() < 1e-17);
        assert!(delta_f_analytic(1e-9, 7.6e-6, &s).unwrap().abs() < 1e-3);
        assert!(delta_f_analytic(1e-12, 7.6e-6, &s).unwrap().abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ThermalArgument::new(0.0_f64).is_err());
        assert!(ThermalArgument::new(f64::NAN).is_err());
        assert!(ThermalArgument::from_lengths(0.0_f64, 1.0).is_err());
        assert!(delta_e_analytic(-1.0_f64, 1.0, &spec()).is_err());
    }

    #[test]
    fn cap_is_reported() {
        let mut s = spec();
        s.series_max_terms = 100;
        let err = eta_f_t(&ThermalArgument::new(1e-3).unwrap(), &s).unwrap_err();
        assert!(matches!(err, CasimirError::NotConverged { .. }));
    }

    #[test]
    fn phi_e_positive_where_delta_e_peaks() {
        let lt = thermal_wavelength(300.0).unwrap();
        // the peak sits near 3 um; phi_E turns negative again beyond ~4 um
        for gap in [1e-6, 2e-6, 2.5e-6, 3e-6, 3.5e-6] {
            let a = arg(gap);
            assert!(phi_e(&a, &spec()).unwrap() > 0.0, "L = {gap}");
            assert!(delta_e_analytic(gap, lt, &spec()).unwrap() > 0.0);
        }
    }

    #[test]
    fn energy_deviation_peaks_higher_than_force() {
        let lt = thermal_wavelength(300.0).unwrap();
        let grid: Vec<f64> = (0..60).map(|i| 0.3e-6 * 1.06f64.powi(i)).collect();
        let peak = |f: &dyn Fn(f64) -> f64| grid.iter().map(|&l| f(l)).fold(f64::MIN, f64::max);
        let pf = peak(&|l| delta_f_analytic(l, lt, &spec()).unwrap());
        let pe = peak(&|l| delta_e_analytic(l, lt, &spec()).unwrap());
        assert!(pe > pf, "{pe} vs {pf}");
    }

    #[test]
    fn single_precision_room_temperature() {
        let a = ThermalArgument::<f32>::from_lengths(3e-6, 7.63295e-6).unwrap();
        let v = eta_f_t(&a, &QuadratureSpec::default()).unwrap();
        assert!((v - 1.117).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn factors_at_least_one_and_monotone(log_alpha in -2.0_f64..2.0, step in 0.01_f64..0.5) {
            let s = spec();
            let a1 = ThermalArgument::new(10f64.powf(log_alpha)).unwrap();
            let a0 = ThermalArgument::new(10f64.powf(log_alpha) * (1.0 - step)).unwrap();
            let (f1, f0) = (eta_f_t(&a1, &s).unwrap(), eta_f_t(&a0, &s).unwrap());
            let (e1, e0) = (eta_e_t(&a1, &s).unwrap(), eta_e_t(&a0, &s).unwrap());
            prop_assert!(f1 >= 1.0 && e1 >= 1.0);
            prop_assert!(f0 > f1 || (f1 - 1.0) < 1e-14);
            prop_assert!(e0 > e1 || (e1 - 1.0) < 1e-14);
        }
    }
}
