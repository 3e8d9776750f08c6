//! Plasma-model dielectric response and reflection amplitudes on the
//! imaginary frequency axis.
//!
//! Amplitudes are written in terms of `rho` and `y = omega / (c kappa)`,
//! which stay finite at zero frequency. `rho` itself is evaluated in the
//! rationalized form `omega_P^2 / (sqrt(omega_P^2 + c^2 kappa^2) + c kappa)^2`,
//! free of subtractive cancellation for any ratio `c kappa / omega_P`.

use crate::error::{CasimirError, Result};
use crate::num::Real;
use crate::units::{PhysicalConstants, PlasmaMirror};

/// A point on the imaginary frequency axis with its longitudinal wavevector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T> {
    omega: T,
    kappa: T,
    y: T,
}

impl<T: Real> SpectralPoint<T> {
    /// `omega >= 0` in rad/s and `kappa >= omega / c` in 1/m, `kappa > 0`.
    pub fn new(omega: T, kappa: T) -> Result<Self> {
        let c = PhysicalConstants::<T>::codata2018().c;
        if !(omega >= T::zero() && omega.is_finite()) {
            return Err(CasimirError::domain("omega", "non-negative and finite", omega.as_f64()));
        }
        if !(kappa > T::zero() && kappa.is_finite()) {
            return Err(CasimirError::domain("kappa", "positive and finite", kappa.as_f64()));
        }
        let y = omega / (c * kappa);
        if y > T::one() {
            return Err(CasimirError::domain("kappa", "at least omega / c", kappa.as_f64()));
        }
        Ok(SpectralPoint { omega, kappa, y })
    }

    /// Builds the point from `kappa` and the reduced frequency `y` in `[0, 1]`.
    pub fn from_reduced(kappa: T, y: T) -> Result<Self> {
        if !(y >= T::zero() && y <= T::one()) {
            return Err(CasimirError::domain("y", "within [0, 1]", y.as_f64()));
        }
        if !(kappa > T::zero() && kappa.is_finite()) {
            return Err(CasimirError::domain("kappa", "positive and finite", kappa.as_f64()));
        }
        let c = PhysicalConstants::<T>::codata2018().c;
        Ok(SpectralPoint {
            omega: y * c * kappa,
            kappa,
            y,
        })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn y(&self) -> T {
        self.y
    }
}

/// Reflection amplitudes of both polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair<T> {
    pub r_perp: T,
    pub r_par: T,
}

/// `1 + (omega_P / omega)^2`.
pub fn epsilon_plasma<T: Real>(omega: T, mirror: &PlasmaMirror<T>) -> Result<T> {
    if !(omega > T::zero()) {
        return Err(CasimirError::domain("omega", "positive", omega.as_f64()));
    }
    let ratio = mirror.omega_p() / omega;
    Ok(T::one() + ratio * ratio)
}

/// `(sqrt(omega_P^2 + c^2 kappa^2) - c kappa) / (sqrt(omega_P^2 + c^2 kappa^2) + c kappa)`.
pub fn rho<T: Real>(kappa: T, mirror: &PlasmaMirror<T>) -> Result<T> {
    if !(kappa >= T::zero()) {
        return Err(CasimirError::domain("kappa", "non-negative", kappa.as_f64()));
    }
    let c = PhysicalConstants::<T>::codata2018().c;
    Ok(reduced_rho(c * kappa, mirror.omega_p()).0)
}

/// Reflection amplitudes at `p`. The zero-frequency limit `r_par = -1` is
/// exact.
pub fn reflection_pair<T: Real>(p: &SpectralPoint<T>, mirror: &PlasmaMirror<T>) -> ReflectionPair<T> {
    let c = PhysicalConstants::<T>::codata2018().c;
    let (rho, one_minus) = reduced_rho(c * p.kappa, mirror.omega_p());
    ReflectionPair {
        r_perp: -rho,
        r_par: r_par_reduced(rho, one_minus, p.y),
    }
}

/// Returns `(rho, 1 - rho)` for a wavevector `u` and plasma frequency `xi_p`
/// expressed in the same (arbitrary) units. An infinite `xi_p` is the
/// perfect reflector.
#[inline]
pub(crate) fn reduced_rho<T: Real>(u: T, xi_p: T) -> (T, T) {
    if xi_p.is_infinite() || u == T::zero() {
        return (T::one(), T::zero());
    }
    let s = xi_p.hypot(u);
    let d = s + u;
    let rho = (xi_p / d) * (xi_p / d);
    let one_minus = (u + u) / d;
    (rho, one_minus)
}

#[inline]
pub(crate) fn r_par_reduced<T: Real>(rho: T, one_minus_rho: T, y: T) -> T {
    if y == T::zero() {
        return -T::one();
    }
    let two = T::lit(2.0);
    let w = y * y * one_minus_rho;
    rho * (w - two) / (w + two * rho)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook plasma-model Fresnel amplitudes, evaluated directly.
    pub(crate) fn fresnel_oracle(omega: f64, kappa: f64, omega_p: f64) -> (f64, f64) {
        let c = 299_792_458.0_f64;
        let root = (omega_p * omega_p + c * c * kappa * kappa).sqrt();
        let ck = c * kappa;
        let r_perp = -(root - ck) / (root + ck);
        let eps = 1.0 + (omega_p / omega).powi(2);
        let r_par = (root - ck * eps) / (root + ck * eps);
        (r_perp, r_par)
    }

    fn al() -> PlasmaMirror<f64> {
        PlasmaMirror::new(107e-9).unwrap()
    }

    #[test]
    fn dielectric_values() {
        let m = al();
        let wp = m.omega_p();
        assert!((epsilon_plasma(wp, &m).unwrap() - 2.0).abs() < 1e-15);
        assert!((epsilon_plasma(wp / 2.0, &m).unwrap() - 5.0).abs() < 1e-14);
        assert!((epsilon_plasma(wp * 1e9, &m).unwrap() - 1.0).abs() < 1e-15);
        assert!(epsilon_plasma(0.0, &m).is_err());
    }

    #[test]
    fn rho_values() {
        let m = al();
        let c = 299_792_458.0;
        assert_eq!(rho(0.0, &m).unwrap(), 1.0);
        let k1 = m.omega_p() / c;
        assert!((rho(k1, &m).unwrap() - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        // (sqrt(101) - 10)^2
        let r10 = rho(10.0 * k1, &m).unwrap();
        assert!((r10 - 0.002_487_577_582_194_595_6).abs() < 1e-16, "{r10}");
        assert!(rho(-1.0, &m).is_err());
    }

    #[test]
    fn rho_far_tail_has_no_cancellation() {
        let m = al();
        let k = 1e9 * m.omega_p() / 299_792_458.0;
        let r = rho(k, &m).unwrap();
        assert!((r / 2.5e-19 - 1.0).abs() < 1e-12, "{r}");
    }

    #[test]
    fn zero_frequency_limit_exact() {
        let m = al();
        for kappa in [1e3, 1e6, 1e7, 1e9] {
            let p = SpectralPoint::new(0.0, kappa).unwrap();
            let r = reflection_pair(&p, &m);
            assert_eq!(r.r_par, -1.0);
            assert_eq!(r.r_perp, -rho(kappa, &m).unwrap());
        }
    }

    #[test]
    fn perfect_mirror_limit() {
        let p = SpectralPoint::<f64>::new(1e14, 1e7).unwrap();
        let r = reflection_pair(&p, &PlasmaMirror::perfect());
        assert_eq!((r.r_perp, r.r_par), (-1.0, -1.0));
        let tiny = PlasmaMirror::new(1e-15).unwrap();
        let r = reflection_pair(&p, &tiny);
        assert!((r.r_perp + 1.0).abs() < 1e-6 && (r.r_par + 1.0).abs() < 1e-6);
    }

    #[test]
    fn matches_fresnel_at_plasma_wavevector() {
        let m = al();
        let c = 299_792_458.0;
        let kappa = m.omega_p() / c;
        let p = SpectralPoint::from_reduced(kappa, 1.0).unwrap();
        let r = reflection_pair(&p, &m);
        let (a, b) = fresnel_oracle(p.omega(), kappa, m.omega_p());
        assert!((r.r_perp - a).abs() < 1e-14);
        assert!((r.r_par - b).abs() < 1e-14);
    }

    #[test]
    fn spectral_point_validation() {
        assert!(SpectralPoint::new(-1.0, 1.0).is_err());
        assert!(SpectralPoint::new(1.0, 0.0).is_err());
        assert!(SpectralPoint::new(3e8, 0.5).is_err());
        assert!(SpectralPoint::<f64>::from_reduced(1.0, 1.5).is_err());
        let p = SpectralPoint::<f64>::new(1.5e14, 1e6).unwrap();
        assert!((p.y() - 1.5e14 / (299_792_458.0 * 1e6)).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        // the direct formula cancels like 1/rho, so stay where it is well conditioned
        fn reduced_form_equals_fresnel(y in 1e-6_f64..=1.0, logw in -4.0_f64..0.5) {
            let m = al();
            let c = 299_792_458.0;
            let kappa = 10f64.powf(logw) * m.omega_p() / c;
            let p = SpectralPoint::from_reduced(kappa, y).unwrap();
            let r = reflection_pair(&p, &m);
            let (a, b) = fresnel_oracle(p.omega(), kappa, m.omega_p());
            prop_assert!((r.r_perp - a).abs() <= 1e-13 * a.abs().max(1e-300));
            prop_assert!((r.r_par - b).abs() <= 1e-13 * b.abs().max(1e-300) + 1e-15, "{} vs {}", r.r_par, b);
        }
    }

    proptest! {
        #[test]
        fn reduced_form_equals_fresnel_far_tail(y in 1e-6_f64..=1.0, logw in 0.5_f64..4.0) {
            // the oracle itself carries an error of order eps / rho here
            let m = al();
            let kappa = 10f64.powf(logw) * m.omega_p() / 299_792_458.0;
            let p = SpectralPoint::from_reduced(kappa, y).unwrap();
            let r = reflection_pair(&p, &m);
            let (a, b) = fresnel_oracle(p.omega(), kappa, m.omega_p());
            let cond = 8.0 * f64::EPSILON / r.r_perp.abs();
            prop_assert!((r.r_perp - a).abs() <= (1e-13 + cond) * a.abs());
            prop_assert!((r.r_par - b).abs() <= (1e-13 + cond) * b.abs() + 1e-15);
        }

        #[test]
        fn amplitudes_bounded(y in 0.0_f64..=1.0, logw in -8.0_f64..8.0) {
            let m = al();
            let kappa = 10f64.powf(logw) * m.omega_p() / 299_792_458.0;
            let r = reflection_pair(&SpectralPoint::from_reduced(kappa, y).unwrap(), &m);
            prop_assert!(r.r_perp <= 0.0);
            prop_assert!(r.r_perp * r.r_perp <= 1.0);
            prop_assert!(r.r_par * r.r_par <= 1.0);
        }

        #[test]
        fn rho_strictly_decreasing(logw in -6.0_f64..6.0, step in 1e-3_f64..1.0) {
            let m = al();
            let k = 10f64.powf(logw) * m.omega_p() / 299_792_458.0;
            prop_assert!(rho(k * (1.0 + step), &m).unwrap() < rho(k, &m).unwrap());
        }
    }
}
