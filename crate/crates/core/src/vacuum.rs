//! Zero-temperature conductivity correction factors.
//!
//! The production path integrates the reflection-coefficient summand over
//! the reduced frequency `y` analytically, leaving a single integral over
//! `u = kappa L`. The raw double integral is kept as an independent check.

use crate::error::{accept, CasimirError, Result};
use crate::num::Real;
use crate::optics::{r_par_reduced, reduced_rho};
use crate::quadrature::{try_integrate_semi_infinite, try_integrate_unit, QuadratureSpec};

/// Quantities entering the `y`-integrated vacuum integrand at one `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumReducedIntegrand<T> {
    pub u: T,
    pub rho: T,
    pub g: T,
    pub a_plus: T,
    pub a_minus: T,
    one_minus_rho: T,
}

impl<T: Real> VacuumReducedIntegrand<T> {
    /// `xi_p = omega_P L / c = 2 pi / lp`.
    pub fn new(u: T, xi_p: T) -> Self {
        let (rho, one_minus) = reduced_rho(u, xi_p);
        let e = (-u).exp();
        let one_minus_e = -(-u).exp_m1();
        // rho (s + u) / u, written without the difference s - u
        let base = if xi_p.is_infinite() {
            T::infinity()
        } else {
            let s = xi_p.hypot(u);
            xi_p * xi_p / ((s + u) * u)
        };
        // 1 - rho e^-u = (1 - e^-u) + e^-u (1 - rho)
        let denom_plus = one_minus_e + e * one_minus;
        let a_minus = (base * one_minus_e / (T::one() + rho * e)).sqrt();
        let a_plus = (base * (T::one() + e) / denom_plus).sqrt();
        // a_plus^2 - a_minus^2 in closed form
        let gap = T::lit(2.0) * base * e * (T::one() + rho) / (denom_plus * (T::one() + rho * e));
        let g = g_function(a_minus, a_plus, gap);
        VacuumReducedIntegrand {
            u,
            rho,
            g,
            a_plus,
            a_minus,
            one_minus_rho: one_minus,
        }
    }

    /// `u^3 [2 rho^2 + rho e^u g] / (e^{2u} - rho^2)`.
    pub fn value(&self) -> T {
        let u = self.u;
        let q = (-(u + u)).exp();
        let rho = self.rho;
        // 1 - rho^2 q = (1 - q) + q (1 - rho)(1 + rho)
        let den = -(-(u + u)).exp_m1() + q * self.one_minus_rho * (T::one() + rho);
        let num = T::lit(2.0) * rho * rho * q + rho * (-u).exp() * self.g;
        u * u * u * num / den
    }
}

/// `(1 + a^2)/a * atan(1/a)`, tending to 1 for large `a`.
fn h<T: Real>(a: T) -> T {
    if a.is_infinite() {
        return T::one();
    }
    (T::one() + a * a) / a * T::one().atan2(a)
}

/// `h(a_minus) - h(a_plus)` given `gap = a_plus^2 - a_minus^2`.
///
/// For small arguments both `h` values grow like `pi / (2a)` and nearly
/// cancel, so the difference is assembled from `gap` directly:
/// `h(a) = (pi/2)(a + 1/a) - k(a)` with `k(a) = (1 + a^2) atan(a) / a`.
fn g_function<T: Real>(a_minus: T, a_plus: T, gap: T) -> T {
    if !(a_plus < T::lit(0.5)) || gap == T::zero() {
        return h(a_minus) - h(a_plus);
    }
    let diff = gap / (a_plus + a_minus);
    let singular = T::FRAC_PI_2() * diff * (T::one() / (a_minus * a_plus) - T::one());
    // k(a) = 1 + sum_n (-1)^(n-1) 2 a^2n / (4n^2 - 1)
    let (p, m) = (a_plus * a_plus, a_minus * a_minus);
    let mut power_sum = T::one(); // (p^n - m^n) / (p - m)
    let mut m_pow = T::one();
    let mut sign = T::one();
    let mut k_diff = T::zero();
    for n in 1..40 {
        let nf = T::lit(n as f64);
        let c = T::lit(2.0) / (T::lit(4.0) * nf * nf - T::one());
        let term = sign * c * gap * power_sum;
        k_diff = k_diff + term;
        if term.abs() <= T::epsilon() * k_diff.abs() {
            break;
        }
        m_pow = m_pow * m;
        power_sum = p * power_sum + m_pow;
        sign = -sign;
    }
    singular + k_diff
}

fn plasma_frequency_ratio<T: Real>(lp: T) -> Result<T> {
    if !(lp > T::zero() && lp.is_finite()) {
        return Err(CasimirError::domain("lambda_P / L", "positive and finite", lp.as_f64()));
    }
    Ok(T::TAU() / lp)
}

/// `y`-integrated vacuum integrand at `u` for `xi_p = 2 pi / lp`; the
/// perfect mirror is `xi_p = inf`.
pub(crate) fn reduced_integrand<T: Real>(u: T, xi_p: T) -> T {
    if u == T::zero() {
        return T::zero();
    }
    if xi_p.is_infinite() {
        let q = (-(u + u)).exp();
        return T::lit(2.0) * u * u * u * q / -(-(u + u)).exp_m1();
    }
    VacuumReducedIntegrand::new(u, xi_p).value()
}

/// `sum over polarizations of r^2 q / (1 - r^2 q)` at `(u, y)`.
pub(crate) fn mode_summand<T: Real>(u: T, y: T, xi_p: T) -> T {
    let (rho, one_minus) = reduced_rho(u, xi_p);
    let q = (-(u + u)).exp();
    let r_par = r_par_reduced(rho, one_minus, y);
    let term = |r2: T| r2 * q / (T::one() - r2 * q);
    term(rho * rho) + term(r_par * r_par)
}

fn prefactor<T: Real>() -> T {
    T::lit(120.0) / T::PI().powi(4)
}

/// Vacuum conductivity correction of the force, `lp = lambda_P / L`.
pub fn eta_f_p<T: Real>(lp: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let xi_p = plasma_frequency_ratio(lp)?;
    eta_f_p_reduced(xi_p, spec)
}

pub(crate) fn eta_f_p_reduced<T: Real>(xi_p: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if xi_p.is_infinite() {
        return Ok(T::one());
    }
    let pre = prefactor::<T>();
    let r = try_integrate_semi_infinite::<T, _, CasimirError>(
        |u| Ok(reduced_integrand(u, xi_p)),
        T::lit(0.5),
        &spec.scaled(T::one() / pre),
    )?;
    Ok(pre * accept(r, "eta_F^P")?)
}

/// Same factor from the raw double integral over `u` and `y`.
pub fn eta_f_p_2d<T: Real>(lp: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let xi_p = plasma_frequency_ratio(lp)?;
    let pre = prefactor::<T>();
    let outer_spec = spec.scaled(T::one() / pre);
    let inner_spec = outer_spec.scaled(T::lit(0.01));
    let r = try_integrate_semi_infinite::<T, _, CasimirError>(
        |u| {
            if u == T::zero() {
                return Ok(T::zero());
            }
            let inner = try_integrate_unit::<T, _, CasimirError>(|y| Ok(mode_summand(u, y, xi_p)), &inner_spec)?;
            Ok(u * u * u * accept(inner, "eta_F^P inner integral")?)
        },
        T::lit(0.5),
        &outer_spec,
    )?;
    Ok(pre * accept(r, "eta_F^P")?)
}

/// Vacuum conductivity correction of the free energy,
/// `3 int_0^1 s^2 eta_F^P(lp s) ds`.
pub fn eta_e_p<T: Real>(lp: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let xi_p = plasma_frequency_ratio(lp)?;
    eta_e_p_reduced(xi_p, spec)
}

pub(crate) fn eta_e_p_reduced<T: Real>(xi_p: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if xi_p.is_infinite() {
        return Ok(T::one());
    }
    let inner_spec = spec.scaled(T::lit(0.1));
    let r = try_integrate_unit::<T, _, CasimirError>(
        |s| {
            if s == T::zero() {
                return Ok(T::zero());
            }
            Ok(s * s * eta_f_p_reduced(xi_p / s, &inner_spec)?)
        },
        &spec.scaled(T::lit(1.0 / 3.0)),
    )?;
    Ok(T::lit(3.0) * accept(r, "eta_E^P")?)
}

/// Long-distance expansion `1 - (8 / 3pi) lp`.
pub fn eta_f_p_asymptotic<T: Real>(lp: T) -> Result<T> {
    if !(lp >= T::zero() && lp < T::one()) {
        return Err(CasimirError::domain("lambda_P / L", "within [0, 1)", lp.as_f64()));
    }
    Ok(T::one() - T::lit(8.0) / (T::lit(3.0) * T::PI()) * lp)
}

/// Long-distance expansion `1 - (2 / pi) lp`.
pub fn eta_e_p_asymptotic<T: Real>(lp: T) -> Result<T> {
    if !(lp >= T::zero() && lp < T::one()) {
        return Err(CasimirError::domain("lambda_P / L", "within [0, 1)", lp.as_f64()));
    }
    Ok(T::one() - T::FRAC_2_PI() * lp)
}

/// Coefficient of the short-distance law `eta_F^P ~ alpha L / lambda_P`,
/// `(30/pi^2) int_0^inf e^{-3K/4} K^2 (sinh(K/2)^{-1/2} - cosh(K/2)^{-1/2}) dK`.
pub fn short_distance_coefficient<T: Real>(spec: &QuadratureSpec<T>) -> Result<T> {
    let pre = T::lit(30.0) / (T::PI() * T::PI());
    let r = try_integrate_semi_infinite::<T, _, CasimirError>(
        |k| Ok(short_distance_integrand(k)),
        T::one(),
        &spec.scaled(T::one() / pre),
    )?;
    Ok(pre * accept(r, "short-distance coefficient")?)
}

/// The short-distance integrand with the hyperbolic factors folded into
/// `e^{-K}`: `sqrt(2) K^2 e^{-K} [(1 - e^{-K})^{-1/2} - (1 + e^{-K})^{-1/2}]`.
pub(crate) fn short_distance_integrand<T: Real>(k: T) -> T {
    if k == T::zero() {
        return T::zero();
    }
    let e = (-k).exp();
    T::SQRT_2() * k * k * e * (T::one() / (-(-k).exp_m1()).sqrt() - T::one() / (T::one() + e).sqrt())
}
