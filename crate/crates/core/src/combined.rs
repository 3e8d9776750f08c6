//! Full finite-temperature, finite-conductivity force and free energy.
//!
//! Two independent routes give the force: the Matsubara sum over
//! imaginary frequencies and its Poisson resummation over multiples of the
//! thermal wavelength. Both work with `u = kappa L`, `xi = omega L / c`,
//! `y = xi / u`, `xi_P = 2 pi / lp` and `xi_T = 2 pi / lt`.

use rayon::prelude::*;

use crate::error::{accept, CasimirError, Result};
use crate::num::Real;
use crate::optics::reduced_rho;
use crate::quadrature::{
    try_integrate_interval, try_integrate_oscillatory, try_integrate_semi_infinite, ConvergenceReport, NeumaierSum,
    QuadratureSpec,
};
use crate::special::hurwitz_zeta;
use crate::thermal::{delta_e_from_argument, delta_f_from_argument, eta_e_t, eta_f_t, ThermalArgument};
use crate::units::CavityState;
use crate::vacuum::{eta_e_p_reduced, eta_f_p_reduced, mode_summand};

/// Dimensionless description of a cavity: `lp = lambda_P / L` (zero for
/// perfect mirrors) and `lt = lambda_T / L` (infinite at zero temperature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratios<T> {
    pub lp: T,
    pub lt: T,
}

impl<T: Real> Ratios<T> {
    pub fn new(lp: T, lt: T) -> Result<Self> {
        if !(lp >= T::zero() && lp.is_finite()) {
            return Err(CasimirError::domain(
                "lambda_P / L",
                "non-negative and finite",
                lp.as_f64(),
            ));
        }
        if !(lt > T::zero()) || lt.is_nan() {
            return Err(CasimirError::domain("lambda_T / L", "positive", lt.as_f64()));
        }
        Ok(Ratios { lp, lt })
    }

    pub fn of(cav: &CavityState<T>) -> Self {
        Ratios {
            lp: cav.lp(),
            lt: cav.lt(),
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.lp == T::zero()
    }

    pub fn is_cold(&self) -> bool {
        self.lt.is_infinite()
    }

    fn xi_p(&self) -> T {
        if self.lp == T::zero() {
            T::infinity()
        } else {
            T::TAU() / self.lp
        }
    }

    fn xi_t(&self) -> T {
        if self.lt.is_infinite() {
            T::zero()
        } else {
            T::TAU() / self.lt
        }
    }

    fn thermal(&self) -> Result<ThermalArgument<T>> {
        ThermalArgument::from_ratio(self.lt)
    }

    /// The same mirrors and bath at distance `L / t`.
    fn stretched(&self, t: T) -> Self {
        Ratios {
            lp: self.lp * t,
            lt: self.lt * t,
        }
    }
}

fn force_prefactor<T: Real>() -> T {
    T::lit(120.0) / T::PI().powi(4)
}

/// Frequency integral `int_xi^inf u^2 f(u, xi / u) du` of one Matsubara term.
fn matsubara_term<T: Real>(xi: T, xi_p: T, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>> {
    try_integrate_semi_infinite::<T, _, CasimirError>(
        |v| {
            let u = xi + v;
            if u == T::zero() {
                return Ok(T::zero());
            }
            Ok(u * u * mode_summand(u, xi / u, xi_p))
        },
        T::lit(0.5),
        spec,
    )
}

/// Matsubara terms keep being added until `2 k xi_T` exceeds this, bounding
/// the dropped tail by `exp(-46)`.
const MATSUBARA_EXPONENT: f64 = 46.0;

/// Force correction factor `eta_F` from the Matsubara sum.
///
/// Perfect mirrors and zero temperature are routed to the closed forms of
/// the thermal and vacuum factors.
pub fn eta_f<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    if r.is_perfect() {
        return eta_f_t(&r.thermal()?, spec);
    }
    if r.is_cold() {
        return eta_f_p_reduced(r.xi_p(), spec);
    }
    eta_f_matsubara(r, spec)
}

/// The Matsubara sum itself, without any limit routing. Needs `lt` finite.
pub fn eta_f_matsubara<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    let xi_p = r.xi_p();
    if r.is_cold() {
        return eta_f_p_reduced(xi_p, spec);
    }
    let xi_t = r.xi_t();
    let pre = force_prefactor::<T>() * xi_t;
    // per-term tolerances relative to the whole factor
    let mut term_spec = spec.scaled(T::lit(0.1));
    term_spec.abs_tol = (spec.abs_tol * T::lit(0.01) / pre).max(QuadratureSpec::<T>::precision_floor());

    let zero = matsubara_term(T::zero(), xi_p, &term_spec)?;
    let mut acc = NeumaierSum::default();
    acc.add(T::lit(0.5) * accept(zero, "zero-frequency Matsubara term")?);
    let exponent = T::lit(MATSUBARA_EXPONENT);
    for k in 1..=spec.series_max_terms {
        let xi = T::count(k) * xi_t;
        let term = accept(matsubara_term(xi, xi_p, &term_spec)?, "Matsubara term")?;
        acc.add(term);
        if xi + xi > exponent && term.abs() <= spec.series_rel_tol * acc.total().abs() {
            return Ok(pre * acc.total());
        }
    }
    Err(CasimirError::NotConverged {
        quantity: "Matsubara sum",
        value: (pre * acc.total()).as_f64(),
        est_error: f64::NAN,
    })
}

/// `-(e^{2u} / (e^{2u} - 1)) sum_pol (1 - r^2) / (e^{2u} - r^2)`: the
/// plasma summand minus the perfect-mirror one.
pub(crate) fn mode_deficit<T: Real>(u: T, y: T, xi_p: T) -> T {
    let (rho, one_minus) = reduced_rho(u, xi_p);
    let q = (-(u + u)).exp();
    let one_minus_q = -(-(u + u)).exp_m1();
    let one_plus = T::one() + rho;
    // 1 - r^2 in factored form for both polarizations
    let perp = one_minus * one_plus;
    let w = y * y * one_minus;
    let den = w + T::lit(2.0) * rho;
    let par = if y == T::zero() {
        T::zero()
    } else {
        w * one_plus * (w * one_minus + T::lit(4.0) * rho) / (den * den)
    };
    let piece = |d: T| d / (one_minus_q + q * d);
    -q / one_minus_q * (piece(perp) + piece(par))
}

/// `int_xi^inf u^2 deficit(u, xi / u) du`.
fn deficit_spectrum<T: Real>(xi: T, xi_p: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let r = try_integrate_semi_infinite::<T, _, CasimirError>(
        |v| {
            let u = xi + v;
            if u == T::zero() {
                return Ok(T::zero());
            }
            Ok(u * u * mode_deficit(u, xi / u, xi_p))
        },
        T::lit(0.5),
        spec,
    )?;
    accept(r, "deficit spectrum")
}

/// Cosine transform of the deficit spectrum at `x = m lt`.
fn deficit_transform<T: Real>(x: T, xi_p: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let inner = spec.scaled(T::lit(0.01));
    let r = try_integrate_oscillatory::<T, _, CasimirError>(
        |xi| Ok((x * xi).cos() * deficit_spectrum(xi, xi_p, &inner)?),
        T::TAU() / x,
        spec,
    )?;
    accept(r, "remainder transform")
}

/// Terms of the remainder sum always computed before its tail is closed.
const REMAINDER_MIN_TERMS: usize = 6;
const REMAINDER_MAX_TERMS: usize = 400;

/// `sum_{m >= 1} D_m` with `D_m` the cosine transform at `m lt`.
///
/// `D_m m^3` levels off quickly, so the sum is closed with
/// `D_M M^3 zeta(3, M + 1)`; the change of `D_m m^3` between the last two
/// terms bounds what that leaves out.
fn remainder_sum<T: Real>(lt: T, xi_p: T, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>> {
    let scale = T::lit(2.0) * force_prefactor::<T>();
    let tol = spec.abs_tol * T::lit(0.1) / scale;
    let term_spec = spec.scaled(T::lit(0.1));

    let mut acc = NeumaierSum::default();
    let mut previous = T::nan();
    let mut tail = T::zero();
    let mut tail_err = T::infinity();
    for m in 1..=REMAINDER_MAX_TERMS {
        let mf = T::count(m);
        let d = deficit_transform(mf * lt, xi_p, &term_spec)?;
        acc.add(d);
        let level = d * mf.powi(3);
        let zeta = hurwitz_zeta(3, mf + T::one());
        tail = level * zeta;
        tail_err = (level - previous).abs() * mf * zeta;
        previous = level;
        if m >= REMAINDER_MIN_TERMS && tail_err <= tol.max(spec.rel_tol * T::lit(0.1) * acc.total().abs()) {
            let value = acc.total() + tail;
            return Ok(ConvergenceReport::new(value, tail_err, m, true));
        }
    }
    Ok(ConvergenceReport::new(
        acc.total() + tail,
        tail_err,
        REMAINDER_MAX_TERMS,
        false,
    ))
}

/// Exact remainder `Delta eta_F = eta_F - eta_F^P - (eta_F^T - 1)`, from the
/// Poisson-resummed deficit of the plasma mirrors with respect to perfect
/// ones.
pub fn remainder_delta_eta_f<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    if r.is_perfect() || r.is_cold() {
        return Ok(T::zero());
    }
    let sum = remainder_sum(r.lt, r.xi_p(), spec)?;
    Ok(T::lit(2.0) * force_prefactor::<T>() * accept(sum, "remainder sum")?)
}

/// `eta_F` through the Poisson route: the vacuum factor, the perfect-mirror
/// thermal correction and the remainder, each computed on its own.
pub fn eta_f_poisson<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    let vacuum = eta_f_p_reduced(r.xi_p(), spec)?;
    if r.is_cold() {
        return Ok(vacuum);
    }
    let thermal = eta_f_t(&r.thermal()?, spec)?;
    Ok(vacuum + (thermal - T::one()) + remainder_delta_eta_f(r, spec)?)
}

/// How much checking the energy integral does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyMode {
    #[default]
    Fast,
    /// Also integrates out to a 100 times larger distance and fails if that
    /// moves the result by more than [`TRUNCATION_AUDIT_LIMIT`].
    Validation,
}

/// The force is integrated from `L` out to `L / ENERGY_T_MIN`.
pub const ENERGY_T_MIN: f64 = 1e-4;
const AUDIT_T_MIN: f64 = 1e-6;
pub const TRUNCATION_AUDIT_LIMIT: f64 = 1e-7;

fn energy_piece<T: Real>(r: &Ratios<T>, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let inner = spec.scaled(T::lit(0.1));
    let out = try_integrate_interval::<T, _, CasimirError>(
        |t| Ok(t * t * eta_f(&r.stretched(t), &inner)?),
        lo,
        hi,
        &spec.scaled(T::lit(1.0 / 3.0)),
    )?;
    Ok(T::lit(3.0) * accept(out, "energy integral")?)
}

/// Free-energy correction factor `eta_E`, the force integrated from `L`
/// outwards: `3 int t^2 eta_F(lp t, lt t) dt` with `x = L / t`.
pub fn eta_e<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>, mode: EnergyMode) -> Result<T> {
    spec.validate()?;
    if r.is_perfect() {
        return eta_e_t(&r.thermal()?, spec);
    }
    if r.is_cold() {
        return eta_e_p_reduced(r.xi_p(), spec);
    }
    let main = energy_piece(r, T::lit(ENERGY_T_MIN), T::one(), spec)?;
    if mode == EnergyMode::Validation {
        let change = truncation_change(r, main, spec)?;
        if !(change < TRUNCATION_AUDIT_LIMIT) {
            return Err(CasimirError::TruncationAudit {
                relative_change: change,
                limit: TRUNCATION_AUDIT_LIMIT,
            });
        }
    }
    Ok(main)
}

fn truncation_change<T: Real>(r: &Ratios<T>, main: T, spec: &QuadratureSpec<T>) -> Result<f64> {
    let extra = energy_piece(r, T::lit(AUDIT_T_MIN), T::lit(ENERGY_T_MIN), spec)?;
    Ok((extra / (main + extra)).abs().as_f64())
}

/// Relative change of `eta_E` when the upper integration limit is pushed
/// 100 times further out. Zero for the closed-form limits.
pub fn energy_truncation_change<T: Real>(r: &Ratios<T>, spec: &QuadratureSpec<T>) -> Result<f64> {
    spec.validate()?;
    if r.is_perfect() || r.is_cold() {
        return Ok(0.0);
    }
    let main = energy_piece(r, T::lit(ENERGY_T_MIN), T::one(), spec)?;
    truncation_change(r, main, spec)
}

/// Force in newtons from the Matsubara sum (attractive force counted positive).
pub fn force_matsubara<T: Real>(cav: &CavityState<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    Ok(eta_f(&Ratios::of(cav), spec)? * cav.ideal_force())
}

/// Force in newtons through the Poisson route.
pub fn force_poisson<T: Real>(cav: &CavityState<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    Ok(eta_f_poisson(&Ratios::of(cav), spec)? * cav.ideal_force())
}

/// Free energy in joules (binding energy counted positive).
pub fn energy<T: Real>(cav: &CavityState<T>, spec: &QuadratureSpec<T>, mode: EnergyMode) -> Result<T> {
    Ok(eta_e(&Ratios::of(cav), spec, mode)? * cav.ideal_energy())
}

/// Every correction factor of one cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBundle<T> {
    pub eta_f: T,
    pub eta_f_p: T,
    pub eta_f_t: T,
    /// `eta_F / (eta_F^P eta_F^T) - 1`.
    pub delta_f: T,
    /// `(lambda_T / lambda_P) delta_F`.
    pub delta_f_rescaled: T,
    pub eta_e: T,
    pub eta_e_p: T,
    pub eta_e_t: T,
    pub delta_e: T,
    pub delta_e_rescaled: T,
    /// Newtons.
    pub force: T,
    /// Joules.
    pub energy: T,
}

pub fn correction_bundle<T: Real>(cav: &CavityState<T>, spec: &QuadratureSpec<T>) -> Result<CorrectionBundle<T>> {
    correction_bundle_with(cav, spec, EnergyMode::Fast)
}

pub fn correction_bundle_with<T: Real>(
    cav: &CavityState<T>,
    spec: &QuadratureSpec<T>,
    mode: EnergyMode,
) -> Result<CorrectionBundle<T>> {
    spec.validate()?;
    let r = Ratios::of(cav);
    let ta = r.thermal()?;
    let xi_p = r.xi_p();

    let eta_f_p = eta_f_p_reduced(xi_p, spec)?;
    let eta_e_p = eta_e_p_reduced(xi_p, spec)?;
    let eta_f_t = eta_f_t(&ta, spec)?;
    let eta_e_t = eta_e_t(&ta, spec)?;
    let eta_f = eta_f(&r, spec)?;
    let eta_e = eta_e(&r, spec, mode)?;

    let delta_f = eta_f / (eta_f_p * eta_f_t) - T::one();
    let delta_e = eta_e / (eta_e_p * eta_e_t) - T::one();
    // perfect mirrors: the rescaled deviation is its lp -> 0 limit
    let (delta_f_rescaled, delta_e_rescaled) = if r.is_perfect() {
        (delta_f_from_argument(&ta, spec)?, delta_e_from_argument(&ta, spec)?)
    } else if r.is_cold() {
        (T::zero(), T::zero())
    } else {
        let k = r.lt / r.lp;
        (k * delta_f, k * delta_e)
    };

    Ok(CorrectionBundle {
        eta_f,
        eta_f_p,
        eta_f_t,
        delta_f,
        delta_f_rescaled,
        eta_e,
        eta_e_p,
        eta_e_t,
        delta_e,
        delta_e_rescaled,
        force: eta_f * cav.ideal_force(),
        energy: eta_e * cav.ideal_energy(),
    })
}

/// First-order factorized estimate `eta^P eta^T (1 + (lambda_P / lambda_T) Delta)`.
pub fn factorized_estimate<T: Real>(eta_p: T, eta_t: T, lp_over_lt: T, delta: T) -> Result<T> {
    for (name, v) in [
        ("eta^P", eta_p),
        ("eta^T", eta_t),
        ("lambda_P / lambda_T", lp_over_lt),
        ("Delta", delta),
    ] {
        if !v.is_finite() {
            return Err(CasimirError::domain(name, "finite", v.as_f64()));
        }
    }
    Ok(eta_p * eta_t * (T::one() + lp_over_lt * delta))
}

/// Bundles for many cavities, computed in parallel and returned in input
/// order. A failing point does not stop the others.
pub fn sweep<T: Real>(
    cavities: &[CavityState<T>],
    spec: &QuadratureSpec<T>,
    mode: EnergyMode,
) -> Result<Vec<Result<CorrectionBundle<T>>>> {
    if cavities.is_empty() {
        return Err(CasimirError::domain("number of cavities", "at least 1", 0.0));
    }
    spec.validate()?;
    Ok(cavities
        .par_iter()
        .map(|c| correction_bundle_with(c, spec, mode))
        .collect())
}
