//! Physical constants, characteristic lengths and the cavity description.
//!
//! Public constructors take SI values. Everything downstream works with the
//! two dimensionless ratios `lp = lambda_P / L` and `lt = lambda_T / L`
//! exposed by [`CavityState`].

use crate::error::{CasimirError, Result};
use crate::num::Real;

/// CODATA 2018 values (exact for `c` and `k_B` by SI definition).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T> {
    /// Reduced Planck constant, J s.
    pub hbar: T,
    /// Speed of light, m/s.
    pub c: T,
    /// Boltzmann constant, J/K.
    pub k_b: T,
}

pub const CONSTANTS_VERSION: &str = "CODATA 2018";

impl<T: Real> PhysicalConstants<T> {
    pub fn codata2018() -> Self {
        PhysicalConstants {
            hbar: T::lit(1.054_571_817e-34),
            c: T::lit(299_792_458.0),
            k_b: T::lit(1.380_649e-23),
        }
    }
}

impl<T: Real> Default for PhysicalConstants<T> {
    fn default() -> Self {
        Self::codata2018()
    }
}

fn require_positive<T: Real>(x: T, quantity: &'static str) -> Result<T> {
    if x > T::zero() && x.is_finite() {
        Ok(x)
    } else {
        Err(CasimirError::domain(quantity, "positive and finite", x.as_f64()))
    }
}

/// `lambda_T = hbar c / (k_B T)`.
pub fn thermal_wavelength<T: Real>(temperature: T) -> Result<T> {
    thermal_wavelength_with(&PhysicalConstants::codata2018(), temperature)
}

pub fn thermal_wavelength_with<T: Real>(k: &PhysicalConstants<T>, temperature: T) -> Result<T> {
    let t = require_positive(temperature, "temperature")?;
    Ok(k.hbar * k.c / (k.k_b * t))
}

/// Force between perfect mirrors at zero temperature, `hbar c A pi^2 / (240 L^4)`.
pub fn ideal_force<T: Real>(gap: T, area: T) -> Result<T> {
    ideal_force_with(&PhysicalConstants::codata2018(), gap, area)
}

pub fn ideal_force_with<T: Real>(k: &PhysicalConstants<T>, gap: T, area: T) -> Result<T> {
    let l = require_positive(gap, "gap")?;
    let a = require_positive(area, "area")?;
    let pi2 = T::PI() * T::PI();
    Ok(k.hbar * k.c * a * pi2 / (T::lit(240.0) * (l * l) * (l * l)))
}

/// Energy between perfect mirrors at zero temperature, `hbar c A pi^2 / (720 L^3)`.
pub fn ideal_energy<T: Real>(gap: T, area: T) -> Result<T> {
    ideal_energy_with(&PhysicalConstants::codata2018(), gap, area)
}

pub fn ideal_energy_with<T: Real>(k: &PhysicalConstants<T>, gap: T, area: T) -> Result<T> {
    let l = require_positive(gap, "gap")?;
    let a = require_positive(area, "area")?;
    let pi2 = T::PI() * T::PI();
    Ok(k.hbar * k.c * a * pi2 / (T::lit(720.0) * (l * l * l)))
}

/// Thermal bath. Zero temperature is allowed as an exact limit, in which
/// case the thermal wavelength is infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnvironment<T> {
    temperature: T,
    lambda_t: T,
    omega_t: T,
}

impl<T: Real> ThermalEnvironment<T> {
    pub fn new(temperature: T) -> Result<Self> {
        Self::with_constants(&PhysicalConstants::codata2018(), temperature)
    }

    pub fn with_constants(k: &PhysicalConstants<T>, temperature: T) -> Result<Self> {
        let lambda_t = thermal_wavelength_with(k, temperature)?;
        Ok(ThermalEnvironment {
            temperature,
            lambda_t,
            omega_t: T::TAU() * k.c / lambda_t,
        })
    }

    pub fn zero_temperature() -> Self {
        ThermalEnvironment {
            temperature: T::zero(),
            lambda_t: T::infinity(),
            omega_t: T::zero(),
        }
    }

    /// Builds the environment from its thermal wavelength.
    pub fn from_wavelength(lambda_t: T) -> Result<Self> {
        let k = PhysicalConstants::codata2018();
        let lambda_t = require_positive(lambda_t, "thermal wavelength")?;
        Ok(ThermalEnvironment {
            temperature: k.hbar * k.c / (k.k_b * lambda_t),
            lambda_t,
            omega_t: T::TAU() * k.c / lambda_t,
        })
    }

    pub fn temperature(&self) -> T {
        self.temperature
    }

    pub fn lambda_t(&self) -> T {
        self.lambda_t
    }

    pub fn omega_t(&self) -> T {
        self.omega_t
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.temperature == T::zero()
    }
}

/// A thick metallic mirror described by its plasma wavelength. A zero
/// plasma wavelength is the perfect-reflector limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaMirror<T> {
    lambda_p: T,
    omega_p: T,
}

impl<T: Real> PlasmaMirror<T> {
    pub fn new(lambda_p: T) -> Result<Self> {
        let k = PhysicalConstants::<T>::codata2018();
        let lambda_p = require_positive(lambda_p, "plasma wavelength")?;
        Ok(PlasmaMirror {
            lambda_p,
            omega_p: T::TAU() * k.c / lambda_p,
        })
    }

    pub fn perfect() -> Self {
        PlasmaMirror {
            lambda_p: T::zero(),
            omega_p: T::infinity(),
        }
    }

    /// Builds the mirror from its plasma frequency in rad/s.
    pub fn from_plasma_frequency(omega_p: T) -> Result<Self> {
        let k = PhysicalConstants::<T>::codata2018();
        let omega_p = require_positive(omega_p, "plasma frequency")?;
        Ok(PlasmaMirror {
            lambda_p: T::TAU() * k.c / omega_p,
            omega_p,
        })
    }

    pub fn lambda_p(&self) -> T {
        self.lambda_p
    }

    pub fn omega_p(&self) -> T {
        self.omega_p
    }

    pub fn is_perfect(&self) -> bool {
        self.lambda_p == T::zero()
    }
}

/// Named plasma wavelengths of the metals used in the reference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metal {
    Aluminium,
    Copper,
    Gold,
}

impl Metal {
    /// Plasma wavelength in metres: 107 nm for Al, 136 nm for Cu and Au.
    pub fn plasma_wavelength(self) -> f64 {
        match self {
            Metal::Aluminium => 107e-9,
            Metal::Copper | Metal::Gold => 136e-9,
        }
    }

    pub fn mirror<T: Real>(self) -> PlasmaMirror<T> {
        PlasmaMirror::new(T::lit(self.plasma_wavelength())).expect("preset wavelengths are positive")
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Metal::Aluminium => "Al",
            Metal::Copper => "Cu",
            Metal::Gold => "Au",
        }
    }
}

impl std::str::FromStr for Metal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "al" | "aluminium" | "aluminum" => Ok(Metal::Aluminium),
            "cu" | "copper" => Ok(Metal::Copper),
            "au" | "gold" => Ok(Metal::Gold),
            other => Err(format!("unknown metal preset `{other}` (known: Al, Cu, Au)")),
        }
    }
}

/// Two identical plane mirrors at distance `gap` in a thermal bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityState<T> {
    gap: T,
    area: T,
    mirror: PlasmaMirror<T>,
    env: ThermalEnvironment<T>,
}

impl<T: Real> CavityState<T> {
    pub fn new(gap: T, area: T, mirror: PlasmaMirror<T>, env: ThermalEnvironment<T>) -> Result<Self> {
        Ok(CavityState {
            gap: require_positive(gap, "gap")?,
            area: require_positive(area, "area")?,
            mirror,
            env,
        })
    }

    /// Unit-area cavity; the correction factors never depend on the area.
    pub fn unit_area(gap: T, mirror: PlasmaMirror<T>, env: ThermalEnvironment<T>) -> Result<Self> {
        Self::new(gap, T::one(), mirror, env)
    }

    pub fn gap(&self) -> T {
        self.gap
    }

    pub fn area(&self) -> T {
        self.area
    }

    pub fn mirror(&self) -> &PlasmaMirror<T> {
        &self.mirror
    }

    pub fn env(&self) -> &ThermalEnvironment<T> {
        &self.env
    }

    /// `lambda_P / L`; zero for perfect mirrors.
    pub fn lp(&self) -> T {
        self.mirror.lambda_p / self.gap
    }

    /// `lambda_T / L`; infinite at zero temperature.
    pub fn lt(&self) -> T {
        self.env.lambda_t / self.gap
    }

    /// Same mirrors and bath at another distance.
    pub fn with_gap(&self, gap: T) -> Result<Self> {
        Self::new(gap, self.area, self.mirror, self.env)
    }

    pub fn ideal_force(&self) -> T {
        ideal_force(self.gap, self.area).expect("cavity invariants guarantee positive gap and area")
    }

    pub fn ideal_energy(&self) -> T {
        ideal_energy(self.gap, self.area).expect("cavity invariants guarantee positive gap and area")
    }
}
