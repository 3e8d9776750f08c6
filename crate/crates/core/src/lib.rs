//! Casimir force and free energy between two plane plasma-model mirrors at
//! finite temperature.
//!
//! Results are expressed as correction factors relative to the ideal
//! perfect-mirror, zero-temperature values. The conductivity factor
//! `eta^P`, the thermal factor `eta^T` and the full factor `eta` are all
//! available, together with the deviation of `eta` from the product
//! `eta^P eta^T`.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.
//!
//! ```
//! use casimir_core::{correction_bundle, Cavity, Metal, QuadratureSpec, ThermalEnvironment};
//!
//! let env = ThermalEnvironment::new(300.0).unwrap();
//! let cav = Cavity::unit_area(3e-6, Metal::Aluminium.mirror(), env).unwrap();
//! let b = correction_bundle(&cav, &QuadratureSpec::default()).unwrap();
//! assert!((b.eta_f - 1.090).abs() < 2e-3);
//! ```

// `!(x > 0)` is the NaN-rejecting form of the domain checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod combined;
pub mod error;
pub mod num;
pub mod optics;
pub mod quadrature;
pub mod special;
pub mod thermal;
pub mod units;
pub mod vacuum;
pub mod validation;

pub use combined::{
    correction_bundle, correction_bundle_with, energy, energy_truncation_change, eta_e, eta_f, eta_f_matsubara,
    eta_f_poisson, factorized_estimate, force_matsubara, force_poisson, remainder_delta_eta_f, sweep, CorrectionBundle,
    EnergyMode, Ratios,
};
pub use error::{CasimirError, QuadratureError, Result};
pub use num::Real;
pub use quadrature::{ConvergenceReport, QuadratureSpec};
pub use thermal::ThermalArgument;
pub use units::{CavityState, Metal, PlasmaMirror, ThermalEnvironment, CONSTANTS_VERSION};

pub type Cavity = CavityState<f64>;
pub type Mirror = PlasmaMirror<f64>;
pub type Environment = ThermalEnvironment<f64>;
pub type Bundle = CorrectionBundle<f64>;
pub type Spec = QuadratureSpec<f64>;
