//! Bound states, spectra and thermodynamics of the hyperbolic Pöschl–Teller potential
//! `V(r) = A/cosh²(αr) + B/sinh²(αr)`, solved with the asymptotic iteration method.
//!
//! Numerical routines are generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the common `f64` instantiations.

pub mod aim;
pub mod app;
pub mod dirac;
pub mod error;
pub mod jet;
pub mod molecules;
pub mod oracle;
pub mod scalar;
pub mod schrodinger;
pub mod specfun;
pub mod thermo;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Jet = jet::SeriesJet<f64>;
pub type Potential = schrodinger::PtPotential<f64>;
pub type NrContext = schrodinger::NrContext<f64>;
pub type ThermoContext = thermo::ThermoContext<f64>;
pub type ThermoPoint = thermo::ThermoPoint<f64>;
pub type DiracContext = dirac::DiracContext<f64>;
pub type SpectralParams = schrodinger::SpectralParams<f64>;
pub type EnergyLevel = schrodinger::EnergyLevel<f64>;
pub type RelativisticRoot = dirac::RelativisticRoot<f64>;
pub type AimScanReport = aim::AimScanReport<f64>;
