//! Physical constants (CODATA 2018) in SI units.
//!
//! Planck time and length are derived from `hbar`, `G` and `c` rather than
//! tabulated, so the textbook orders of magnitude (1e-44 s, 1e-35 m) come out
//! of the arithmetic.

use std::sync::LazyLock;

/// Fundamental constants used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Newtonian gravitational constant, m³/(kg·s²).
    pub g: f64,
    /// Planck time sqrt(hbar G / c^5), s.
    pub planck_time: f64,
    /// Planck length sqrt(hbar G / c^3), m.
    pub planck_length: f64,
    /// Vacuum permeability, N/A².
    pub mu0: f64,
}

/// Label recorded in run metadata.
pub const CONSTANTS_VERSION: &str = "CODATA 2018";

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

static CODATA_2018: LazyLock<PhysicalConstants> =
    LazyLock::new(|| PhysicalConstants::from_fundamental(HBAR, SPEED_OF_LIGHT, GRAVITATIONAL_CONSTANT, VACUUM_PERMEABILITY));

impl PhysicalConstants {
    pub fn from_fundamental(hbar: f64, c: f64, g: f64, mu0: f64) -> Self {
        PhysicalConstants { hbar, c, g, planck_time: (hbar * g / c.powi(5)).sqrt(), planck_length: (hbar * g / c.powi(3)).sqrt(), mu0 }
    }

    pub fn codata2018() -> &'static PhysicalConstants {
        &CODATA_2018
    }

    /// T_P^{4/3}, the combination that appears in every real-clock exponent.
    pub fn planck_time_4_3(&self) -> f64 {
        self.planck_time.powf(4.0 / 3.0)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        *Self::codata2018()
    }
}
