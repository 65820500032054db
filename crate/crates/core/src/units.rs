//! Unit conventions.
//!
//! Two systems are supported. In natural mode `hbar` and `mu` are plain
//! numbers (the tables use `hbar = mu = 1` and `hbar = 2 mu = 1`). In
//! physical mode energies are eV and lengths are Angstrom; the reduced mass
//! is carried as its rest energy `mu c^2` and combined with `hbar c` so no
//! bare `hbar` or `c` ever appears.

use crate::error::{Error, Result};

/// `hbar c` in eV Angstrom.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.29;

/// Rest energy of one atomic mass unit, in MeV.
pub const AMU_MEV: f64 = 931.494028;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Natural,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalContext {
    mode: UnitMode,
    hbar: f64,
    mu: f64,
    hbar_c: f64,
}

impl PhysicalContext {
    /// Dimensionless units with the given `hbar` and reduced mass.
    pub fn natural(hbar: f64, mu: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!("mu must be positive, got {mu}")));
        }
        Ok(Self {
            mode: UnitMode::Natural,
            hbar,
            mu,
            hbar_c: 1.0,
        })
    }

    /// eV / Angstrom units for a reduced mass given as `mu c^2` in eV.
    pub fn physical(mu_c2_ev: f64) -> Result<Self> {
        Self::physical_with_hbar_c(mu_c2_ev, HBAR_C_EV_ANGSTROM)
    }

    pub fn physical_with_hbar_c(mu_c2_ev: f64, hbar_c: f64) -> Result<Self> {
        if !(mu_c2_ev > 0.0 && mu_c2_ev.is_finite()) {
            return Err(Error::domain(format!(
                "mu c^2 must be positive, got {mu_c2_ev}"
            )));
        }
        if !(hbar_c > 0.0 && hbar_c.is_finite()) {
            return Err(Error::domain(format!(
                "hbar c must be positive, got {hbar_c}"
            )));
        }
        Ok(Self {
            mode: UnitMode::Physical,
            hbar: 1.0,
            mu: mu_c2_ev,
            hbar_c,
        })
    }

    /// `hbar = mu = 1`.
    pub fn atomic() -> Self {
        Self::natural(1.0, 1.0).expect("unit constants are valid")
    }

    /// `hbar = 2 mu = 1`.
    pub fn rydberg() -> Self {
        Self::natural(1.0, 0.5).expect("unit constants are valid")
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    /// `hbar` in natural mode; 1 in physical mode where it is folded into `hbar c`.
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Reduced mass in natural mode, `mu c^2` in eV in physical mode.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }

    /// `hbar^2 / (2 mu)`, i.e. `(hbar c)^2 / (2 mu c^2)` in eV Angstrom^2 in
    /// physical mode. Every energy formula in the crate goes through this.
    pub fn hbar2_over_2mu(&self) -> f64 {
        match self.mode {
            UnitMode::Natural => self.hbar * self.hbar / (2.0 * self.mu),
            UnitMode::Physical => self.hbar_c * self.hbar_c / (2.0 * self.mu),
        }
    }
}

impl Default for PhysicalContext {
    fn default() -> Self {
        Self::atomic()
    }
}

/// Rest energy in eV of a mass given in amu.
pub fn amu_to_ev(mass_amu: f64) -> Result<f64> {
    if !(mass_amu > 0.0 && mass_amu.is_finite()) {
        return Err(Error::domain(format!(
            "mass must be positive, got {mass_amu}"
        )));
    }
    Ok(mass_amu * AMU_MEV * 1.0e6)
}

/// `hbar^2 alpha^2 / (2 mu)`: the energy unit of the dimensionless problem.
pub fn kinetic_scale(ctx: &PhysicalContext, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(ctx.hbar2_over_2mu() * alpha * alpha)
}
