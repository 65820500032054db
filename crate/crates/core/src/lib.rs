//! Analytic bound states of the Eckart-Hellmann potential
//!
//! ```text
//! V(r) = -A e^{-ar}/(1-e^{-ar}) + B e^{-ar}/(1-e^{-ar})^2 - C/r + D e^{-ar}/r
//! ```
//!
//! and its Hellmann, Eckart, Coulomb and Yukawa reductions. The radial
//! equation is brought into hypergeometric form with the Greene-Aldrich
//! replacement of `1/r` and `1/r^2`, solved in closed form by the parametric
//! Nikiforov-Uvarov functional-analysis recipe, and checked against a
//! finite-difference diagonalisation of the same Hamiltonian.

// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod molecules;
pub mod nufa;
pub mod oracle;
pub mod potential;
pub mod reference;
pub mod report;
pub mod spectra;
pub mod tridiag;
pub mod units;
pub mod wavefunction;

pub use error::{Error, Result};
pub use molecules::MoleculeSpec;
pub use nufa::{NufaCoefficients, NufaSolution};
pub use oracle::{GridSpec, OracleMode, OracleResult};
pub use potential::{DimensionlessParams, PotentialParams};
pub use spectra::{EnergyLevel, QuantumNumbers, Variant};
pub use units::{PhysicalContext, UnitMode};
pub use wavefunction::RadialWavefunction;
