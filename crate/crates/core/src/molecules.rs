//! Diatomic molecule catalog.
//!
//! Catalog files are plain UTF-8 text, one molecule per line:
//!
//! ```text
//! # name  mu_amu    alpha_per_angstrom
//! CuLi    6.259494  1.00818
//! ```
//!
//! Potential strengths are deliberately not part of a molecule entry.

use crate::error::{Error, Result};
use crate::units::{amu_to_ev, PhysicalContext};

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeSpec {
    pub name: String,
    /// Reduced mass in amu.
    pub mu_amu: f64,
    /// Screening parameter in 1/Angstrom.
    pub alpha: f64,
}

impl MoleculeSpec {
    pub fn new(name: impl Into<String>, mu_amu: f64, alpha: f64) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            mu_amu,
            alpha,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |message: String| Error::Validation {
            name: self.name.clone(),
            message,
        };
        if self.name.is_empty() || self.name.chars().any(char::is_whitespace) {
            return Err(fail("name must be a single non-empty token".into()));
        }
        if !(self.mu_amu > 0.0 && self.mu_amu.is_finite()) {
            return Err(fail(format!(
                "reduced mass must be positive, got {}",
                self.mu_amu
            )));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(fail(format!("alpha must be positive, got {}", self.alpha)));
        }
        Ok(())
    }
}

pub fn builtin_catalog() -> Vec<MoleculeSpec> {
    [
        ("VH", 0.988005, 1.44370),
        ("TiH", 0.987371, 1.32408),
        ("TiC", 9.606079, 1.52550),
        ("CuLi", 6.259494, 1.00818),
    ]
    .into_iter()
    .map(|(name, mu, alpha)| MoleculeSpec {
        name: name.to_string(),
        mu_amu: mu,
        alpha,
    })
    .collect()
}

pub fn find<'a>(catalog: &'a [MoleculeSpec], name: &str) -> Option<&'a MoleculeSpec> {
    catalog.iter().find(|m| m.name.eq_ignore_ascii_case(name))
}

/// eV / Angstrom context for the molecule's reduced mass.
pub fn context_for(m: &MoleculeSpec) -> Result<PhysicalContext> {
    PhysicalContext::physical(amu_to_ev(m.mu_amu)?)
}

pub fn load_catalog(source: &str) -> Result<Vec<MoleculeSpec>> {
    let mut out = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected `name mu_amu alpha`, got {} fields", fields.len()),
            });
        }
        let number = |s: &str, what: &str| {
            s.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("{what} {s:?} is not a number"),
            })
        };
        let spec = MoleculeSpec {
            name: fields[0].to_string(),
            mu_amu: number(fields[1], "mu_amu")?,
            alpha: number(fields[2], "alpha")?,
        };
        spec.validate()?;
        out.push(spec);
    }
    Ok(out)
}

pub fn save_catalog(catalog: &[MoleculeSpec]) -> String {
    let mut s = String::from("# name mu_amu alpha_per_angstrom\n");
    for m in catalog {
        s.push_str(&format!("{} {} {}\n", m.name, m.mu_amu, m.alpha));
    }
    s
}
