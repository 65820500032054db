//! Closed-form energy levels.
//!
//! `ehp_energy` has two variants. [`Variant::Rederived`] is the level that
//! follows from the hypergeometric termination condition and agrees with
//! the finite-difference oracle. [`Variant::AsPrinted`] transcribes the
//! published closed form term by term, including its standalone `-A` and
//! `+beta1` numerator terms; it is kept so the published tables can be
//! regenerated and compared. The two coincide when `A = B = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::potential::{centrifugal_gamma, dimensionless, solve_level, PotentialParams};
use crate::units::PhysicalContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    /// Radial quantum number (number of interior nodes).
    pub n: u32,
    pub l: u32,
}

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

impl QuantumNumbers {
    pub const fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }

    /// Principal quantum number `n + l + 1`.
    pub fn principal(&self) -> u32 {
        self.n + self.l + 1
    }

    /// Spectroscopic label such as `1s`, `2p`, `3d`.
    pub fn label(&self) -> String {
        let letter = ORBITAL_LETTERS
            .get(self.l as usize)
            .map(|&c| c as char)
            .unwrap_or('?');
        format!("{}{}", self.principal(), letter)
    }

    /// Parses `1S`, `2p`, `4f`, ... (letter case ignored).
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let split = label
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::domain(format!("bad state label {label:?}")))?;
        let (digits, letter) = label.split_at(split);
        let principal: u32 = digits
            .parse()
            .map_err(|_| Error::domain(format!("bad state label {label:?}")))?;
        let mut chars = letter.chars();
        let ch = chars.next().map(|c| c.to_ascii_lowercase() as u8);
        if chars.next().is_some() {
            return Err(Error::domain(format!("bad state label {label:?}")));
        }
        let l = ch
            .and_then(|c| ORBITAL_LETTERS.iter().position(|&x| x == c))
            .ok_or_else(|| Error::domain(format!("bad orbital letter in {label:?}")))?
            as u32;
        if principal < l + 1 {
            return Err(Error::domain(format!("{label:?} needs N > l")));
        }
        Ok(Self::new(principal - l - 1, l))
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Variant {
    AsPrinted,
    #[default]
    Rederived,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::AsPrinted => "as-printed",
            Variant::Rederived => "rederived",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "as-printed" | "as_printed" | "asprinted" | "printed" => Ok(Variant::AsPrinted),
            "rederived" => Ok(Variant::Rederived),
            other => Err(Error::domain(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub variant: Variant,
    /// Decay exponent `lambda = sqrt(xi3)` in units of `alpha`.
    pub s: f64,
    pub bound: bool,
}

/// Large-`r` limit of the Greene-Aldrich effective potential,
/// `-C alpha + hbar^2 alpha^2 l(l+1) / (2 mu)`. Bound levels lie below it.
pub fn ga_threshold(params: &PotentialParams, l: u32, ctx: &PhysicalContext) -> f64 {
    let alpha = params.alpha;
    -params.c * alpha + ctx.hbar2_over_2mu() * alpha * alpha * centrifugal_gamma(l)
}

/// `n + 1/2 + sqrt(1/4 + beta1 + gamma)`.
fn delta(n: u32, beta1: f64, gamma: f64) -> Result<f64> {
    let radicand = 0.25 + beta1 + gamma;
    if radicand < 0.0 {
        return Err(Error::SupercriticalBarrier {
            radicand: 4.0 * radicand,
        });
    }
    Ok(n as f64 + 0.5 + radicand.sqrt())
}

pub fn ehp_energy(
    params: &PotentialParams,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
    variant: Variant,
) -> Result<EnergyLevel> {
    params.validate()?;
    let d = dimensionless(params, ctx, qn.l);
    let scale = ctx.hbar2_over_2mu() * params.alpha * params.alpha;
    match variant {
        Variant::Rederived => {
            let sol = solve_level(&d, qn.n)?;
            Ok(EnergyLevel {
                qn,
                energy: -scale * sol.epsilon,
                variant,
                s: sol.lambda,
                bound: true,
            })
        }
        Variant::AsPrinted => {
            let dl = delta(qn.n, d.beta1, d.gamma)?;
            let num = dl * dl - d.beta0 + d.beta1 - d.beta2 + d.beta3 + d.gamma;
            let ratio = num / dl;
            let energy =
                scale * d.gamma - params.a - params.c * params.alpha - 0.25 * scale * ratio * ratio;
            let s = 0.5 * ratio.abs();
            Ok(EnergyLevel {
                qn,
                energy,
                variant,
                s,
                bound: s > 0.0 && energy < ga_threshold(params, qn.l, ctx),
            })
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(())
}

/// Hellmann reduction `V = -C/r + D e^{-alpha r}/r`.
pub fn hellmann_energy(
    c: f64,
    d: f64,
    alpha: f64,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
) -> Result<EnergyLevel> {
    check_alpha(alpha)?;
    let k = ctx.hbar2_over_2mu();
    let gamma = centrifugal_gamma(qn.l);
    let (beta2, beta3) = (c / (k * alpha), d / (k * alpha));
    let dl = delta(qn.n, 0.0, gamma)?;
    let s = (beta2 - beta3 - gamma - dl * dl) / (2.0 * dl);
    if !(s > 0.0) {
        return Err(Error::NoBoundState { n: qn.n });
    }
    let ratio = (dl * dl - beta2 + beta3 + gamma) / dl;
    let scale = k * alpha * alpha;
    Ok(EnergyLevel {
        qn,
        energy: scale * gamma - c * alpha - 0.25 * scale * ratio * ratio,
        variant: Variant::Rederived,
        s,
        bound: true,
    })
}

/// Eckart reduction `V = -A x/(1-x) + B x/(1-x)^2`.
pub fn eckart_energy(
    a: f64,
    b: f64,
    alpha: f64,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
    variant: Variant,
) -> Result<EnergyLevel> {
    check_alpha(alpha)?;
    let k = ctx.hbar2_over_2mu();
    let scale = k * alpha * alpha;
    let gamma = centrifugal_gamma(qn.l);
    let (beta0, beta1) = (a / scale, b / scale);
    let dl = delta(qn.n, beta1, gamma)?;
    match variant {
        Variant::Rederived => {
            let s = (beta0 - gamma - dl * dl) / (2.0 * dl);
            if !(s > 0.0) {
                return Err(Error::NoBoundState { n: qn.n });
            }
            Ok(EnergyLevel {
                qn,
                energy: scale * gamma - scale * s * s,
                variant,
                s,
                bound: true,
            })
        }
        Variant::AsPrinted => {
            let ratio = (dl * dl - beta0 + beta1 + gamma) / dl;
            let energy = scale * gamma - a - 0.25 * scale * ratio * ratio;
            let s = 0.5 * ratio.abs();
            Ok(EnergyLevel {
                qn,
                energy,
                variant,
                s,
                bound: s > 0.0 && energy < scale * gamma,
            })
        }
    }
}

/// Hydrogen-like levels `-mu C^2 / (2 hbar^2 (n + l + 1)^2)`.
pub fn coulomb_energy(c: f64, qn: QuantumNumbers, ctx: &PhysicalContext) -> Result<EnergyLevel> {
    if !(c > 0.0) {
        return Err(Error::NoBoundState { n: qn.n });
    }
    let big_n = qn.principal() as f64;
    let k = ctx.hbar2_over_2mu();
    Ok(EnergyLevel {
        qn,
        energy: -c * c / (4.0 * k * big_n * big_n),
        variant: Variant::Rederived,
        s: f64::INFINITY,
        bound: true,
    })
}

/// Yukawa reduction `V = D e^{-alpha r}/r` (attractive for `D < 0`).
pub fn yukawa_energy(
    d: f64,
    alpha: f64,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
) -> Result<EnergyLevel> {
    check_alpha(alpha)?;
    let k = ctx.hbar2_over_2mu();
    let gamma = centrifugal_gamma(qn.l);
    let beta3 = d / (k * alpha);
    let dl = delta(qn.n, 0.0, gamma)?;
    let s = (-beta3 - gamma - dl * dl) / (2.0 * dl);
    if !(s > 0.0) {
        return Err(Error::NoBoundState { n: qn.n });
    }
    let ratio = (dl * dl + beta3 + gamma) / dl;
    let scale = k * alpha * alpha;
    Ok(EnergyLevel {
        qn,
        energy: scale * gamma - 0.25 * scale * ratio * ratio,
        variant: Variant::Rederived,
        s,
        bound: true,
    })
}

/// Levels `n = 0, 1, ...` at fixed `l`, stopping at the first unbound `n`
/// or after `n_max_cap`.
pub fn enumerate_bound_states(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    variant: Variant,
    n_max_cap: u32,
) -> Vec<EnergyLevel> {
    let mut levels: Vec<EnergyLevel> = Vec::new();
    for n in 0..=n_max_cap {
        match ehp_energy(params, QuantumNumbers::new(n, l), ctx, variant) {
            Ok(level) if level.bound => {
                if levels
                    .last()
                    .is_some_and(|prev| prev.energy >= level.energy)
                {
                    break;
                }
                levels.push(level);
            }
            _ => break,
        }
    }
    levels
}

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Ehp,
    Hellmann,
    Eckart,
    Coulomb,
    Yukawa,
}

impl Model {
    /// Strength flags each model reads.
    pub fn required(&self) -> &'static [&'static str] {
        match self {
            Model::Ehp => &["A", "B", "C", "D", "alpha"],
            Model::Hellmann => &["C", "D", "alpha"],
            Model::Eckart => &["A", "B", "alpha"],
            Model::Coulomb => &["C"],
            Model::Yukawa => &["D", "alpha"],
        }
    }

    pub fn energy(
        &self,
        params: &PotentialParams,
        qn: QuantumNumbers,
        ctx: &PhysicalContext,
        variant: Variant,
    ) -> Result<EnergyLevel> {
        match self {
            Model::Ehp => ehp_energy(params, qn, ctx, variant),
            Model::Hellmann => hellmann_energy(params.c, params.d, params.alpha, qn, ctx),
            Model::Eckart => eckart_energy(params.a, params.b, params.alpha, qn, ctx, variant),
            Model::Coulomb => coulomb_energy(params.c, qn, ctx),
            Model::Yukawa => yukawa_energy(params.d, params.alpha, qn, ctx),
        }
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ehp" | "eckart-hellmann" => Ok(Model::Ehp),
            "hellmann" => Ok(Model::Hellmann),
            "eckart" => Ok(Model::Eckart),
            "coulomb" => Ok(Model::Coulomb),
            "yukawa" => Ok(Model::Yukawa),
            other => Err(Error::domain(format!("unknown model {other:?}"))),
        }
    }
}
