//! The Eckart-Hellmann potential, the Greene-Aldrich replacements for `1/r`
//! and `1/r^2`, and the reduction of the radial equation to dimensionless
//! NUFA coefficients.

use crate::error::{Error, Result};
use crate::nufa::{nu_unit, quantize_with_nu, Affine, NufaCoefficients, NufaSolution};
use crate::units::PhysicalContext;

/// Strengths and screening parameter of
/// `V(r) = -A x/(1-x) + B x/(1-x)^2 - C/r + D x/r`, `x = e^{-alpha r}`.
///
/// `a`, `b` are energies, `c`, `d` energy times length, `alpha` inverse length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub alpha: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, alpha: f64) -> Result<Self> {
        let p = Self { a, b, c, d, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn hellmann(c: f64, d: f64, alpha: f64) -> Result<Self> {
        Self::new(0.0, 0.0, c, d, alpha)
    }

    pub fn eckart(a: f64, b: f64, alpha: f64) -> Result<Self> {
        Self::new(a, b, 0.0, 0.0, alpha)
    }

    pub fn yukawa(d: f64, alpha: f64) -> Result<Self> {
        Self::new(0.0, 0.0, 0.0, d, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::domain(format!(
                "screening parameter must be positive, got {}",
                self.alpha
            )));
        }
        if ![self.a, self.b, self.c, self.d]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::domain("potential strengths must be finite"));
        }
        Ok(())
    }

    /// Named strength (`A`, `B`, `C`, `D` or `alpha`).
    pub fn get(&self, name: &str) -> Result<f64> {
        match name {
            "A" | "a" => Ok(self.a),
            "B" | "b" => Ok(self.b),
            "C" | "c" => Ok(self.c),
            "D" | "d" => Ok(self.d),
            "alpha" => Ok(self.alpha),
            other => Err(Error::domain(format!("unknown parameter {other:?}"))),
        }
    }

    /// Returns a copy with one named strength (`A`, `B`, `C`, `D` or `alpha`) replaced.
    pub fn with(&self, name: &str, value: f64) -> Result<Self> {
        let mut p = *self;
        match name {
            "A" | "a" => p.a = value,
            "B" | "b" => p.b = value,
            "C" | "c" => p.c = value,
            "D" | "d" => p.d = value,
            "alpha" => p.alpha = value,
            other => return Err(Error::domain(format!("unknown parameter {other:?}"))),
        }
        p.validate()?;
        Ok(p)
    }
}

/// `1 - e^{-alpha r}` without cancellation at small `alpha r`.
#[inline]
pub(crate) fn one_minus_x(alpha: f64, r: f64) -> f64 {
    -(-alpha * r).exp_m1()
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

/// Exact potential at radius `r`.
pub fn potential_value(params: &PotentialParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let x = (-params.alpha * r).exp();
    let omx = one_minus_x(params.alpha, r);
    let ratio = x / omx;
    Ok(-params.a * ratio + params.b * ratio / omx - params.c / r + params.d * x / r)
}

/// Greene-Aldrich form of `1/r^2`: `alpha^2 / (1 - e^{-alpha r})^2`.
pub fn ga_inverse_r2(r: f64, alpha: f64) -> Result<f64> {
    let inv = ga_inverse_r(r, alpha)?;
    Ok(inv * inv)
}

/// Greene-Aldrich form of `1/r`: `alpha / (1 - e^{-alpha r})`.
pub fn ga_inverse_r(r: f64, alpha: f64) -> Result<f64> {
    check_r(r)?;
    if !(alpha > 0.0) {
        return Err(Error::domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(alpha / one_minus_x(alpha, r))
}

/// Dimensionless strengths of the radial equation in the variable
/// `x = e^{-alpha r}`. `epsilon = -2 mu E / (alpha^2 hbar^2)` is the unknown
/// and stays `None` until a level is quantised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub gamma: f64,
    pub epsilon: Option<f64>,
}

impl DimensionlessParams {
    /// The epsilon-free combination `xi1 + xi3 - xi2` that fixes nu.
    pub fn barrier(&self) -> f64 {
        self.gamma + self.beta1
    }
}

/// `l (l + 1)` as a float.
pub fn centrifugal_gamma(l: u32) -> f64 {
    let l = l as f64;
    l * (l + 1.0)
}

pub fn dimensionless(
    params: &PotentialParams,
    ctx: &PhysicalContext,
    l: u32,
) -> DimensionlessParams {
    let k = ctx.hbar2_over_2mu();
    let alpha = params.alpha;
    DimensionlessParams {
        beta0: params.a / (k * alpha * alpha),
        beta1: params.b / (k * alpha * alpha),
        beta2: params.c / (k * alpha),
        beta3: params.d / (k * alpha),
        gamma: centrifugal_gamma(l),
        epsilon: None,
    }
}

/// Identifies the NUFA coefficients of
/// `U'' + U'/x + [-xi1 x^2 + xi2 x - xi3] U / (x^2 (1-x)^2) = 0`.
///
/// The signs follow from `E - V` with `V` as defined above:
/// `xi1 = eps + b0 - b3`, `xi2 = 2 eps + b0 - b1 - b2 - b3`, `xi3 = eps - b2 + gamma`.
pub fn to_nufa(d: &DimensionlessParams) -> NufaCoefficients {
    NufaCoefficients {
        alpha1: 1.0,
        alpha2: 1.0,
        alpha3: 1.0,
        xi1: Affine::new(d.beta0 - d.beta3, 1.0),
        xi2: Affine::new(d.beta0 - d.beta1 - d.beta2 - d.beta3, 2.0),
        xi3: Affine::new(-d.beta2 + d.gamma, 1.0),
    }
}

/// Quantised level `n`, with `nu` taken from the strengths rather than
/// reassembled from the `xi`.
pub fn solve_level(d: &DimensionlessParams, n: u32) -> Result<NufaSolution> {
    quantize_with_nu(&to_nufa(d), nu_unit(d.barrier())?, n)
}
