//! Parametric Nikiforov-Uvarov functional-analysis solver.
//!
//! The target equation is
//!
//! ```text
//! psi'' + (a1 - a2 x)/(x (1 - a3 x)) psi' + [-xi1 x^2 + xi2 x - xi3]/(x^2 (1 - a3 x)^2) psi = 0
//! ```
//!
//! with `psi = x^lambda (1 - x)^nu f(x)` and `f` a Gauss hypergeometric
//! function. The `xi` are affine in the unknown `epsilon`, which turns the
//! termination condition `b = -n` into one linear equation.

use crate::error::{Error, Result};

/// `constant + slope * epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub constant: f64,
    pub slope: f64,
}

impl Affine {
    pub const fn new(constant: f64, slope: f64) -> Self {
        Self { constant, slope }
    }

    #[inline]
    pub fn eval(&self, epsilon: f64) -> f64 {
        self.constant + self.slope * epsilon
    }
}

impl std::ops::Add for Affine {
    type Output = Affine;
    fn add(self, o: Affine) -> Affine {
        Affine::new(self.constant + o.constant, self.slope + o.slope)
    }
}

impl std::ops::Sub for Affine {
    type Output = Affine;
    fn sub(self, o: Affine) -> Affine {
        Affine::new(self.constant - o.constant, self.slope - o.slope)
    }
}

impl std::ops::Mul<f64> for Affine {
    type Output = Affine;
    fn mul(self, k: f64) -> Affine {
        Affine::new(self.constant * k, self.slope * k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NufaCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub xi1: Affine,
    pub xi2: Affine,
    pub xi3: Affine,
}

impl NufaCoefficients {
    fn unit_alphas(&self) -> bool {
        self.alpha1 == 1.0 && self.alpha2 == 1.0 && self.alpha3 == 1.0
    }

    /// `xi1/a3 + a3 xi3 - xi2`, the combination entering nu.
    pub fn nu_combination(&self) -> Affine {
        self.xi1 * (1.0 / self.alpha3) + self.xi3 * self.alpha3 - self.xi2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NufaSolution {
    pub n: u32,
    pub lambda: f64,
    pub nu: f64,
    pub epsilon: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Root of `lambda (lambda - 1) + a1 lambda - xi3 = 0` with `lambda >= (1 - a1)/2`.
pub fn lambda_of(coeffs: &NufaCoefficients, epsilon: f64) -> Result<f64> {
    let shift = 1.0 - coeffs.alpha1;
    let discriminant = shift * shift + 4.0 * coeffs.xi3.eval(epsilon);
    if discriminant < 0.0 {
        return Err(Error::NotBoundRegime { discriminant });
    }
    Ok(0.5 * shift + 0.5 * discriminant.sqrt())
}

/// Larger root of
/// `a2 nu - a1 a3 nu + a3 nu (nu - 1) - (xi1/a3 - xi2 + a3 xi3) = 0`.
///
/// The combination must not depend on epsilon; for the unit-alpha case it
/// reduces to `nu = 1/2 + sqrt(1/4 + xi1 + xi3 - xi2)`.
pub fn nu_of(coeffs: &NufaCoefficients) -> Result<f64> {
    let combo = coeffs.nu_combination();
    if combo.slope.abs() > 1e-12 {
        return Err(Error::UnsupportedCoefficients(format!(
            "nu depends on epsilon (slope {})",
            combo.slope
        )));
    }
    let a3 = coeffs.alpha3;
    let lin = a3 + coeffs.alpha1 * a3 - coeffs.alpha2;
    let radicand = lin * lin + 4.0 * a3 * combo.constant;
    if radicand < 0.0 {
        return Err(Error::SupercriticalBarrier { radicand });
    }
    Ok((lin + radicand.sqrt()) / (2.0 * a3))
}

/// Energy parameter of the level with `n` radial nodes.
///
/// Solves `sqrt(xi1(eps)) = n + nu + sqrt(xi3(eps))` in closed form: with
/// `delta = n + nu` and `s = sqrt(xi3)`, the difference `xi1 - xi3` is
/// epsilon-free and `s = (xi1 - xi3 - delta^2) / (2 delta)`. A normalisable
/// state needs `s > 0`.
pub fn quantize(coeffs: &NufaCoefficients, n: u32) -> Result<NufaSolution> {
    quantize_with_nu(coeffs, nu_of(coeffs)?, n)
}

/// `nu` for unit alphas from the epsilon-free combination `xi1 + xi3 - xi2`
/// supplied directly. Forming that combination from the `xi` themselves
/// cancels catastrophically when the Coulomb strength dominates.
pub fn nu_unit(barrier: f64) -> Result<f64> {
    let radicand = 1.0 + 4.0 * barrier;
    if radicand < 0.0 {
        return Err(Error::SupercriticalBarrier { radicand });
    }
    Ok(0.5 + 0.5 * radicand.sqrt())
}

/// [`quantize`] with a precomputed `nu`.
pub fn quantize_with_nu(coeffs: &NufaCoefficients, nu: f64, n: u32) -> Result<NufaSolution> {
    if !coeffs.unit_alphas() {
        return Err(Error::UnsupportedCoefficients(
            "closed-form quantisation needs alpha1 = alpha2 = alpha3 = 1".into(),
        ));
    }
    let gap = coeffs.xi1 - coeffs.xi3;
    if gap.slope != 0.0 || coeffs.xi3.slope <= 0.0 {
        return Err(Error::UnsupportedCoefficients(
            "xi1 and xi3 must share a positive epsilon slope".into(),
        ));
    }
    let delta = n as f64 + nu;
    let s = (gap.constant - delta * delta) / (2.0 * delta);
    if !(s > 0.0) {
        return Err(Error::NoBoundState { n });
    }
    let epsilon = (s * s - coeffs.xi3.constant) / coeffs.xi3.slope;
    let root = coeffs.xi1.eval(epsilon).max(0.0).sqrt();
    Ok(NufaSolution {
        n,
        lambda: s,
        nu,
        epsilon,
        a: s + nu + root,
        b: s + nu - root,
        c: coeffs.alpha1 + 2.0 * s,
    })
}

/// `(a, b, c)` of the terminating series, with `b = -n` imposed exactly.
pub fn hypergeometric_params(sol: &NufaSolution) -> (f64, f64, f64) {
    let n = sol.n as f64;
    (
        n + 2.0 * sol.lambda + 2.0 * sol.nu,
        -n,
        1.0 + 2.0 * sol.lambda,
    )
}

/// The two conditions that reduce the equation to hypergeometric form,
/// evaluated at the solution. Both vanish for an exact solution.
pub fn residuals(sol: &NufaSolution, coeffs: &NufaCoefficients) -> (f64, f64) {
    let (l, v) = (sol.lambda, sol.nu);
    let (a1, a2, a3) = (coeffs.alpha1, coeffs.alpha2, coeffs.alpha3);
    let eps = sol.epsilon;
    let r6 = l * (l - 1.0) + a1 * l - coeffs.xi3.eval(eps);
    let r7 = a2 * v - a1 * a3 * v + v * (v - 1.0) * a3 - coeffs.xi1.eval(eps) / a3
        + coeffs.xi2.eval(eps)
        - coeffs.xi3.eval(eps) * a3;
    (r6, r7)
}

/// Residuals divided by the size of the terms they balance.
pub fn scaled_residuals(sol: &NufaSolution, coeffs: &NufaCoefficients) -> (f64, f64) {
    let (r6, r7) = residuals(sol, coeffs);
    let eps = sol.epsilon;
    let s6 = coeffs.xi3.eval(eps).abs().max(1.0);
    let s7 = [
        coeffs.xi1.eval(eps),
        coeffs.xi2.eval(eps),
        coeffs.xi3.eval(eps),
        sol.nu * sol.nu,
    ]
    .iter()
    .fold(1.0f64, |m, v| m.max(v.abs()));
    (r6.abs() / s6, r7.abs() / s7)
}
