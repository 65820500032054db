//! Radial wavefunctions
//!
//! ```text
//! u(r) = N x^lambda (1 - x)^nu 2F1(-n, n + 2 lambda + 2 nu; 1 + 2 lambda; x),  x = e^{-alpha r}
//! ```
//!
//! Exponents reach the thousands for small screening parameters, so `u` is
//! handled as `ln|u|` plus a sign and only exponentiated on output.

use crate::error::{Error, Result};
use crate::nufa::NufaSolution;
use crate::oracle::{effective_potential, GridSpec, OracleMode};
use crate::potential::{dimensionless, one_minus_x, solve_level, PotentialParams};
use crate::spectra::QuantumNumbers;
use crate::units::PhysicalContext;

/// Coefficient of `x^k` in `2F1(a, b; c; x)`, `(a)_k (b)_k / ((c)_k k!)`,
/// built as a plain product.
pub fn series_coefficient(a: f64, b: f64, c: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| {
        let j = j as f64;
        acc * (a + j) * (b + j) / ((c + j) * (j + 1.0))
    })
}

fn check_poles(n: u32, c: f64) -> Result<()> {
    if (0..n).any(|k| c + k as f64 == 0.0) {
        return Err(Error::PoleInSeries { c });
    }
    Ok(())
}

/// The `n + 1` coefficients of `2F1(-n, a; c; x)`.
pub fn terminating_coefficients(a: f64, n: u32, c: f64) -> Result<Vec<f64>> {
    check_poles(n, c)?;
    let b = -(n as f64);
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut term = 1.0;
    out.push(term);
    for k in 0..n {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0));
        out.push(term);
    }
    Ok(out)
}

/// `2F1(-n, a; c; x)`, a polynomial of degree `n`.
pub fn gauss_2f1_terminating(a: f64, n: u32, c: f64, x: f64) -> Result<f64> {
    let coeffs = terminating_coefficients(a, n, c)?;
    Ok(coeffs.iter().rev().fold(0.0, |acc, ck| acc * x + ck))
}

/// `(P, P', P'')` of a polynomial with ascending coefficients.
fn poly_eval(coeffs: &[f64], x: f64) -> (f64, f64, f64) {
    let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
    for &c in coeffs.iter().rev() {
        ddp = ddp * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp, ddp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub params: PotentialParams,
    pub qn: QuantumNumbers,
    pub ctx: PhysicalContext,
    pub energy: f64,
    pub lambda: f64,
    pub nu: f64,
    /// Ascending coefficients of the degree-`n` hypergeometric polynomial.
    pub poly_coeffs: Vec<f64>,
    /// `ln N`; zero until [`normalize`] runs.
    pub log_norm: f64,
}

impl RadialWavefunction {
    /// Normalisation constant. May overflow for extreme exponents; use
    /// [`RadialWavefunction::log_norm`] there.
    pub fn norm(&self) -> f64 {
        self.log_norm.exp()
    }

    fn x(&self, r: f64) -> f64 {
        (-self.params.alpha * r).exp()
    }

    /// `(ln|u(r)|, sign u(r))`. Returns `-inf` at `r = 0`.
    pub fn log_abs(&self, r: f64) -> (f64, f64) {
        let alpha = self.params.alpha;
        let (p, _, _) = poly_eval(&self.poly_coeffs, self.x(r));
        let ln = self.log_norm - self.lambda * alpha * r
            + self.nu * one_minus_x(alpha, r).ln()
            + p.abs().ln();
        (ln, if p < 0.0 { -1.0 } else { 1.0 })
    }

    pub fn value(&self, r: f64) -> f64 {
        let (ln, sign) = self.log_abs(r);
        sign * ln.exp()
    }

    /// Sign of the polynomial factor, the only factor that can change sign.
    pub fn sign(&self, r: f64) -> f64 {
        poly_eval(&self.poly_coeffs, self.x(r)).0.signum()
    }

    /// `(u, u'')` at `r > 0`, differentiated in closed form.
    pub fn with_second_derivative(&self, r: f64) -> (f64, f64) {
        let alpha = self.params.alpha;
        let x = self.x(r);
        let omx = one_minus_x(alpha, r);
        let ln_w = self.log_norm - self.lambda * alpha * r + self.nu * omx.ln();
        let w = ln_w.exp();
        // derivatives of ln w with respect to r
        let g1 = -self.lambda * alpha + self.nu * alpha * x / omx;
        let g2 = -self.nu * alpha * alpha * x / (omx * omx);
        let (p, dp, ddp) = poly_eval(&self.poly_coeffs, x);
        let p_r = -alpha * x * dp;
        let p_rr = alpha * alpha * (x * x * ddp + x * dp);
        let u = w * p;
        let upp = w * ((g1 * g1 + g2) * p + 2.0 * g1 * p_r + p_rr);
        (u, upp)
    }

    /// `u'' - (V_GA(r) - E) u / (hbar^2 / 2mu)` and `u''` at `r`.
    pub fn ode_residual(&self, r: f64) -> Result<(f64, f64)> {
        let (u, upp) = self.with_second_derivative(r);
        let v = effective_potential(
            &self.params,
            self.qn.l,
            &self.ctx,
            OracleMode::GreeneAldrich,
            r,
        )?;
        Ok((upp - (v - self.energy) / self.ctx.hbar2_over_2mu() * u, upp))
    }

    /// Position of the largest `|u|` and the radius beyond which `u^2`
    /// stays below `1e-12` of its peak.
    pub fn support(&self) -> (f64, f64) {
        const SAMPLES: usize = 4000;
        let tail = 1e-12f64.ln();
        let decay = self.lambda * self.params.alpha;
        let mut reach = 20.0 * (self.qn.n as f64 + 1.0 + self.nu) / decay;
        loop {
            let step = reach / SAMPLES as f64;
            let logs: Vec<f64> = (1..=SAMPLES)
                .map(|i| self.log_abs(i as f64 * step).0)
                .collect();
            let (imax, &peak) = logs
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_finite())
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("wavefunction has finite samples");
            let last = *logs.last().unwrap();
            if 2.0 * (last - peak) < tail || !reach.is_finite() {
                let mut cut = SAMPLES - 1;
                while cut > imax && 2.0 * (logs[cut - 1] - peak) < tail {
                    cut -= 1;
                }
                return ((imax + 1) as f64 * step, (cut + 1) as f64 * step);
            }
            reach *= 2.0;
        }
    }
}

pub fn build_wavefunction(
    params: &PotentialParams,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
) -> Result<RadialWavefunction> {
    params.validate()?;
    let sol: NufaSolution = solve_level(&dimensionless(params, ctx, qn.l), qn.n)?;
    let (a, _, c) = crate::nufa::hypergeometric_params(&sol);
    let energy = -ctx.hbar2_over_2mu() * params.alpha * params.alpha * sol.epsilon;
    Ok(RadialWavefunction {
        params: *params,
        qn,
        ctx: *ctx,
        energy,
        lambda: sol.lambda,
        nu: sol.nu,
        poly_coeffs: terminating_coefficients(a, qn.n, c)?,
        log_norm: 0.0,
    })
}

const MAX_HALVINGS: u32 = 24;

/// Sets `N` so that `int_0^inf u^2 dr = 1`, by composite Simpson on
/// `[0, r_max]` with interval halving to `1e-10` relative agreement.
pub fn normalize(wf: &RadialWavefunction) -> Result<RadialWavefunction> {
    let (_, r_max) = wf.support();
    let (peak_ln, _) = {
        let (r_peak, _) = wf.support();
        wf.log_abs(r_peak)
    };
    let f = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        let (ln, _) = wf.log_abs(r);
        (2.0 * (ln - peak_ln)).exp()
    };
    let mut m: usize = 128;
    let mut h = r_max / m as f64;
    // trapezoid sum at spacing h; Simpson follows from two successive levels
    let mut trap = 0.5 * (f(0.0) + f(r_max)) + (1..m).map(|i| f(i as f64 * h)).sum::<f64>();
    let mut simpson_prev = f64::NAN;
    for _ in 0..MAX_HALVINGS {
        let mids: f64 = (0..m).map(|i| f((i as f64 + 0.5) * h)).sum();
        let trap_fine = trap + mids;
        let simpson = (4.0 * trap_fine * 0.5 * h - trap * h) / 3.0;
        if simpson_prev.is_finite() && (simpson - simpson_prev).abs() < 1e-10 * simpson.abs() {
            let mut out = wf.clone();
            out.log_norm = wf.log_norm - peak_ln - 0.5 * simpson.ln();
            return Ok(out);
        }
        simpson_prev = simpson;
        trap = trap_fine;
        m *= 2;
        h *= 0.5;
    }
    Err(Error::QuadratureFailure {
        halvings: MAX_HALVINGS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeCount {
    pub nodes: usize,
    /// The count did not change on a grid four times finer.
    pub resolved: bool,
}

fn sign_changes(wf: &RadialWavefunction, grid: &GridSpec) -> usize {
    let mut count = 0;
    let mut prev = 0.0;
    for r in grid.nodes() {
        let s = wf.sign(r);
        if s == 0.0 {
            continue;
        }
        if prev != 0.0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Strict sign changes of `u` on the interior nodes of `grid`.
pub fn count_nodes(wf: &RadialWavefunction, grid: &GridSpec) -> NodeCount {
    let nodes = sign_changes(wf, grid);
    let fine = sign_changes(wf, &grid.refined().refined());
    NodeCount {
        nodes,
        resolved: nodes == fine,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_sum(a: f64, n: u32, c: f64, x: f64) -> f64 {
        // each term rebuilt from Pochhammer products, summed high order first
        (0..=n)
            .rev()
            .map(|k| series_coefficient(a, -(n as f64), c, k) * x.powi(k as i32))
            .sum()
    }

    #[test]
    fn series_examples() {
        for (a, c, x) in [(3.0, 2.0, 0.5), (0.7, 4.5, 0.9)] {
            assert_eq!(gauss_2f1_terminating(a, 0, c, x).unwrap(), 1.0);
            let one = gauss_2f1_terminating(a, 1, c, x).unwrap();
            assert!((one - (1.0 - a / c * x)).abs() < 1e-15);
        }
        let v = gauss_2f1_terminating(3.0, 2, 2.0, 0.5).unwrap();
        // 1 - 3 x + (3*4*(-2)(-1))/(2*3*2) x^2 = 1 - 1.5 + 0.5
        assert!((v - 0.0).abs() < 1e-15);
        for (a, n, c, x) in [
            (3.0, 2, 2.0, 0.5),
            (3001.0, 3, 3000.0, 0.3),
            (12.5, 7, 3.25, 0.77),
        ] {
            let rec = gauss_2f1_terminating(a, n, c, x).unwrap();
            let dir = direct_sum(a, n, c, x);
            // rounding is relative to the largest term, not to the (cancelling) sum
            let size: f64 = (0..=n)
                .map(|k| (series_coefficient(a, -(n as f64), c, k) * x.powi(k as i32)).abs())
                .sum();
            assert!(
                (rec - dir).abs() <= 1e-15 * size * (n as f64 + 1.0),
                "{rec} vs {dir}"
            );
        }
    }

    #[test]
    fn series_pole() {
        assert!(matches!(
            gauss_2f1_terminating(1.0, 3, -1.0, 0.5),
            Err(Error::PoleInSeries { .. })
        ));
        assert!(gauss_2f1_terminating(1.0, 3, -3.0, 0.5).is_ok());
    }

    #[test]
    fn series_terminates() {
        for n in 0..6 {
            assert_eq!(series_coefficient(7.3, -(n as f64), 2.1, n + 1), 0.0);
        }
    }

    #[test]
    fn polynomial_derivatives() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let (p, dp, ddp) = poly_eval(&c, 0.4);
        assert!((p - (1.0 - 0.8 + 0.08 + 0.192)).abs() < 1e-15);
        assert!((dp - (-2.0 + 0.4 + 9.0 * 0.16)).abs() < 1e-15);
        assert!((ddp - (1.0 + 18.0 * 0.4)).abs() < 1e-14);
    }

    fn hellmann(alpha: f64, n: u32, l: u32) -> RadialWavefunction {
        let p = PotentialParams::hellmann(2.0, -1.0, alpha).unwrap();
        build_wavefunction(&p, QuantumNumbers::new(n, l), &PhysicalContext::rydberg()).unwrap()
    }

    #[test]
    fn boundary_behaviour() {
        let wf = hellmann(0.001, 0, 0);
        assert_eq!(wf.lambda, 1499.5);
        assert_eq!(wf.poly_coeffs, vec![1.0]);
        assert_eq!(wf.value(0.0), 0.0);
        assert!(wf.value(200.0) < 1e-100);
        // u ~ r^nu near the origin
        let (h1, h2) = (1e-4, 1e-5);
        let slope = (wf.value(h1).ln() - wf.value(h2).ln()) / (h1.ln() - h2.ln());
        assert!((slope - wf.nu).abs() < 1e-3);
    }

    #[test]
    fn normalize_is_idempotent_and_projective() {
        let wf = hellmann(0.001, 0, 0);
        let once = normalize(&wf).unwrap();
        let twice = normalize(&once).unwrap();
        assert!((once.log_norm - twice.log_norm).abs() < 1e-12);
        let mut doubled = wf.clone();
        doubled.log_norm += 2f64.ln();
        let again = normalize(&doubled).unwrap();
        assert!((again.value(0.7) - once.value(0.7)).abs() < 1e-12 * once.value(0.7).abs());
    }

    #[test]
    fn node_counts() {
        let g = GridSpec::new(0.0, 60.0, 6000).unwrap();
        let ground = hellmann(0.001, 0, 0);
        assert_eq!(
            count_nodes(&ground, &g),
            NodeCount {
                nodes: 0,
                resolved: true
            }
        );
        let two_s = hellmann(0.001, 1, 0);
        let x0 = 1.0 / (-two_s.poly_coeffs[1]);
        assert!(x0 > 0.0 && x0 < 1.0);
        assert_eq!(
            count_nodes(&two_s, &g),
            NodeCount {
                nodes: 1,
                resolved: true
            }
        );
    }

    #[test]
    fn ode_residual_small() {
        let wf = normalize(&hellmann(0.01, 2, 1)).unwrap();
        let (_, r_max) = wf.support();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 1..2000 {
            let r = r_max * i as f64 / 2000.0;
            let (res, upp) = wf.ode_residual(r).unwrap();
            worst = worst.max(res.abs());
            scale = scale.max(upp.abs());
        }
        assert!(worst <= 1e-9 * scale, "{worst} vs {scale}");
    }
}
