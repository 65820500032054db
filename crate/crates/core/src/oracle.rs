//! Finite-difference reference spectrum.
//!
//! The radial Hamiltonian `-(hbar^2/2mu) d^2/dr^2 + V_eff(r)` is discretised
//! with the three-point second difference on a uniform grid with Dirichlet
//! walls, and its lowest eigenvalues are found by Sturm bisection. The same
//! grid is refined twice (spacing halved each time) and the results are
//! Richardson-extrapolated. In [`OracleMode::GreeneAldrich`] the effective
//! potential is exactly the one the closed forms solve, so the two must
//! agree to discretisation error; [`OracleMode::Exact`] measures what the
//! Greene-Aldrich replacement costs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::potential::{centrifugal_gamma, one_minus_x, potential_value, PotentialParams};
use crate::spectra::{ehp_energy, ga_threshold, QuantumNumbers, Variant};
use crate::tridiag::SymTridiagonal;
use crate::units::PhysicalContext;

/// Bisection tolerance, relative to `max(1, |E|)`.
const BISECTION_TOL: f64 = 1e-12;

/// Uniform grid with Dirichlet walls at `r_min` and `r_max` and `points`
/// interior nodes `r_min + i h`, `i = 1..=points`.
///
/// For radial problems `r_min` is normally `0`, so the first node sits one
/// spacing from the origin and `u(0) = 0` is imposed exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        let g = Self {
            r_min,
            r_max,
            points,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min >= 0.0 && self.r_min.is_finite()) {
            return Err(Error::domain(format!(
                "r_min must be >= 0, got {}",
                self.r_min
            )));
        }
        if !(self.r_max > self.r_min && self.r_max.is_finite()) {
            return Err(Error::domain(format!(
                "r_max ({}) must exceed r_min ({})",
                self.r_max, self.r_min
            )));
        }
        if self.points < 3 {
            return Err(Error::domain(format!(
                "need at least 3 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points + 1) as f64
    }

    /// Interior node `i` for `i` in `0..points`.
    pub fn node(&self, i: usize) -> f64 {
        self.r_min + (i + 1) as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.node(i))
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points + 1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMode {
    GreeneAldrich,
    Exact,
}

/// Richardson estimate for one eigenvalue from three grids `h, h/2, h/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Distance between the extrapolations from the coarse and fine pairs.
    pub error: f64,
    /// `log2((E_h - E_h/2) / (E_h/2 - E_h/4))`, when the differences share a sign.
    pub observed_order: Option<f64>,
    /// Raw values on the three grids, coarse to fine.
    pub raw: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub mode: OracleMode,
    /// Coarsest grid; the other two are its successive refinements.
    pub grid: GridSpec,
    /// Finest-grid eigenvalues below the continuum threshold, increasing.
    pub eigenvalues: Vec<f64>,
    pub richardson: Vec<Extrapolated>,
    pub threshold: f64,
    /// Fewer than the requested number of levels lie below the threshold.
    pub truncated: bool,
}

impl OracleResult {
    /// Extrapolated energy of level `n`, if it is bound on the grid.
    pub fn level(&self, n: u32) -> Option<f64> {
        self.richardson.get(n as usize).map(|e| e.value)
    }
}

/// Large-`r` limit of the effective potential.
pub fn threshold(params: &PotentialParams, l: u32, ctx: &PhysicalContext, mode: OracleMode) -> f64 {
    match mode {
        OracleMode::GreeneAldrich => ga_threshold(params, l, ctx),
        OracleMode::Exact => 0.0,
    }
}

pub fn effective_potential(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    mode: OracleMode,
    r: f64,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let k = ctx.hbar2_over_2mu();
    let gamma = centrifugal_gamma(l);
    match mode {
        OracleMode::Exact => Ok(potential_value(params, r)? + k * gamma / (r * r)),
        OracleMode::GreeneAldrich => {
            let alpha = params.alpha;
            let x = (-alpha * r).exp();
            let inv = 1.0 / one_minus_x(alpha, r);
            Ok(
                -params.a * x * inv + params.b * x * inv * inv - params.c * alpha * inv
                    + params.d * alpha * x * inv
                    + k * gamma * alpha * alpha * inv * inv,
            )
        }
    }
}

fn hamiltonian(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    mode: OracleMode,
    grid: &GridSpec,
) -> Result<SymTridiagonal> {
    let h = grid.h();
    let kinetic = ctx.hbar2_over_2mu() / (h * h);
    let diag = grid
        .nodes()
        .map(|r| effective_potential(params, l, ctx, mode, r).map(|v| v + 2.0 * kinetic))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymTridiagonal::new(diag, vec![-kinetic; grid.points - 1]))
}

/// Lowest `k` eigenvalues on one grid and the number lying below `cut`.
pub fn eigen_on_grid(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    mode: OracleMode,
    grid: &GridSpec,
    k: usize,
    cut: f64,
) -> Result<(Vec<f64>, usize)> {
    grid.validate()?;
    let t = hamiltonian(params, l, ctx, mode, grid)?;
    Ok((t.lowest(k, BISECTION_TOL), t.count_below(cut)))
}

pub fn richardson(raw: [f64; 3]) -> Extrapolated {
    let [e1, e2, e3] = raw;
    let fine = (4.0 * e3 - e2) / 3.0;
    let coarse = (4.0 * e2 - e1) / 3.0;
    let ratio = (e1 - e2) / (e2 - e3);
    Extrapolated {
        value: fine,
        error: (fine - coarse).abs(),
        observed_order: (ratio > 0.0 && ratio.is_finite()).then(|| ratio.log2()),
        raw,
    }
}

/// Lowest `k` bound levels at angular momentum `l` on `grid` and two
/// successive refinements.
pub fn eigen_lowest(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    mode: OracleMode,
    grid: &GridSpec,
    k: usize,
) -> Result<OracleResult> {
    if k == 0 {
        return Err(Error::domain("need k >= 1"));
    }
    params.validate()?;
    grid.validate()?;
    let cut = threshold(params, l, ctx, mode);
    let grids = [*grid, grid.refined(), grid.refined().refined()];
    let mut solves = Vec::with_capacity(3);
    for g in &grids {
        solves.push(eigen_on_grid(params, l, ctx, mode, g, k, cut)?);
    }
    let bound = solves.iter().map(|(_, c)| *c).min().unwrap_or(0).min(k);
    let richardson = (0..bound)
        .map(|j| richardson([solves[0].0[j], solves[1].0[j], solves[2].0[j]]))
        .collect();
    Ok(OracleResult {
        mode,
        grid: *grid,
        eigenvalues: solves[2].0[..bound].to_vec(),
        richardson,
        threshold: cut,
        truncated: bound < k,
    })
}

/// Interval for level `n_top` at angular momentum `l`: `r_min = 0` and
/// `r_max = 40 / kappa`, with `kappa` the decay constant of the closed-form
/// estimate (or `60 / alpha` without one). `r_max` is then doubled at fixed
/// spacing until level `n_top` moves by less than `1e-10 max(1, |E|)`.
pub fn auto_grid(
    params: &PotentialParams,
    l: u32,
    ctx: &PhysicalContext,
    mode: OracleMode,
    n_top: u32,
    points: usize,
) -> Result<GridSpec> {
    let k = ctx.hbar2_over_2mu();
    let binding = ehp_energy(
        params,
        QuantumNumbers::new(n_top, l),
        ctx,
        Variant::Rederived,
    )
    .ok()
    .map(|lvl| ga_threshold(params, l, ctx) - lvl.energy)
    .filter(|b| *b > 0.0);
    let r_max = match binding {
        Some(b) => 40.0 / (b / k).sqrt(),
        None => 60.0 / params.alpha,
    };
    let mut grid = GridSpec::new(0.0, r_max, points)?;
    let cut = threshold(params, l, ctx, mode);
    let idx = n_top as usize;
    for _ in 0..4 {
        let (here, count) = eigen_on_grid(params, l, ctx, mode, &grid, idx + 1, cut)?;
        if count <= idx {
            break;
        }
        let wider = GridSpec::new(0.0, 2.0 * grid.r_max, 2 * grid.points + 1)?;
        let (there, _) = eigen_on_grid(params, l, ctx, mode, &wider, idx + 1, cut)?;
        if (here[idx] - there[idx]).abs() < 1e-10 * here[idx].abs().max(1.0) {
            break;
        }
        grid = GridSpec::new(0.0, wider.r_max, points)?;
    }
    Ok(grid)
}

/// Agreement band between a closed-form level and the oracle.
pub fn oracle_tolerance(energy: f64) -> f64 {
    (1e-4 * energy.abs()).max(1e-6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Rederived,
    AsPrinted,
    Both,
    Neither,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Rederived => "rederived",
            Verdict::AsPrinted => "as-printed",
            Verdict::Both => "both",
            Verdict::Neither => "neither",
        }
    }
}

/// One line of the adjudication report. `None` means "no bound level".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjudicationRow {
    pub qn: QuantumNumbers,
    pub as_printed: Option<f64>,
    pub rederived: Option<f64>,
    pub oracle_ga: Option<f64>,
    pub oracle_exact: Option<f64>,
    pub gap_printed: Option<f64>,
    pub gap_rederived: Option<f64>,
    pub verdict: Verdict,
}

impl AdjudicationRow {
    /// Rederived level and GA oracle agree: same energy within tolerance, or
    /// both report no bound level.
    pub fn rederived_ok(&self) -> bool {
        agrees(self.rederived, self.oracle_ga)
    }

    pub fn printed_ok(&self) -> bool {
        agrees(self.as_printed, self.oracle_ga)
    }
}

fn agrees(claim: Option<f64>, oracle: Option<f64>) -> bool {
    match (claim, oracle) {
        (Some(e), Some(o)) => (e - o).abs() <= oracle_tolerance(o),
        (None, None) => true,
        _ => false,
    }
}

fn build_row(
    qn: QuantumNumbers,
    params: &PotentialParams,
    ctx: &PhysicalContext,
    ga: &OracleResult,
    exact: &OracleResult,
) -> AdjudicationRow {
    let as_printed = ehp_energy(params, qn, ctx, Variant::AsPrinted)
        .ok()
        .filter(|l| l.bound)
        .map(|l| l.energy);
    let rederived = ehp_energy(params, qn, ctx, Variant::Rederived)
        .ok()
        .map(|l| l.energy);
    let oracle_ga = ga.level(qn.n);
    let gap = |e: Option<f64>| e.zip(oracle_ga).map(|(e, o)| (e - o).abs());
    let mut row = AdjudicationRow {
        qn,
        as_printed,
        rederived,
        oracle_ga,
        oracle_exact: exact.level(qn.n),
        gap_printed: gap(as_printed),
        gap_rederived: gap(rederived),
        verdict: Verdict::Neither,
    };
    row.verdict = match (row.gap_printed, row.gap_rederived) {
        (Some(p), Some(r)) => {
            // the two closed forms coincide to rounding for many reductions
            let (ep, er) = (row.as_printed.unwrap_or(0.0), row.rederived.unwrap_or(0.0));
            if (ep - er).abs() <= 1e-12 * ep.abs().max(er.abs()).max(1.0) {
                Verdict::Both
            } else if r < p {
                Verdict::Rederived
            } else {
                Verdict::AsPrinted
            }
        }
        _ => match (row.rederived_ok(), row.printed_ok()) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::Rederived,
            (false, true) => Verdict::AsPrinted,
            (false, false) => Verdict::Neither,
        },
    };
    row
}

/// Compares both closed forms with the oracle on one grid.
pub fn adjudicate(
    params: &PotentialParams,
    qn: QuantumNumbers,
    ctx: &PhysicalContext,
    grid: &GridSpec,
) -> Result<AdjudicationRow> {
    let k = qn.n as usize + 1;
    let ga = eigen_lowest(params, qn.l, ctx, OracleMode::GreeneAldrich, grid, k)?;
    let exact = eigen_lowest(params, qn.l, ctx, OracleMode::Exact, grid, k)?;
    Ok(build_row(qn, params, ctx, &ga, &exact))
}

/// Grid choice for a validation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPolicy {
    /// Interior points of the coarsest grid (the finest has `4 points + 3`).
    pub points: usize,
    pub r_min: f64,
    /// Fixed outer wall; chosen per `l` by [`auto_grid`] when `None`.
    pub r_max: Option<f64>,
}

impl Default for GridPolicy {
    fn default() -> Self {
        Self {
            points: 10_239,
            r_min: 0.0,
            r_max: None,
        }
    }
}

/// Adjudicates a list of states, sharing one oracle run per `l`.
pub fn adjudicate_states(
    params: &PotentialParams,
    states: &[QuantumNumbers],
    ctx: &PhysicalContext,
    policy: &GridPolicy,
) -> Result<Vec<AdjudicationRow>> {
    let mut by_l: BTreeMap<u32, u32> = BTreeMap::new();
    for qn in states {
        let top = by_l.entry(qn.l).or_insert(0);
        *top = (*top).max(qn.n);
    }
    let mut oracles = BTreeMap::new();
    for (&l, &n_top) in &by_l {
        let mut results = Vec::with_capacity(2);
        for mode in [OracleMode::GreeneAldrich, OracleMode::Exact] {
            let grid = match policy.r_max {
                Some(r_max) => GridSpec::new(policy.r_min, r_max, policy.points)?,
                None => {
                    let g = auto_grid(params, l, ctx, mode, n_top, policy.points)?;
                    GridSpec::new(policy.r_min, g.r_max, policy.points)?
                }
            };
            results.push(eigen_lowest(
                params,
                l,
                ctx,
                mode,
                &grid,
                n_top as usize + 1,
            )?);
        }
        oracles.insert(l, results);
    }
    Ok(states
        .iter()
        .map(|qn| {
            let o = &oracles[&qn.l];
            build_row(*qn, params, ctx, &o[0], &o[1])
        })
        .collect())
}
