//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are printed on every run.
//! Criteria listed in `KNOWN_FAILURES` are expected to fail for a documented
//! reason; the run fails if one of them starts passing, or if any other
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ehp_core::nufa::{hypergeometric_params, scaled_residuals};
use ehp_core::oracle::{
    adjudicate_states, eigen_lowest, oracle_tolerance, GridPolicy, GridSpec, OracleMode,
};
use ehp_core::potential::{dimensionless, solve_level, to_nufa, DimensionlessParams};
use ehp_core::reference::{table1, table4, TABLE1_SETS};
use ehp_core::report::{
    table1_csv, table1_rows, table3_csv, table3_rows, table4_rows, ValidationReport,
};
use ehp_core::spectra::{
    coulomb_energy, eckart_energy, ehp_energy, hellmann_energy, yukawa_energy, QuantumNumbers,
    Variant,
};
use ehp_core::wavefunction::{build_wavefunction, count_nodes, normalize, series_coefficient};
use ehp_core::{molecules, PhysicalContext, PotentialParams};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

/// Criterion 3 asks for 1e-5 relative agreement with the bare Coulomb level
/// at alpha = 1e-6, but the Greene-Aldrich shift C alpha (gamma / 2N^2 - 1/2)
/// is 1.4e-5 relative for (n, l) = (2, 1).
const KNOWN_FAILURES: &[u8] = &[3];

const SAMPLES: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rydberg() -> PhysicalContext {
    PhysicalContext::natural(1.0, 0.5).unwrap()
}

/// Every quantised solution produced along the way, for the residual check.
type Solved = Vec<(DimensionlessParams, u32)>;

fn record(solved: &mut Solved, p: &PotentialParams, qn: QuantumNumbers, ctx: &PhysicalContext) {
    solved.push((dimensionless(p, ctx, qn.l), qn.n));
}

fn table4_reproduction(solved: &mut Solved) -> Outcome {
    let start = Instant::now();
    let rows = table4_rows();
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    let mut missing = 0;
    for r in &rows {
        record(solved, &r.params, r.qn, &rydberg());
        match r.gap(Variant::Rederived) {
            Some(g) => worst = worst.max(g),
            None => missing += 1,
        }
    }
    let anchors = [
        ("1S", 0.001, -2.250500250),
        ("2S", 0.01, -0.5676000000),
        ("3d", 0.005, -0.2475062500),
        ("4f", 0.01, -0.1344000000),
    ];
    let anchors_ok = anchors.iter().all(|&(label, alpha, want)| {
        rows.iter()
            .find(|r| r.label == label && r.params.alpha == alpha)
            .and_then(|r| r.rederived)
            .is_some_and(|e| (e - want).abs() <= 5e-9)
    });
    outcome(
        rows.len() == 30
            && missing == 0
            && worst <= 5e-9
            && anchors_ok
            && elapsed < Duration::from_secs(1),
        format!(
            "{} rows, max |E - paper| = {worst:.2e}, anchors {}, {:.1} ms",
            rows.len(),
            if anchors_ok { "ok" } else { "off" },
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn oracle_equivalence(solved: &mut Solved) -> Outcome {
    let start = Instant::now();
    let ctx = rydberg();
    let policy = GridPolicy::default();
    let finest = 4 * policy.points + 3;
    let mut blocks: Vec<(PotentialParams, Vec<QuantumNumbers>)> = Vec::new();
    let refs = table4();
    for alpha in [0.001, 0.005, 0.01] {
        let states = refs
            .iter()
            .filter(|r| r.alpha == alpha)
            .map(|r| r.qn)
            .collect();
        blocks.push((PotentialParams::hellmann(2.0, -1.0, alpha).unwrap(), states));
    }
    let q = QuantumNumbers::new;
    blocks.push((
        PotentialParams::yukawa(-2.0, 0.1).unwrap(),
        vec![q(0, 0), q(1, 0), q(0, 1)],
    ));
    blocks.push((
        PotentialParams::eckart(4.0, 0.5, 0.5).unwrap(),
        vec![q(0, 0), q(1, 0)],
    ));
    blocks.push((
        PotentialParams::eckart(3.0, 0.5, 0.3).unwrap(),
        vec![q(0, 1)],
    ));
    let (mut checked, mut failed, mut worst) = (0, 0, 0.0f64);
    for (p, states) in &blocks {
        let rows = match adjudicate_states(p, states, &ctx, &policy) {
            Ok(rows) => rows,
            Err(e) => return outcome(false, format!("oracle error: {e}")),
        };
        for row in rows {
            record(solved, p, row.qn, &ctx);
            checked += 1;
            match (row.rederived, row.oracle_ga) {
                (Some(e), Some(o)) => {
                    worst = worst.max((e - o).abs() / oracle_tolerance(o));
                    if (e - o).abs() > oracle_tolerance(o) {
                        failed += 1;
                    }
                }
                _ => failed += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failed == 0 && finest <= 40_960 && elapsed < Duration::from_secs(120),
        format!(
            "{checked} levels, {failed} outside max(1e-6, 1e-4|E|), worst gap/tolerance {worst:.3}, \
             finest grid {finest} points, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn coulomb_limit(solved: &mut Solved) -> Outcome {
    let ctx = rydberg();
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, l) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
        let qn = QuantumNumbers::new(n, l);
        let e = hellmann_energy(2.0, 0.0, 1e-6, qn, &ctx).map(|lvl| lvl.energy);
        record(
            solved,
            &PotentialParams::hellmann(2.0, 0.0, 1e-6).unwrap(),
            qn,
            &ctx,
        );
        let big_n = (n + l + 1) as f64;
        let want = -1.0 / (big_n * big_n);
        let rel = e
            .map(|e| ((e - want) / want).abs())
            .unwrap_or(f64::INFINITY);
        pass &= rel <= 1e-5;
        parts.push(format!("({n},{l}) {rel:.2e}"));
    }
    outcome(
        pass,
        format!("relative deviation {} (limit 1e-5)", parts.join(", ")),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn random_ctx(rng: &mut StdRng) -> PhysicalContext {
    PhysicalContext::natural(rng.random_range(0.5..2.0), rng.random_range(0.25..2.0)).unwrap()
}

fn random_qn(rng: &mut StdRng) -> QuantumNumbers {
    QuantumNumbers::new(rng.random_range(0..4), rng.random_range(0..4))
}

/// Draws until `SAMPLES` bound configurations were compared; returns the
/// worst relative deviation.
fn reduction_case(
    rng: &mut StdRng,
    solved: &mut Solved,
    mut draw: impl FnMut(
        &mut StdRng,
    ) -> (
        PotentialParams,
        Option<f64>,
        QuantumNumbers,
        PhysicalContext,
    ),
) -> f64 {
    let mut worst = 0.0f64;
    let mut taken = 0;
    while taken < SAMPLES {
        let (p, special, qn, ctx) = draw(rng);
        let Some(special) = special else { continue };
        let e = match ehp_energy(&p, qn, &ctx, Variant::Rederived) {
            Ok(lvl) => lvl.energy,
            Err(_) => return f64::INFINITY,
        };
        record(solved, &p, qn, &ctx);
        worst = worst.max(rel(e, special));
        taken += 1;
    }
    worst
}

fn reductions(solved: &mut Solved) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let hellmann = reduction_case(&mut rng, solved, |rng| {
        let (c, d, alpha) = (
            rng.random_range(0.2..6.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(0.001..0.2),
        );
        let (qn, ctx) = (random_qn(rng), random_ctx(rng));
        let special = hellmann_energy(c, d, alpha, qn, &ctx)
            .ok()
            .map(|l| l.energy);
        (
            PotentialParams::hellmann(c, d, alpha).unwrap(),
            special,
            qn,
            ctx,
        )
    });
    let eckart = reduction_case(&mut rng, solved, |rng| {
        let (a, b, alpha) = (
            rng.random_range(0.5..20.0),
            rng.random_range(-0.05..3.0),
            rng.random_range(0.05..1.0),
        );
        let (qn, ctx) = (random_qn(rng), random_ctx(rng));
        let special = eckart_energy(a, b, alpha, qn, &ctx, Variant::Rederived)
            .ok()
            .map(|l| l.energy);
        (
            PotentialParams::eckart(a, b, alpha).unwrap(),
            special,
            qn,
            ctx,
        )
    });
    let yukawa = reduction_case(&mut rng, solved, |rng| {
        let (d, alpha) = (rng.random_range(-8.0..-0.2), rng.random_range(0.005..0.5));
        let (qn, ctx) = (random_qn(rng), random_ctx(rng));
        let special = yukawa_energy(d, alpha, qn, &ctx).ok().map(|l| l.energy);
        (PotentialParams::yukawa(d, alpha).unwrap(), special, qn, ctx)
    });
    let coulomb = reduction_case(&mut rng, solved, |rng| {
        let c = rng.random_range(0.2..6.0);
        let (qn, ctx) = (random_qn(rng), random_ctx(rng));
        let special = coulomb_energy(c, qn, &ctx).ok().map(|l| l.energy);
        (
            PotentialParams::new(0.0, 0.0, c, 0.0, 1e-15).unwrap(),
            special,
            qn,
            ctx,
        )
    });
    let worst = hellmann.max(eckart).max(yukawa).max(coulomb);
    outcome(
        worst <= 1e-12,
        format!(
            "{SAMPLES} samples per case, worst relative deviation: hellmann {hellmann:.1e}, eckart {eckart:.1e}, \
             yukawa {yukawa:.1e}, coulomb {coulomb:.1e}"
        ),
    )
}

fn residuals(solved: &Solved) -> Outcome {
    let mut worst = 0.0f64;
    for (d, n) in solved {
        match solve_level(d, *n) {
            Ok(sol) => {
                let (r6, r7) = scaled_residuals(&sol, &to_nufa(d));
                worst = worst.max(r6).max(r7);
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    outcome(
        worst <= 1e-10,
        format!(
            "{} solutions, worst scaled residual {worst:.2e}",
            solved.len()
        ),
    )
}

fn wavefunctions() -> Outcome {
    let ctx = rydberg();
    let (mut nodes_bad, mut worst_norm, mut worst_ode, mut series_bad) = (0, 0.0f64, 0.0f64, 0);
    let refs = table4();
    for r in &refs {
        let wf = match build_wavefunction(&r.params, r.qn, &ctx).and_then(|w| normalize(&w)) {
            Ok(wf) => wf,
            Err(e) => return outcome(false, format!("{}: {e}", r.label)),
        };
        let (_, r_max) = wf.support();
        let count = count_nodes(&wf, &GridSpec::new(0.0, r_max, 20_000).unwrap());
        if !count.resolved || count.nodes != r.qn.n as usize {
            nodes_bad += 1;
        }
        let m = 200_000;
        let h = r_max / m as f64;
        let norm: f64 = (1..m).map(|i| wf.value(i as f64 * h).powi(2)).sum::<f64>() * h;
        worst_norm = worst_norm.max((norm - 1.0).abs());
        let (mut res, mut scale) = (0.0f64, 0.0f64);
        for i in 1..4000 {
            let (e, upp) = wf.ode_residual(r_max * i as f64 / 4000.0).unwrap();
            res = res.max(e.abs());
            scale = scale.max(upp.abs());
        }
        worst_ode = worst_ode.max(res / scale);
        let sol = solve_level(&dimensionless(&r.params, &ctx, r.qn.l), r.qn.n).unwrap();
        let (a, b, c) = hypergeometric_params(&sol);
        if series_coefficient(a, b, c, r.qn.n + 1) != 0.0 {
            series_bad += 1;
        }
    }
    outcome(
        nodes_bad == 0 && worst_norm <= 1e-6 && worst_ode <= 1e-6 && series_bad == 0,
        format!(
            "{} states: node mismatches {nodes_bad}, max |norm - 1| {worst_norm:.1e}, \
             max scaled ODE residual {worst_ode:.1e}, non-terminating series {series_bad}",
            refs.len()
        ),
    )
}

fn trends() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7e4d);
    let ctx = PhysicalContext::atomic();
    let (mut slopes, mut ladders, mut bad) = (0, 0, 0);
    while slopes < SAMPLES {
        let p = PotentialParams::new(
            rng.random_range(0.0..3.0),
            rng.random_range(0.0..1.0),
            rng.random_range(0.5..4.0),
            rng.random_range(-2.0..1.0),
            rng.random_range(0.005..0.2),
        )
        .unwrap();
        let qn = random_qn(&mut rng);
        let level =
            |p: &PotentialParams, qn| ehp_energy(p, qn, &ctx, Variant::Rederived).map(|l| l.energy);
        let Ok(here) = level(&p, qn) else { continue };
        for name in ["A", "C"] {
            let v = p.get(name).unwrap();
            let h = 1e-5 * v.abs().max(1.0);
            if let (Ok(up), Ok(down)) = (
                level(&p.with(name, v + h).unwrap(), qn),
                level(&p.with(name, v - h).unwrap(), qn),
            ) {
                if (up - down) / (2.0 * h) > 1e-9 * here.abs().max(1.0) {
                    bad += 1;
                }
            }
        }
        slopes += 1;
        if let Ok(upper) = level(&p, QuantumNumbers::new(qn.n + 1, qn.l)) {
            ladders += 1;
            if upper <= here {
                bad += 1;
            }
        }
    }
    let rctx = rydberg();
    let mut gaps = Vec::new();
    for alpha in [0.15, 0.1, 0.05, 0.01, 0.001] {
        let p = PotentialParams::hellmann(2.0, -1.0, alpha).unwrap();
        let grid = GridSpec::new(0.0, 30.0, 8191).unwrap();
        let ga = eigen_lowest(&p, 0, &rctx, OracleMode::GreeneAldrich, &grid, 1).unwrap();
        let exact = eigen_lowest(&p, 0, &rctx, OracleMode::Exact, &grid, 1).unwrap();
        gaps.push((ga.level(0).unwrap() - exact.level(0).unwrap()).abs());
    }
    let shrinking = gaps.windows(2).all(|w| w[1] < w[0]);
    let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.2e}")).collect();
    outcome(
        bad == 0 && shrinking,
        format!(
            "{slopes} slope samples, {ladders} ladder pairs, {bad} violations; \
             1S GA-vs-exact gap over alpha 0.15..0.001: {}",
            shown.join(" > ")
        ),
    )
}

fn errata_report() -> Outcome {
    let ctx = PhysicalContext::atomic();
    let refs = table1();
    let mut alphas: Vec<f64> = refs.iter().map(|r| r.alpha).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let (a, b, c, d) = TABLE1_SETS[0];
    let mut summaries = Vec::new();
    for alpha in alphas {
        let states: Vec<_> = refs
            .iter()
            .filter(|r| r.alpha == alpha && r.set == 0)
            .map(|r| r.qn)
            .collect();
        let p = PotentialParams::new(a, b, c, d, alpha).unwrap();
        match ValidationReport::run(&p, &states, &ctx, &GridPolicy::default()) {
            Ok(report) => summaries.push(format!("alpha={alpha} {}", report.preferred().as_str())),
            Err(e) => return outcome(false, format!("validation failed at alpha={alpha}: {e}")),
        }
    }
    let rows = table1_rows();
    let csv = table1_csv(&rows, Variant::AsPrinted);
    let gaps: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.gap(Variant::AsPrinted))
        .collect();
    let max_gap = gaps.iter().copied().fold(0.0f64, f64::max);
    let catalog = molecules::builtin_catalog();
    let t3 = table3_rows((1.0, 1.0, 1.0, 1.0), &catalog).unwrap();
    let no_paper_column = t3.iter().all(|r| r.paper.is_none())
        && !table3_csv(&t3, &catalog)
            .lines()
            .next()
            .unwrap()
            .contains("paper");
    outcome(
        csv.lines().count() == rows.len() + 1 && max_gap > 1e-6 && no_paper_column,
        format!(
            "validation on set 1 completed ({}); table 1 as-printed max gap {max_gap:.3e} over {} cells; \
             table 3 carries no reference column",
            summaries.join(", "),
            gaps.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut solved = Solved::new();
    let titles = [
        "table 4 reproduction",
        "oracle equivalence",
        "Coulomb limit",
        "reduction identities",
        "NUFA residuals",
        "wavefunction suite",
        "monotonic trends",
        "errata adjudication report",
    ];
    let results = vec![
        table4_reproduction(&mut solved),
        oracle_equivalence(&mut solved),
        coulomb_limit(&mut solved),
        reductions(&mut solved),
        residuals(&solved),
        wavefunctions(),
        trends(),
        errata_report(),
    ];

    let mut ok = true;
    for (i, (title, o)) in titles.iter().zip(&results).enumerate() {
        let id = i as u8 + 1;
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (o.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        ok &= o.pass != known;
        println!("criterion {id} {tag}: {title}: {}", o.detail);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
