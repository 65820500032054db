//! Randomised checks of the closed forms: special-case reductions,
//! internal consistency of the quantised exponents, and monotone trends.

use ehp_core::nufa::{quantize, scaled_residuals};
use ehp_core::potential::{dimensionless, to_nufa};
use ehp_core::spectra::{
    coulomb_energy, eckart_energy, ehp_energy, hellmann_energy, yukawa_energy, QuantumNumbers,
    Variant,
};
use ehp_core::{Error, PhysicalContext, PotentialParams};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn ctx_strategy() -> impl Strategy<Value = PhysicalContext> {
    (0.5f64..2.0, 0.25f64..2.0).prop_map(|(h, m)| PhysicalContext::natural(h, m).unwrap())
}

fn qn_strategy() -> impl Strategy<Value = QuantumNumbers> {
    (0u32..4, 0u32..4).prop_map(|(n, l)| QuantumNumbers::new(n, l))
}

fn rederived(p: &PotentialParams, qn: QuantumNumbers, ctx: &PhysicalContext) -> Result<f64, Error> {
    ehp_energy(p, qn, ctx, Variant::Rederived).map(|l| l.energy)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn reduces_to_hellmann(c in 0.2f64..6.0, d in -3.0f64..3.0, alpha in 0.001f64..0.2,
                           qn in qn_strategy(), ctx in ctx_strategy()) {
        let special = hellmann_energy(c, d, alpha, qn, &ctx);
        prop_assume!(special.is_ok());
        let p = PotentialParams::hellmann(c, d, alpha).unwrap();
        let e = rederived(&p, qn, &ctx).unwrap();
        prop_assert!(rel(e, special.unwrap().energy) <= 1e-12);
    }

    #[test]
    fn reduces_to_eckart(a in 0.5f64..20.0, b in -0.05f64..3.0, alpha in 0.05f64..1.0,
                         qn in qn_strategy(), ctx in ctx_strategy()) {
        let special = eckart_energy(a, b, alpha, qn, &ctx, Variant::Rederived);
        prop_assume!(special.is_ok());
        let p = PotentialParams::eckart(a, b, alpha).unwrap();
        let e = rederived(&p, qn, &ctx).unwrap();
        prop_assert!(rel(e, special.unwrap().energy) <= 1e-12);
        // the printed route reduces the same way
        let pe = ehp_energy(&p, qn, &ctx, Variant::AsPrinted).unwrap().energy;
        let ps = eckart_energy(a, b, alpha, qn, &ctx, Variant::AsPrinted).unwrap().energy;
        prop_assert!(rel(pe, ps) <= 1e-12);
    }

    #[test]
    fn reduces_to_yukawa(d in -8.0f64..-0.2, alpha in 0.005f64..0.5,
                         qn in qn_strategy(), ctx in ctx_strategy()) {
        let special = yukawa_energy(d, alpha, qn, &ctx);
        prop_assume!(special.is_ok());
        let p = PotentialParams::yukawa(d, alpha).unwrap();
        let e = rederived(&p, qn, &ctx).unwrap();
        prop_assert!(rel(e, special.unwrap().energy) <= 1e-12);
    }

    #[test]
    fn reduces_to_coulomb(c in 0.2f64..6.0, qn in qn_strategy(), ctx in ctx_strategy()) {
        // the screening shift is c * alpha, far below rounding at this alpha
        let p = PotentialParams::new(0.0, 0.0, c, 0.0, 1e-15).unwrap();
        let e = rederived(&p, qn, &ctx).unwrap();
        let special = coulomb_energy(c, qn, &ctx).unwrap().energy;
        prop_assert!(rel(e, special) <= 1e-12);
    }

    #[test]
    fn quantised_exponents_are_consistent(a in -1.0f64..5.0, b in -0.05f64..2.0, c in 0.0f64..5.0,
                                          d in -3.0f64..3.0, alpha in 0.001f64..0.5,
                                          qn in qn_strategy(), ctx in ctx_strategy()) {
        let p = PotentialParams::new(a, b, c, d, alpha).unwrap();
        let coeffs = to_nufa(&dimensionless(&p, &ctx, qn.l));
        let sol = quantize(&coeffs, qn.n);
        prop_assume!(sol.is_ok());
        let sol = sol.unwrap();
        let (r6, r7) = scaled_residuals(&sol, &coeffs);
        prop_assert!(r6 <= 1e-10 && r7 <= 1e-10, "residuals {r6} {r7}");
        prop_assert!(sol.lambda > 0.0 && sol.nu >= 0.5);
    }

    #[test]
    fn deeper_wells_bind_harder(a in 0.0f64..3.0, b in 0.0f64..1.0, c in 0.5f64..4.0,
                                d in -2.0f64..1.0, alpha in 0.005f64..0.2,
                                qn in qn_strategy()) {
        let ctx = PhysicalContext::atomic();
        let p = PotentialParams::new(a, b, c, d, alpha).unwrap();
        for name in ["A", "C"] {
            let v = p.get(name).unwrap();
            let h = 1e-5 * v.abs().max(1.0);
            let up = rederived(&p.with(name, v + h).unwrap(), qn, &ctx);
            let down = rederived(&p.with(name, v - h).unwrap(), qn, &ctx);
            if let (Ok(up), Ok(down)) = (up, down) {
                let slope = (up - down) / (2.0 * h);
                prop_assert!(slope <= 1e-9 * up.abs().max(1.0), "dE/d{name} = {slope}");
            }
        }
    }

    #[test]
    fn radial_excitation_raises_energy(a in 0.0f64..3.0, b in 0.0f64..1.0, c in 0.5f64..4.0,
                                       d in -2.0f64..1.0, alpha in 0.005f64..0.2,
                                       n in 0u32..5, l in 0u32..4) {
        let ctx = PhysicalContext::atomic();
        let p = PotentialParams::new(a, b, c, d, alpha).unwrap();
        let upper = rederived(&p, QuantumNumbers::new(n + 1, l), &ctx);
        prop_assume!(upper.is_ok());
        let lower = rederived(&p, QuantumNumbers::new(n, l), &ctx).unwrap();
        prop_assert!(upper.unwrap() > lower);
    }
}

#[test]
fn small_screening_matches_first_order_shift() {
    // first-order perturbation of the Coulomb level by the Greene-Aldrich
    // terms: -C alpha / 2 from 1/r and k gamma alpha <1/r> from the barrier,
    // with <1/r> = C / (2 k N^2)
    let ctx = PhysicalContext::natural(1.0, 0.5).unwrap();
    let (c, alpha) = (2.0, 1e-6);
    for (n, l) in [(0, 0), (1, 0), (0, 1), (2, 1), (3, 3)] {
        let qn = QuantumNumbers::new(n, l);
        let e = hellmann_energy(c, 0.0, alpha, qn, &ctx).unwrap().energy;
        let big_n = (n + l + 1) as f64;
        let gamma = (l * (l + 1)) as f64;
        let want = -1.0 / (big_n * big_n) + c * alpha * (gamma / (2.0 * big_n * big_n) - 0.5);
        assert!((e - want).abs() <= 1e-10, "{qn:?}: {e} vs {want}");
    }
}

#[test]
fn repulsive_yukawa_has_no_level() {
    let ctx = PhysicalContext::atomic();
    let p = PotentialParams::yukawa(1.0, 0.1).unwrap();
    assert!(matches!(
        ehp_energy(&p, QuantumNumbers::new(0, 0), &ctx, Variant::Rederived),
        Err(Error::NoBoundState { n: 0 })
    ));
}
