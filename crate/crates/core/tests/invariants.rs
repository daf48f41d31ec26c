use proptest::prelude::*;
use pt_core::aim::{AimProblem, Rescaled, ScanOptions};
use pt_core::dirac::{map_spin_to_pspin, nr_limit, pspin_residual, spin_residual, DiracContext, NrLimitCase, Residual, SpecialCase};
use pt_core::jet::SeriesJet;
use pt_core::molecules::{parse_molecules, write_molecules};
use pt_core::schrodinger::{energy_nr, Branch, NrContext, PtAimSystem, PtPotential, ScanVariable, SpectralParams};
use pt_core::thermo::ThermoContext;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn jet(coeffs: Vec<f64>) -> SeriesJet<f64> {
    SeriesJet::new(0.3, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_product_commutes_and_distributes(
        a in prop::collection::vec(-2.0f64..2.0, 6),
        b in prop::collection::vec(-2.0f64..2.0, 6),
        c in prop::collection::vec(-2.0f64..2.0, 6),
    ) {
        let (a, b, c) = (jet(a), jet(b), jet(c));
        let ab = a.checked_mul(&b).unwrap();
        let ba = b.checked_mul(&a).unwrap();
        for (x, y) in ab.coeffs().iter().zip(ba.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-14);
        }
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn jet_product_rule(
        a in prop::collection::vec(-2.0f64..2.0, 7),
        b in prop::collection::vec(-2.0f64..2.0, 7),
    ) {
        let (a, b) = (jet(a), jet(b));
        let lhs = a.checked_mul(&b).unwrap().derivative();
        let rhs = a.derivative().checked_mul(&b).unwrap()
            .checked_add(&a.checked_mul(&b.derivative()).unwrap()).unwrap();
        // the top coefficient of a derivative is unknown at order K; compare below it
        let k = lhs.order();
        for j in 0..k {
            prop_assert!((lhs.coeffs()[j] - rhs.coeffs()[j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn potential_is_even_in_alpha(a in -10.0f64..0.0, b in 0.0f64..10.0, alpha in 0.1f64..3.0, r in 0.01f64..5.0) {
        let p = PtPotential::new(a, b, alpha).unwrap();
        let m = PtPotential { a, b, alpha: -alpha };
        prop_assert_eq!(p.value(r).unwrap(), m.value(r).unwrap());
    }

    #[test]
    fn closed_form_matches_k1_route(a in -20.0f64..-0.1, b in 0.0f64..10.0, alpha in 0.2f64..2.0, l in 0u32..6, n in 0u32..8) {
        let pot = PtPotential::new(a, b, alpha).unwrap();
        let ctx = NrContext::natural(1.0).unwrap();
        let e17 = energy_nr(&pot, &ctx, n, l).unwrap().energy;
        let p = SpectralParams::new(&pot, &ctx, l, Branch::Growing).unwrap();
        let e16 = p.energy_from_k1(p.k1(n));
        prop_assert!(close(e17, e16, 1e-13) || (e17 - e16).abs() <= 1e-13, "{} vs {}", e17, e16);
    }

    #[test]
    fn nr_limit_matches_schrodinger(a in -20.0f64..-0.1, b in 0.0f64..10.0, alpha in 0.2f64..2.0, mu in 0.3f64..5.0, l in 0u32..5, n in 0u32..6) {
        let pot = PtPotential::new(a, b, alpha).unwrap();
        let ctx = NrContext::natural(mu).unwrap();
        let e = energy_nr(&pot, &ctx, n, l).unwrap().energy;
        let lim = nr_limit(NrLimitCase::General { a, b, l }, mu, alpha, n).unwrap();
        prop_assert!(close(e, lim, 1e-12) || (e - lim).abs() <= 1e-12, "{} vs {}", e, lim);
    }

    #[test]
    fn spin_pspin_map(e in -6.0f64..6.0, a in -4.0f64..4.0, b in -4.0f64..4.0, kappa in -4i32..4, cs in -1.0f64..1.0, n in 0u32..4) {
        prop_assume!(kappa != 0);
        let pot = PtPotential::new(a, b, 1.0).unwrap();
        let ctx = DiracContext::new(5.0, kappa, n).unwrap().with_constants(0.0, cs);
        let (me, mctx, mpot) = map_spin_to_pspin(e, &ctx, &pot);
        prop_assume!(mctx.kappa != 0);
        match (spin_residual(e, &ctx, &pot), pspin_residual(me, &mctx, &mpot)) {
            (Residual::Value(x), Residual::Value(y)) => prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0)),
            (Residual::Complex, Residual::Complex) => {}
            other => prop_assert!(false, "domain mismatch {:?}", other),
        }
    }

    #[test]
    fn special_cases_reduce(e in -7.9f64..7.9, eta in 0.0f64..3.0, alpha in 0.3f64..2.0, n in 0u32..4) {
        let cases = [
            SpecialCase::SWavePseudoSpin { a: -2.0, b: 3.0, alpha },
            SpecialCase::SWaveSpin { a: -2.0, b: 3.0, alpha },
            SpecialCase::ReflectionlessPseudoSpin { eta, alpha },
            SpecialCase::ReflectionlessSpin { eta, alpha },
            SpecialCase::HyperbolicPseudoSpin { eta },
            SpecialCase::HyperbolicSpin { eta },
        ];
        for case in cases {
            let special = case.residual(e, 8.0, n);
            let general = case.general_residual(e, 8.0, n).unwrap();
            match (special, general) {
                (Residual::Value(x), Residual::Value(y)) => prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{:?}", case),
                (Residual::Complex, Residual::Complex) => {}
                other => prop_assert!(false, "{:?}: domain mismatch {:?}", case, other),
            }
        }
    }

    #[test]
    fn thermo_identities(zeta in 1.0f64..100.0, tau in 0.5f64..50.0, log_beta in -8.0f64..0.0) {
        let beta = log_beta.exp();
        let ctx = ThermoContext::new(zeta, tau).unwrap();
        let p = ctx.point(beta).unwrap();
        let s = p.ln_z + beta * p.u;
        prop_assert!(close(p.s, s, 1e-8) || (p.s - s).abs() <= 1e-10);
        let f = p.u - p.s / beta;
        prop_assert!(close(p.f, f, 1e-8) || (p.f - f).abs() <= 1e-10 / beta);
        prop_assert!(p.u.is_finite() && p.c.is_finite() && p.f.is_finite() && p.s.is_finite());
    }

    #[test]
    fn partition_grows_with_zeta(zeta in 0.5f64..100.0, dz in 0.01f64..5.0, tau in 0.5f64..50.0, log_beta in -8.0f64..0.0) {
        let beta = log_beta.exp();
        let z1 = ThermoContext::new(zeta, tau).unwrap().ln_partition_closed(beta).unwrap();
        let z2 = ThermoContext::new(zeta + dz, tau).unwrap().ln_partition_closed(beta).unwrap();
        prop_assert!(z2 > z1);
    }

    #[test]
    fn molecule_table_round_trips(rows in prop::collection::vec(("[A-Z][a-z]?[0-9]?", 1u32..99_999, 1u32..99_999), 0..12)) {
        let mut seen = std::collections::HashSet::new();
        let mut text = String::from("name,mu_amu,alpha_invA\n");
        for (name, mu, alpha) in &rows {
            if seen.insert(name.clone()) {
                text.push_str(&format!("{name},{}.{:05},{}.{:05}\n", mu / 1000, mu % 1000, alpha / 10_000, alpha));
            }
        }
        let parsed = parse_molecules(&text).unwrap();
        let mut out = Vec::new();
        write_molecules(&mut out, &parsed).unwrap();
        prop_assert_eq!(String::from_utf8(out).unwrap(), text.clone());
        prop_assert_eq!(parse_molecules(&text).unwrap(), parsed);
    }
}

/// Rescaling the independent variable leaves the termination roots in place.
#[test]
fn variable_rescaling_preserves_roots() {
    let pot = PtPotential::new(-12.0, 1.5, 0.9).unwrap();
    let ctx = NrContext::natural(1.0).unwrap();
    let sys = PtAimSystem::new(&pot, &ctx, 1, Branch::Growing).unwrap().scanning(ScanVariable::K1);
    let x0 = 1.3;
    let k = 8;
    let bracket = (sys.closed_form(3) - 5.0, sys.closed_form(0) + 1.0);
    let opts = ScanOptions { stability_tol: Some(1e-8), ..ScanOptions::default() };
    let plain = AimProblem::new(sys, x0, 2 * k + 8).unwrap().eigen_scan(bracket, k, 16, 1e-12, opts).unwrap();
    for factor in [0.5, 2.0, 3.7] {
        let scaled = AimProblem::new(Rescaled { inner: sys, factor }, x0 / factor, 2 * k + 8)
            .unwrap()
            .eigen_scan(bracket, k, 16, 1e-12, opts)
            .unwrap();
        let a: Vec<f64> = plain.converged_roots().map(|r| r.value).collect();
        let b: Vec<f64> = scaled.converged_roots().map(|r| r.value).collect();
        assert!(a.len() >= 4);
        for n in 0..4 {
            let want = sys.closed_form(n);
            assert!(a.iter().any(|x| close(*x, want, 1e-9)));
            assert!(b.iter().any(|x| close(*x, want, 1e-9)), "factor {factor}: {b:?} missing {want}");
        }
    }
}

/// Multiplying λ₀ and s₀ by one constant is not a symmetry of δ_k: the roots move.
#[test]
fn common_constant_scaling_moves_roots() {
    use pt_core::aim::{AimSystem, FnSystem};
    use pt_core::schrodinger::NrContext as Ctx;
    let pot = PtPotential::new(-12.0, 1.5, 0.9).unwrap();
    let sys = PtAimSystem::new(&pot, &Ctx::natural(1.0).unwrap(), 0, Branch::Growing)
        .unwrap()
        .scanning(ScanVariable::K2);
    let c = 3.0;
    let scaled = FnSystem {
        lambda0: move |p: f64, x0: f64, order: usize| Ok(AimSystem::lambda0(&sys, p, x0, order)?.scale(c)),
        s0: move |p: f64, x0: f64, order: usize| Ok(AimSystem::s0(&sys, p, x0, order)?.scale(c)),
    };
    let k = 8;
    let bracket = (1.2 * sys.params.k2(3) - 0.5, 0.5);
    let opts = ScanOptions { stability_tol: Some(1e-8 * (bracket.1 - bracket.0)), ..ScanOptions::default() };
    let scan = |report: pt_core::aim::AimScanReport<f64>| report.converged_roots().map(|r| r.value).collect::<Vec<_>>();
    let base = scan(AimProblem::for_depth(sys, k).unwrap().eigen_scan(bracket, k, 32, 1e-12, opts).unwrap());
    let moved = scan(AimProblem::for_depth(scaled, k).unwrap().eigen_scan(bracket, k, 32, 1e-12, opts).unwrap());
    for n in [1, 3] {
        let want = sys.params.k2(n);
        assert!(base.iter().any(|x| close(*x, want, 1e-9)), "{base:?}");
        assert!(!moved.iter().any(|x| close(*x, want, 1e-6)), "{moved:?}");
    }
}
