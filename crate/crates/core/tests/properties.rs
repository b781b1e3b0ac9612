mod common;

use common::{any_expression, rel_err, rng, smooth_expression, ulp};
use newton_certify::{
    certified_solve, damped_transform, detect_cycle, newton_solve, newton_step, parse, verify_sign, Interval,
    Side, SignRelation, SolverConfig, Termination, Verdict,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 512,
        rng_seed: RngSeed::Fixed(0x6e65_7774_6f6e),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>()) {
        let e = any_expression(&mut rng(seed), 4);
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        for x in [-1.3, 0.4, 2.7] {
            match (e.eval(x), back.eval(x)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
                (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
            }
        }
    }

    #[test]
    fn interval_extension_encloses_point_values(
        seed in any::<u64>(),
        a in -5.0f64..5.0,
        log_w in -8.0f64..1.0,
        ts in proptest::collection::vec(0.0f64..=1.0, 8),
    ) {
        let e = any_expression(&mut rng(seed), 4);
        let domain = Interval::new(a, a + 10f64.powf(log_w)).unwrap();
        if let Ok(enc) = e.eval_interval(domain) {
            for t in ts.into_iter().chain([0.0, 1.0]) {
                let x = (domain.lo() + t * domain.width()).clamp(domain.lo(), domain.hi());
                if let Ok(v) = e.eval(x) {
                    prop_assert!(enc.contains(v), "{} at {}: {} not in {}", e, x, v, enc);
                }
            }
        }
    }

    #[test]
    fn symbolic_and_jet_derivatives_agree(seed in any::<u64>(), x in -3.0f64..3.0) {
        let e = smooth_expression(&mut rng(seed), 4);
        let d1 = e.differentiate();
        let d2 = d1.differentiate();
        if let (Ok(jet), Ok(s1), Ok(s2)) = (e.eval_jet2(x), d1.eval(x), d2.eval(x)) {
            prop_assert!(rel_err(s1, jet.d1) <= 1e-9, "{}: {} vs {}", e, s1, jet.d1);
            prop_assert!(rel_err(s2, jet.d2) <= 1e-9, "{}: {} vs {}", e, s2, jet.d2);
        }
    }

    // ulps of the largest operand
    #[test]
    fn mean_of_damped_transform_is_newton_step(seed in any::<u64>(), x in -4.0f64..4.0) {
        let e = smooth_expression(&mut rng(seed), 4);
        if let (Ok(n), Ok(big_f)) = (newton_step(&e, x, 1e-6), damped_transform(&e, x, 1e-6)) {
            let scale = n.abs().max(x.abs()).max(big_f.abs());
            prop_assert!(((x + big_f) / 2.0 - n).abs() <= 4.0 * ulp(scale), "{} at {}", e, x);
        }
    }

    #[test]
    fn decided_verdicts_survive_a_larger_budget(
        seed in any::<u64>(),
        a in -3.0f64..3.0,
        w in 0.01f64..2.0,
        budget in 1usize..64,
    ) {
        let e = smooth_expression(&mut rng(seed), 3);
        let iv = Interval::new(a, a + w).unwrap();
        for rel in [SignRelation::Ge0, SignRelation::Gt0, SignRelation::Ne0] {
            let small = verify_sign(&e, iv, rel, budget).unwrap();
            let large = verify_sign(&e, iv, rel, budget * 4).unwrap();
            if small.verdict != Verdict::Unknown {
                prop_assert_eq!(small.verdict, large.verdict);
            }
            if let Some(w) = large.witness {
                prop_assert!(iv.contains(w));
                prop_assert!(e.eval(w).map_or(true, |v| !rel.holds(v)));
            }
        }
    }

    #[test]
    fn certified_runs_are_monotone_and_converge(
        c in proptest::collection::vec(-3.0f64..3.0, 4),
        lo in -6.0f64..-0.5,
        hi in 0.5f64..6.0,
    ) {
        // cubic with a sign change across [lo, hi]
        let text = format!("x^3*{}+x^2*{}+x*{}+{}", c[0], c[1], c[2], c[3]);
        let f = parse(&text).unwrap();
        let bracket = Interval::new(lo, hi).unwrap();
        if f.eval(lo).unwrap() * f.eval(hi).unwrap() >= 0.0 {
            return Ok(());
        }
        let Ok(run) = certified_solve(&f, bracket, &SolverConfig::default(), 1024) else { return Ok(()) };
        if run.certificate.verdict == Verdict::Certified {
            let t = &run.trace;
            prop_assert_eq!(&t.termination, &Termination::Converged, "{} on {} {:?}", text, bracket, t.iterates);
            let monotone = match run.certificate.side {
                Side::Left => t.is_nondecreasing(),
                Side::Right => t.is_nonincreasing(),
            };
            prop_assert!(monotone, "{} on {} {:?}", text, bracket, t.iterates);
            let r = f.eval(t.final_x).unwrap();
            prop_assert!(r.abs() <= 10.0 * SolverConfig::default().ftol, "{} on {}: f(final) = {:e}", text, bracket, r);
        } else {
            prop_assert_eq!(&run.trace.termination, &Termination::Refused);
            prop_assert_eq!(run.trace.iterates.len(), 1);
        }
    }

    #[test]
    fn cycle_detector_ignores_converging_windows(x in -10.0f64..10.0, r in 0.0f64..0.9) {
        let cfg = SolverConfig::default();
        let w: Vec<f64> = (0..8).map(|k| x + r.powi(k + 40)).collect();
        if w.windows(2).any(|p| cfg.xtol * p[1].abs().max(1.0) >= (p[1] - p[0]).abs()) {
            prop_assert_eq!(detect_cycle(&w, cfg.cycle_tol), None);
        }
    }
}

#[test]
fn trace_json_round_trip() {
    let f = parse("x^3-2*x+2").unwrap();
    let t = newton_solve(&f, -400.0, &SolverConfig::default(), None).unwrap();
    let back: newton_certify::IterationTrace = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(back, t);
}
