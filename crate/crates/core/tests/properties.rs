use costsem_core::algol::{check_cmd, store_matches, trace_cmd, CmdOutcome, MaTy, PosTy, State};
use costsem_core::harness::{
    differential_ma, differential_stlc, fuzz_campaign, gen_ma, gen_stlc, GenConfig, Language, Verdict,
};
use costsem_core::kernel::{comp_bind, comp_step};
use costsem_core::lift::{lift_bind, lift_step, observe, run, Lift, OBSERVATION_BOUND};
use costsem_core::stlc::{check, trace, Ty};
use costsem_core::surface::{parse_ma_cmd, parse_stlc, print_cmd, print_stlc};
use costsem_core::{Comp, Cost, Phase};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stlc_cfg(seed: u64) -> GenConfig {
    GenConfig { seed, max_size: 30, max_sig: 0, fuel: 100_000 }
}

fn ma_cfg(seed: u64) -> GenConfig {
    GenConfig { seed, max_size: 30, max_sig: 3, fuel: 20_000 }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sig_of(store: &[costsem_core::algol::Exp]) -> Vec<PosTy> {
    store
        .iter()
        .map(|v| {
            costsem_core::algol::check_exp(&[], &[], v)
                .and_then(|t| t.positive())
                .expect("store cells hold positive values")
        })
        .collect()
}

fn delayed(delays: u8, cost: u64, v: u8) -> Lift<u8> {
    let mut e = Lift::Now(Cost(cost), v);
    for _ in 0..delays {
        let inner = e.clone();
        e = Lift::later(move || inner.clone());
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_programs_typecheck(seed in any::<u64>()) {
        let t = gen_stlc(&stlc_cfg(seed), &mut rng(seed));
        prop_assert_eq!(check(&[], &t), Some(Ty::Bool));
        prop_assert!(t.size() <= 30);
        let m = gen_ma(&ma_cfg(seed), &mut rng(seed));
        prop_assert_eq!(check_cmd(&[], &[], &m), Some(MaTy::Bool));
        prop_assert!(m.size() <= 30);
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let t = gen_stlc(&stlc_cfg(seed), &mut rng(seed));
        prop_assert_eq!(parse_stlc(&print_stlc(&t)).unwrap(), t);
        let m = gen_ma(&ma_cfg(seed), &mut rng(seed));
        prop_assert_eq!(parse_ma_cmd(&print_cmd(&m)).unwrap(), m);
    }

    #[test]
    fn stlc_steps_preserve_types(seed in any::<u64>()) {
        let t = gen_stlc(&stlc_cfg(seed), &mut rng(seed));
        let (states, _) = trace(&t, 2_000);
        for s in &states {
            prop_assert_eq!(check(&[], s), Some(Ty::Bool));
        }
    }

    /// Every machine state is well typed against its store, and a closed
    /// program leaves the store as it found it.
    #[test]
    fn ma_steps_preserve_types_and_pop_cells(seed in any::<u64>()) {
        let m = gen_ma(&ma_cfg(seed), &mut rng(seed));
        let (states, outcome) = trace_cmd(&State::new(Vec::new(), m), 2_000);
        for s in &states {
            let sig = sig_of(&s.store);
            prop_assert!(store_matches(&sig, &s.store));
            prop_assert_eq!(check_cmd(&sig, &[], &s.cmd), Some(MaTy::Bool));
        }
        if let CmdOutcome::Converged { store, .. } = outcome {
            prop_assert!(store.is_empty());
        }
    }

    #[test]
    fn intensional_match_implies_extensional_match(seed in any::<u64>()) {
        let t = gen_stlc(&stlc_cfg(seed), &mut rng(seed));
        if differential_stlc(&t, Phase::Intensional, 100_000).verdict == Verdict::Match {
            prop_assert_eq!(differential_stlc(&t, Phase::Extensional, 100_000).verdict, Verdict::Match);
        }
        let m = gen_ma(&ma_cfg(seed), &mut rng(seed));
        if differential_ma(&m, Phase::Intensional, 20_000).verdict == Verdict::Match {
            prop_assert_eq!(differential_ma(&m, Phase::Extensional, 20_000).verdict, Verdict::Match);
        }
    }

    #[test]
    fn comp_bind_adds_costs(c1 in 0u64..1000, c2 in 0u64..1000, v in any::<u8>()) {
        let e = comp_bind(Comp::new(Cost(c1), v), |x| Comp::new(Cost(c2), x.wrapping_add(1)));
        prop_assert_eq!(e, Comp::new(Cost(c1 + c2), v.wrapping_add(1)));
        prop_assert_eq!(comp_step(Cost(c1), Comp::new(Cost(c2), v)).cost, Cost(c1 + c2));
    }

    #[test]
    fn lift_bind_adds_delays_and_costs(d1 in 0u8..20, d2 in 0u8..20, c1 in 0u64..50, c2 in 0u64..50, c in 0u64..50) {
        let e = lift_step(Cost(c), lift_bind(delayed(d1, c1, 3), move |x| delayed(d2, c2, x + 1)));
        let seen = observe(e, OBSERVATION_BOUND);
        prop_assert_eq!(
            seen,
            costsem_core::lift::Observation::Converged { delays: (d1 + d2) as u64, cost: Cost(c + c1 + c2), value: 4 }
        );
    }

    #[test]
    fn fuel_is_monotone(d in 0u8..30, n in 0u64..40, extra in 0u64..40) {
        let small = run(delayed(d, 1, 7), n);
        if small.is_converged() {
            prop_assert_eq!(run(delayed(d, 1, 7), n + extra), small);
        } else {
            prop_assert!(n < d as u64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn campaigns_are_reproducible(seed in any::<u64>()) {
        let cfg = ma_cfg(seed);
        prop_assert_eq!(
            fuzz_campaign(&cfg, Language::Ma, Phase::Intensional, 50),
            fuzz_campaign(&cfg, Language::Ma, Phase::Intensional, 50)
        );
    }
}

#[test]
fn empty_campaign() {
    let s = fuzz_campaign(&GenConfig::default(), Language::Stlc, Phase::Intensional, 0);
    assert_eq!((s.count, s.matches, s.mismatches), (0, 0, 0));
    assert!(s.failures.is_empty());
}

#[test]
fn documented_ma_costs() {
    let cases = [
        ("ret tt", 0),
        ("dcl a := ff in while[a] { ret () }", 2),
        ("dcl a := tt in while[a] { bnd u <- cmd { set[a](ff) }; ret () }", 6),
    ];
    for (src, expected) in cases {
        let m = parse_ma_cmd(src).unwrap();
        // The stepper is the oracle; the denotation is checked against it.
        let (_, op) = trace_cmd(&State::new(Vec::new(), m.clone()), 1_000);
        let CmdOutcome::Converged { cost, .. } = op else { panic!("{src} diverged") };
        assert_eq!(cost, Cost(expected), "{src}");
        let r = differential_ma(&m, Phase::Intensional, 1_000);
        assert_eq!(r.verdict, Verdict::Match, "{src}");
        assert_eq!(r.denotational.cost(), Some(cost));
    }
}
