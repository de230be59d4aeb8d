use num_bigint::BigInt;
use proptest::prelude::*;

use symbell::derived::{critical_efficiency, xy_lower_bound};
use symbell::fwsolver::{fw_minimize, FWConfig};
use symbell::localbound::{
    evaluate_strategies, exact_local_bound, heuristic_local_bound, int_functional, BoundOptions,
};
use symbell::lucas4::RootTwoScalar;
use symbell::necklaces::{canonical_necklace, enumerate_necklaces, necklace_count, shift_strategy};
use symbell::symcorr::{
    class_of_index, ghz_reduced, project_strategy, IndexClass, ScenarioParams, Strategy as Signs,
};

fn params() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4, 2usize..=6)
}

fn signs(m: usize) -> impl Strategy<Value = Signs> {
    proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m)
        .prop_map(|s| Signs::new(s).unwrap())
}

fn scenario(n: usize, m: usize) -> ScenarioParams {
    ScenarioParams::new(n, m).unwrap()
}

fn root_two() -> impl Strategy<Value = RootTwoScalar> {
    (-50i64..=50, -50i64..=50, 0u32..=3).prop_map(|(a, b, k)| RootTwoScalar::new(a, b, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_is_invariant_under_rotating_indices((n, m) in params(), seed in any::<u64>()) {
        let p = scenario(n, m);
        let idx: Vec<usize> = (0..n).map(|k| ((seed >> (4 * k)) as usize) % m).collect();
        let base = class_of_index(&idx, &p).unwrap();
        let mut rotated = idx.clone();
        rotated.rotate_left(1);
        prop_assert_eq!(class_of_index(&rotated, &p).unwrap(), base);
        if let IndexClass::Class { class, .. } = base {
            prop_assert!(class < p.dim());
        }
    }

    #[test]
    fn projection_is_permutation_invariant((n, m) in params(), strat in proptest::collection::vec(signs(6), 4)) {
        let st: Vec<Signs> = strat[..n]
            .iter()
            .map(|s| Signs::new(s.signs()[..m].to_vec()).unwrap())
            .collect();
        let p = scenario(n, m);
        let v = project_strategy(&st, &p).unwrap();
        let mut rev = st.clone();
        rev.reverse();
        prop_assert_eq!(project_strategy(&rev, &p).unwrap(), v.clone());
        let neg: Vec<Signs> = st.iter().enumerate()
            .map(|(k, s)| if k < 2 { s.negated() } else { s.clone() })
            .collect();
        prop_assert_eq!(project_strategy(&neg, &p).unwrap(), v);
    }

    #[test]
    fn necklace_canonical_form_is_orbit_invariant(m in 2usize..=10, word in any::<u64>(), k in 0usize..10) {
        let s = Signs::from_word(word & ((1 << m) - 1), m);
        let c = canonical_necklace(&s);
        prop_assert_eq!(canonical_necklace(&shift_strategy(&s, k % m)), c.clone());
        prop_assert_eq!(canonical_necklace(&s.negated()), c.clone());
        prop_assert_eq!(canonical_necklace(c.rep()), c);
    }

    #[test]
    fn exact_bound_dominates_every_tuple_and_heuristic(
        (n, m) in (2usize..=4, 2usize..=5),
        coeffs in proptest::collection::vec(-6i64..=6, 3),
        strat in proptest::collection::vec(signs(5), 4),
        seed in any::<u64>(),
    ) {
        let p = scenario(n, m);
        let f = int_functional(p, &coeffs[..p.dim()]).unwrap();
        let exact = exact_local_bound(&f, &BoundOptions::default()).unwrap();
        for w in &exact.witnesses {
            prop_assert_eq!(evaluate_strategies(&f, w).unwrap(), exact.bound.clone());
        }
        let st: Vec<Signs> = strat[..n]
            .iter()
            .map(|s| Signs::new(s.signs()[..m].to_vec()).unwrap())
            .collect();
        prop_assert!(evaluate_strategies(&f, &st).unwrap() <= exact.bound);
        let heur = heuristic_local_bound(&f, seed, 3).unwrap();
        prop_assert!(heur.bound <= exact.bound);
        prop_assert!(exact.bound >= BigInt::from(0));
    }

    #[test]
    fn scaling_functional_scales_bound((n, m) in (2usize..=3, 2usize..=5), coeffs in proptest::collection::vec(-6i64..=6, 3), c in 1i64..=7) {
        let p = scenario(n, m);
        let d = p.dim();
        let f = int_functional(p, &coeffs[..d]).unwrap();
        let g = int_functional(p, &coeffs[..d].iter().map(|x| x * c).collect::<Vec<_>>()).unwrap();
        let opts = BoundOptions::default();
        prop_assert_eq!(
            exact_local_bound(&g, &opts).unwrap().bound,
            exact_local_bound(&f, &opts).unwrap().bound * c
        );
    }

    #[test]
    fn frank_wolfe_objective_is_monotone((n, m) in (2usize..=3, 2usize..=5), v in 0.1f64..1.0) {
        let target = ghz_reduced(&scenario(n, m)).map(|x| v * x);
        let res = fw_minimize(&target, &FWConfig::default()).unwrap();
        for w in res.objective_trace.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-18);
        }
        prop_assert!(res.gap >= -1e-12);
        let total: f64 = res.atoms.iter().map(|a| a.weight).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn root_two_ring_laws(a in root_two(), b in root_two(), c in root_two()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!(((&a * &b).to_f64() - a.to_f64() * b.to_f64()).abs() <= 1e-9 * (1.0 + (a.to_f64() * b.to_f64()).abs()));
        let norm = &a * &a.conj();
        let (_, irrational, _) = norm.parts();
        prop_assert_eq!(irrational, &BigInt::from(0));
    }

    #[test]
    fn efficiency_is_monotone_in_visibility(v1 in 0.02f64..0.9, dv in 0.001f64..0.05, n in 3usize..=10) {
        let v2 = (v1 + dv).min(0.99);
        let a = critical_efficiency(v1, n).unwrap();
        let b = critical_efficiency(v2, n).unwrap();
        prop_assert!(a.eta_crit <= b.eta_crit + 1e-12);
        prop_assert!(a.residual.abs() <= 1e-12 && b.residual.abs() <= 1e-12);
        prop_assert!(a.eta_crit > 0.0 && a.eta_crit <= 1.0);
    }

    #[test]
    fn xy_bound_grows_with_inputs(v in 0.05f64..0.9, m in 3usize..200, n in 3usize..8) {
        prop_assert!(xy_lower_bound(v, m, n) <= xy_lower_bound(v, m + 1, n) + 1e-15);
        prop_assert!(xy_lower_bound(v, m, n) <= v);
    }
}

#[test]
fn necklace_enumeration_matches_count() {
    for m in 2..=14 {
        let list = enumerate_necklaces(m).unwrap();
        assert_eq!(BigInt::from(list.len()), BigInt::from(necklace_count(m)));
        let mut reps: Vec<_> = list.iter().map(|n| n.rep().clone()).collect();
        reps.dedup();
        assert_eq!(reps.len(), list.len());
    }
}
