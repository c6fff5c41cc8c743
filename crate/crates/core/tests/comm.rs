use std::collections::BTreeSet;

use ens_core::behavior::BellFunctional;
use ens_core::boxgen::{box3, deterministic_box, local_deterministic_boxes, pr_box};
use ens_core::comm::{
    build_f, comm_visibility, diagonal_box, enumerate_strategies, lhvd_optimum, lhvd_value,
    min_dit, strategy_behavior, strategy_behaviors, CommStrategy,
};
use ens_core::polytope::{is_extremal, maximize_functional};
use ens_core::rational::{frac, int, one};
use ens_core::{canonical_form, Behavior, Scenario};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GUARD: u128 = 1_000_000;

fn random_functional(s: Scenario, rng: &mut ChaCha8Rng) -> BellFunctional {
    let c = (0..s.table_len())
        .map(|_| int(rng.gen_range(-5..=5)))
        .collect();
    BellFunctional::new(s, c).unwrap()
}

#[test]
fn one_message_gives_the_local_boxes() {
    let s = Scenario::new(3, 3, 2, 2).unwrap();
    let strategies: BTreeSet<_> = strategy_behaviors(s, 1, GUARD)
        .unwrap()
        .into_iter()
        .collect();
    let local: BTreeSet<_> = local_deterministic_boxes(s, 1 << 10)
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(strategies, local);
    assert_eq!(
        strategy_behaviors(Scenario::new(2, 2, 2, 2).unwrap(), 1, GUARD)
            .unwrap()
            .len(),
        16
    );
}

#[test]
fn strategy_sets_nest() {
    let s = Scenario::new(3, 3, 2, 2).unwrap();
    let d2: BTreeSet<_> = strategy_behaviors(s, 2, GUARD)
        .unwrap()
        .into_iter()
        .collect();
    let d3: BTreeSet<_> = strategy_behaviors(s, 3, GUARD)
        .unwrap()
        .into_iter()
        .collect();
    assert!(d2.is_subset(&d3));
    // three messages reveal Alice's input
    assert_eq!(d3.len(), 8 * 8 * 8 * 8);
}

#[test]
fn every_strategy_is_normalized() {
    let s = Scenario::new(2, 3, 2, 3).unwrap();
    for st in enumerate_strategies(s, 2, GUARD).unwrap() {
        let b = strategy_behavior(&st).unwrap();
        assert!(!b.validate().has_normalization_violation());
    }
}

#[test]
fn invalid_strategy_is_rejected() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    let st = CommStrategy {
        scenario: s,
        d: 2,
        alice_out: vec![0, 0],
        message: vec![0, 2],
        bob_out: vec![vec![0, 0], vec![0, 0]],
    };
    assert!(strategy_behavior(&st).is_err());
}

#[test]
fn bit_simulates_pr() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    // Alice outputs c and sends x; Bob answers c xor x y
    let strategy = |c: usize| CommStrategy {
        scenario: s,
        d: 2,
        alice_out: vec![c, c],
        message: vec![0, 1],
        bob_out: vec![vec![c, c], vec![c, 1 - c]],
    };
    let b0 = strategy_behavior(&strategy(0)).unwrap();
    let b1 = strategy_behavior(&strategy(1)).unwrap();
    assert!(b0.validate().has_signaling_violation());
    let mix = Behavior::combine(&[(frac(1, 2), &b0), (frac(1, 2), &b1)]).unwrap();
    assert_eq!(mix, diagonal_box(2).unwrap());
    assert_eq!(min_dit(&pr_box(), 2, GUARD).unwrap().d, Some(2));
    let local = deterministic_box(s, &[1, 0], &[0, 1]).unwrap();
    assert_eq!(min_dit(&local, 2, GUARD).unwrap().d, Some(1));
}

#[test]
fn f_generalizes_chsh() {
    let f = build_f(2).unwrap();
    assert!(f.coefficients().iter().all(|c| *c == one() || *c == -one()));
    assert_eq!(
        f.coefficients().iter().filter(|c| **c == one()).count(),
        2 * 4
    );
    assert_eq!(lhvd_value(&f, 1, GUARD).unwrap(), int(2));
    assert_eq!(f.evaluate(&diagonal_box(2).unwrap()).unwrap(), int(4));
    assert_eq!(
        canonical_form(&diagonal_box(2).unwrap()).unwrap(),
        canonical_form(&pr_box()).unwrap()
    );
    assert!(is_extremal(&diagonal_box(4).unwrap()).unwrap());
}

#[test]
fn diagonal_box_needs_m_messages() {
    let p = diagonal_box(3).unwrap();
    let r = min_dit(&p, 3, GUARD).unwrap();
    assert_eq!(r.d, Some(3));
    let (d, witness) = r.witness.unwrap();
    assert_eq!(d, 2);
    assert!(witness.verify(&p, &strategy_behaviors(p.scenario(), 2, GUARD).unwrap()));
    assert_eq!(comm_visibility(&p, 2, GUARD).unwrap(), frac(11, 15));
    assert_eq!(comm_visibility(&p, 3, GUARD).unwrap(), one());
}

#[test]
fn fixture_needs_communication() {
    let b = box3();
    let r = min_dit(&b, 1, GUARD).unwrap();
    assert_eq!(r.d, None);
    let (_, witness) = r.witness.unwrap();
    assert!(witness.verify(&b, &strategy_behaviors(b.scenario(), 1, GUARD).unwrap()));
}

#[test]
fn visibility_grows_with_the_alphabet() {
    let b = pr_box();
    let v1 = comm_visibility(&b, 1, GUARD).unwrap();
    let v2 = comm_visibility(&b, 2, GUARD).unwrap();
    assert!(v1 <= v2);
    assert_eq!(v2, one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn greedy_bob_matches_brute_force(seed in any::<u64>(), pick in 0usize..2, d in 1usize..=2) {
        let s = [Scenario::new(2, 2, 2, 2).unwrap(), Scenario::new(3, 3, 2, 2).unwrap()][pick];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_functional(s, &mut rng);
        let (value, strategy) = lhvd_optimum(&f, d, GUARD).unwrap();
        let all = strategy_behaviors(s, d, GUARD).unwrap();
        let (brute, _) = maximize_functional(&f, &all).unwrap();
        prop_assert_eq!(&value, &brute);
        prop_assert_eq!(f.evaluate(&strategy_behavior(&strategy).unwrap()).unwrap(), value.clone());
        if d == 2 {
            prop_assert!(lhvd_value(&f, 1, GUARD).unwrap() <= value);
        }
    }
}
