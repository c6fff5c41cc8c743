use ens_core::behavior::Violation;
use ens_core::boxgen::{box1, box2, box3, box5, pr_box};
use ens_core::comm::diagonal_box;
use ens_core::format::{from_json, from_text, parse_behavior, to_json, to_text};
use ens_core::rational::{frac, zero};
use ens_core::relabel::{group_order, orbit};
use ens_core::{apply_relabeling, canonical_form, classify, Behavior, Relabeling, Scenario};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ns_dimension_examples() {
    assert_eq!(Scenario::new(2, 2, 2, 2).unwrap().ns_dimension(), 8);
    assert_eq!(Scenario::new(3, 3, 3, 2).unwrap().ns_dimension(), 27);
    let s = Scenario::new(2, 3, 3, 4).unwrap();
    assert_eq!(s.ns_dimension(), s.transposed().ns_dimension());
    assert!(Scenario::new(1, 2, 2, 2).is_err());
}

#[test]
fn box1_validates_and_a_zeroed_entry_is_reported() {
    let b = box1();
    assert!(b.validate().is_ok());
    let mut table = b.table().to_vec();
    let i = table.iter().position(|p| *p != zero()).unwrap();
    table[i] = zero();
    let broken = Behavior::new(b.scenario(), table).unwrap();
    let report = broken.validate();
    assert!(report.has_normalization_violation());
    assert!(report.has_signaling_violation());
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::Normalization { .. })));
}

#[test]
fn uniform_box_is_valid() {
    for (x, y, a, b) in [(2, 2, 2, 2), (3, 3, 3, 2), (2, 3, 4, 2)] {
        let s = Scenario::new(x, y, a, b).unwrap();
        let u = Behavior::uniform(s);
        assert!(u.validate().is_ok());
        assert!(u.table().iter().all(|p| *p == frac(1, (a * b) as i64)));
    }
}

#[test]
fn shape_mismatch_is_an_error() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    assert!(Behavior::new(s, vec![zero(); 15]).is_err());
}

#[test]
fn formats_round_trip() {
    for b in [pr_box(), box1(), box3()] {
        assert_eq!(from_text(&to_text(&b)).unwrap(), b);
        assert_eq!(from_json(&to_json(&b)).unwrap(), b);
        assert_eq!(parse_behavior(&to_json(&b)).unwrap(), b);
    }
    assert!(from_text("2 2 2 2\n1 0 0\n").is_err());
}

#[test]
fn pr_class_has_eight_members() {
    let pr = pr_box();
    assert_eq!(orbit(&pr, 10_000).unwrap().len(), 8);
    assert_eq!(group_order(pr.scenario()), 128);
}

#[test]
fn classify_separates_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b1 = box1();
    let b2 = box2();
    let moved = apply_relabeling(&b1, &Relabeling::random(b1.scenario(), &mut rng)).unwrap();
    let classes = classify(&[b1.clone(), b2, moved]).unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0].members, vec![0, 2]);
}

#[test]
fn canonical_form_is_in_the_orbit() {
    let b = box5();
    let c = canonical_form(&b).unwrap();
    assert!(orbit(&b, 1_000_000).unwrap().contains(&c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelings_form_a_group(seed in any::<u64>()) {
        let b = box1();
        let s = b.scenario();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r1 = Relabeling::random(s, &mut rng);
        let r2 = Relabeling::random(s, &mut rng);
        let stepwise = apply_relabeling(&apply_relabeling(&b, &r1).unwrap(), &r2).unwrap();
        prop_assert_eq!(&stepwise, &apply_relabeling(&b, &r1.compose(&r2)).unwrap());
        let back = apply_relabeling(&apply_relabeling(&b, &r1).unwrap(), &r1.inverse()).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert!(apply_relabeling(&b, &r1).unwrap().validate().is_ok());
    }

    #[test]
    fn party_swap_is_legal_on_symmetric_scenarios(seed in any::<u64>()) {
        let b = diagonal_box(3).unwrap();
        let s = b.scenario();
        prop_assert!(s.is_party_symmetric());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = Relabeling::random(s, &mut rng);
        prop_assert_eq!(canonical_form(&apply_relabeling(&b, &r).unwrap()).unwrap(), canonical_form(&b).unwrap());
    }
}
