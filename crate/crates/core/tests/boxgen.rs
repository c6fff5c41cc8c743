use ens_core::boxgen::{
    enumerate_eq1, enumerate_nsdd, eq1_box, magic_square_behavior, magic_square_functional,
    nsdd_box, pr_box, quantum_realization, Eq1Spec, GenerateRequest, GeneratorRegistry, NsddSpec,
    QuantumRealization,
};
use ens_core::polytope::is_extremal;
use ens_core::rational::{frac, int};
use ens_core::{canonical_form, Scenario};

#[test]
fn simplest_eq1_box_is_the_pr_class() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    let spec = Eq1Spec {
        scenario: s,
        g: 2,
        h: 2,
        t_blocks: vec![vec![1]],
    };
    let b = eq1_box(&spec).unwrap();
    assert_eq!(
        canonical_form(&b).unwrap(),
        canonical_form(&pr_box()).unwrap()
    );
}

#[test]
fn coprime_eq1_boxes_are_extremal() {
    for (x, y, a) in [(2, 2, 3), (2, 3, 4), (3, 3, 3)] {
        let s = Scenario::new(x, y, a, a).unwrap();
        for (spec, b) in enumerate_eq1(s, true).unwrap() {
            assert!(spec.is_coprime());
            assert!(b.validate().is_ok());
            assert!(is_extremal(&b).unwrap(), "{spec:?}");
        }
    }
}

#[test]
fn eq1_needs_equal_output_counts() {
    assert!(enumerate_eq1(Scenario::new(2, 2, 2, 3).unwrap(), false).is_err());
}

#[test]
fn nsdd_boxes_have_the_expected_zero_count() {
    for (x, y, d) in [(2, 2, 3), (2, 3, 3), (3, 3, 2)] {
        let s = Scenario::new(x, y, d, d).unwrap();
        let specs = enumerate_nsdd(s).unwrap();
        assert!(!specs.is_empty());
        for spec in specs.iter().take(20) {
            let b = nsdd_box(spec).unwrap();
            assert_eq!(b.zero_count(), x * y * d * (d - 1));
            assert!(b.zero_count() >= s.ns_dimension());
            assert!(is_extremal(&b).unwrap());
        }
    }
}

#[test]
fn nsdd_rejects_a_mismatched_order() {
    let s = Scenario::new(2, 2, 3, 3).unwrap();
    let spec = NsddSpec {
        scenario: s,
        k: 2,
        perms: vec![vec![vec![1, 2, 0]]],
    };
    assert!(nsdd_box(&spec).is_err());
}

#[test]
fn magic_square_realization_and_value() {
    let q = QuantumRealization::peres_mermin();
    assert!(q.bases_are_orthogonal());
    let ms = magic_square_behavior();
    assert_eq!(q.behavior(), ms);
    assert_eq!(quantum_realization(), ms);
    assert_eq!(magic_square_functional().evaluate(&ms).unwrap(), int(9));
    assert!(ms
        .table()
        .iter()
        .all(|p| *p == frac(0, 1) || *p == frac(1, 8)));
}

#[test]
fn registry_dispatches_by_name() {
    let registry = GeneratorRegistry::default();
    assert_eq!(registry.names(), vec!["eq1", "nsdd", "fixtures"]);
    let request = GenerateRequest {
        name: Some("box2".into()),
        ..GenerateRequest::default()
    };
    let boxes = registry
        .get("fixtures")
        .unwrap()
        .generate(&request)
        .unwrap();
    assert_eq!(boxes.len(), 1);
    assert_eq!(boxes[0].label, "box2");
    assert!(registry
        .get("eq1")
        .unwrap()
        .generate(&GenerateRequest::default())
        .is_err());
    assert!(registry.get("nope").is_err());
}
