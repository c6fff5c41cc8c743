use ens_core::boxgen::{box1, box2, deterministic_box, magic_square_behavior, pr_box};
use ens_core::lo::witnesses::REFERENCE_CLIQUES;
use ens_core::lo::{
    build_exclusivity_graph, clique_condition_profile, find_violating_clique,
    find_violating_clique_with_limit, max_weight_clique, parse_event, verify_clique, CliqueOutcome,
    JointEvent, DEFAULT_MAX_CLIQUE_NODES,
};
use ens_core::rational::{frac, one};
use ens_core::{Error, Scenario};

#[test]
fn reference_cliques_verify() {
    let sizes: Vec<usize> = REFERENCE_CLIQUES.iter().map(|r| r.events.len()).collect();
    assert_eq!(sizes, vec![9, 10, 12, 12, 10]);
    for r in &REFERENCE_CLIQUES {
        let b = (r.behavior)();
        let g = build_exclusivity_graph(&b, 2, 10_000).unwrap();
        let events: Vec<JointEvent> = r
            .events
            .iter()
            .map(|e| parse_event(e, b.scenario(), 2).unwrap())
            .collect();
        for e in &events {
            assert_eq!(
                &e.to_string(),
                r.events[events.iter().position(|f| f == e).unwrap()]
            );
        }
        let w = verify_clique(&g, &events).unwrap();
        assert!(w.is_violation(), "{}", r.name);
    }
}

#[test]
fn box1_clique_profile() {
    let r = &REFERENCE_CLIQUES[0];
    let b = (r.behavior)();
    let g = build_exclusivity_graph(&b, 2, 10_000).unwrap();
    let events: Vec<JointEvent> = r
        .events
        .iter()
        .map(|e| parse_event(e, b.scenario(), 2).unwrap())
        .collect();
    let w = verify_clique(&g, &events).unwrap();
    let profile = clique_condition_profile(&g, &w).unwrap();
    assert_eq!(profile.total_weight(), w.total_weight);
    assert!(profile.violates());
}

#[test]
fn non_orthogonal_pair_is_rejected() {
    let b = box1();
    let g = build_exclusivity_graph(&b, 2, 10_000).unwrap();
    let e = parse_event(REFERENCE_CLIQUES[0].events[0], b.scenario(), 2).unwrap();
    assert!(matches!(
        verify_clique(&g, &[e.clone(), e]),
        Err(Error::NotAClique(..))
    ));
}

#[test]
fn local_boxes_do_not_violate() {
    let s = Scenario::new(3, 3, 3, 2).unwrap();
    let det = deterministic_box(s, &[0, 2, 1], &[1, 0, 1]).unwrap();
    for k in [1, 2] {
        let g = build_exclusivity_graph(&det, k, 10_000).unwrap();
        match find_violating_clique(&g).unwrap() {
            CliqueOutcome::NoViolation { maximum } => assert_eq!(maximum.total_weight, one()),
            CliqueOutcome::Violation(_) => panic!("local box violates at k = {k}"),
        }
    }
}

#[test]
fn single_copy_maximum_is_at_most_one() {
    for b in [pr_box(), box2(), magic_square_behavior()] {
        let g = build_exclusivity_graph(&b, 1, 10_000).unwrap();
        let m = max_weight_clique(&g, DEFAULT_MAX_CLIQUE_NODES).unwrap();
        assert!(m.total_weight <= one());
    }
}

#[test]
fn pr_two_copies_reach_five_quarters() {
    let g = build_exclusivity_graph(&pr_box(), 2, 10_000).unwrap();
    assert_eq!(g.len(), 64);
    let m = max_weight_clique(&g, DEFAULT_MAX_CLIQUE_NODES).unwrap();
    assert_eq!(m.total_weight, frac(5, 4));
    let found = find_violating_clique(&g).unwrap();
    assert!(found.violation().unwrap().is_violation());
}

#[test]
fn box2_witness_has_uniform_weights() {
    let g = build_exclusivity_graph(&box2(), 2, 10_000).unwrap();
    let w = find_violating_clique(&g)
        .unwrap()
        .violation()
        .unwrap()
        .clone();
    assert!(w.weights.iter().all(|p| *p == frac(1, 9)));
    assert_eq!(w.total_weight, frac(w.len() as i64, 9));
}

#[test]
fn guards_trip() {
    assert!(matches!(
        build_exclusivity_graph(&box1(), 2, 100),
        Err(Error::GuardExceeded { .. })
    ));
    let g = build_exclusivity_graph(&box1(), 2, 10_000).unwrap();
    assert!(matches!(
        find_violating_clique_with_limit(&g, 5),
        Err(Error::GuardExceeded { .. })
    ));
}
