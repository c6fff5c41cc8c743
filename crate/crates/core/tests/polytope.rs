use ens_core::boxgen::{
    box1, box2, box4, deterministic_box, local_deterministic_boxes, magic_square_behavior,
    magic_square_p1_p2, pr_box,
};
use ens_core::polytope::dd::extreme_rays;
use ens_core::polytope::lp::{LinearProgram, LpOutcome};
use ens_core::polytope::{
    critical_visibility, decompose_into_vertices, extremality_certificate, is_extremal,
    maximize_functional, membership, vertex_neighbors, EnumeratorRegistry, Limits,
    MembershipResult,
};
use ens_core::rational::{frac, int, one};
use ens_core::{canonical_form, Behavior, Error, Scenario};

#[test]
fn extremality_verdicts_carry_verifying_certificates() {
    for b in [pr_box(), box1(), box4()] {
        let cert = extremality_certificate(&b).unwrap();
        assert!(cert.is_extremal() && cert.verify(&b));
    }
    for b in [
        magic_square_behavior(),
        Behavior::uniform(Scenario::new(2, 3, 2, 2).unwrap()),
    ] {
        let cert = extremality_certificate(&b).unwrap();
        assert!(!cert.is_extremal() && cert.verify(&b));
    }
}

#[test]
fn deterministic_boxes_are_vertices() {
    let s = Scenario::new(2, 3, 3, 2).unwrap();
    for b in local_deterministic_boxes(s, 1 << 10)
        .unwrap()
        .iter()
        .step_by(17)
    {
        assert!(is_extremal(b).unwrap());
    }
}

#[test]
fn strategies_agree_on_small_scenarios() {
    let registry = EnumeratorRegistry::default();
    let limits = Limits::default();
    for (x, y, a, b) in [(2, 2, 2, 3), (2, 2, 3, 3), (2, 3, 3, 2)] {
        let s = Scenario::new(x, y, a, b).unwrap();
        let dd = registry
            .get("dd")
            .unwrap()
            .vertices(s, &[], &limits)
            .unwrap();
        let adj = registry
            .get("adjacency")
            .unwrap()
            .vertices(s, &[], &limits)
            .unwrap();
        assert_eq!(dd, adj, "{s}");
        assert!(dd.iter().all(|v| is_extremal(v).unwrap()));
    }
}

#[test]
fn seeds_must_be_vertices() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    let registry = EnumeratorRegistry::default();
    let result =
        registry
            .get("adjacency")
            .unwrap()
            .classes(s, &[Behavior::uniform(s)], &Limits::default());
    assert!(result.is_err());
    let seeded = registry
        .get("adjacency")
        .unwrap()
        .classes(s, &[pr_box()], &Limits::default())
        .unwrap();
    assert_eq!(seeded.classes.len(), 2);
}

#[test]
fn unknown_strategy_lists_known_names() {
    let registry = EnumeratorRegistry::default();
    match registry.get("panda") {
        Err(Error::UnknownStrategy { known, .. }) => assert_eq!(known, "adjacency, dd"),
        _ => panic!("expected an unknown-strategy error"),
    }
}

#[test]
fn pr_neighbors_are_deterministic() {
    let neighbors = vertex_neighbors(&pr_box(), &Limits::default()).unwrap();
    assert_eq!(neighbors.len(), 8);
    for n in &neighbors {
        assert!(n.table().iter().all(|p| *p == one() || *p == frac(0, 1)));
    }
}

#[test]
fn lp_reports_optimum_infeasibility_and_unboundedness() {
    // max x0 + x1 s.t. x0 + 2 x1 = 4, x >= 0
    let mut lp = LinearProgram::new(1);
    lp.add_column(vec![(0, int(1))], int(1));
    lp.add_column(vec![(0, int(2))], int(1));
    lp.set_rhs(0, int(4));
    match lp.solve().unwrap() {
        LpOutcome::Optimal { value, .. } => assert_eq!(value, int(4)),
        other => panic!("{other:?}"),
    }
    let mut lp = LinearProgram::new(1);
    lp.add_column(vec![(0, int(1))], int(0));
    lp.set_rhs(0, int(-1));
    assert!(matches!(lp.solve().unwrap(), LpOutcome::Infeasible { .. }));
    let mut lp = LinearProgram::new(1);
    lp.add_column(vec![(0, int(1))], int(0));
    lp.add_column(vec![(0, int(-1))], int(1));
    lp.set_rhs(0, int(1));
    assert!(matches!(lp.solve().unwrap(), LpOutcome::Unbounded));
}

#[test]
fn nonlocal_fixtures_are_separated_from_the_local_polytope() {
    for b in [pr_box(), box2()] {
        let local = local_deterministic_boxes(b.scenario(), 1 << 12).unwrap();
        let result = membership(&b, &local).unwrap();
        assert!(result.verify(&b, &local));
        let MembershipResult::Outside { functional, bound } = result else {
            panic!("nonlocal box reported inside");
        };
        let (best, _) = maximize_functional(&functional, &local).unwrap();
        assert!(best <= bound);
        assert!(functional.evaluate(&b).unwrap() > bound);
        let v = critical_visibility(&b, &local).unwrap();
        assert!(v > frac(0, 1) && v < one());
    }
}

#[test]
fn magic_square_splits_into_the_shipped_pair() {
    let ms = magic_square_behavior();
    let d = decompose_into_vertices(&ms).unwrap();
    assert!(d.verify(&ms).unwrap());
    assert_eq!(d.terms.len(), 2);
    let (p1, p2) = magic_square_p1_p2();
    let shipped = [canonical_form(&p1).unwrap(), canonical_form(&p2).unwrap()];
    for (w, v) in &d.terms {
        assert_eq!(*w, frac(1, 2));
        assert!(shipped.contains(&canonical_form(v).unwrap()));
    }
}

#[test]
fn three_term_mix_decomposes() {
    let s = Scenario::new(3, 3, 3, 2).unwrap();
    let det = deterministic_box(s, &[2, 0, 1], &[1, 1, 0]).unwrap();
    let (b1, b2) = (box1(), box2());
    let mix =
        Behavior::combine(&[(frac(1, 6), &b1), (frac(1, 3), &b2), (frac(1, 2), &det)]).unwrap();
    let d = decompose_into_vertices(&mix).unwrap();
    assert!(d.verify(&mix).unwrap());
}

#[test]
fn double_description_guard() {
    let s = Scenario::new(2, 2, 2, 2).unwrap();
    let limits = Limits {
        max_rays: 3,
        ..Limits::default()
    };
    let result = EnumeratorRegistry::default()
        .get("dd")
        .unwrap()
        .vertices(s, &[], &limits);
    assert!(matches!(result, Err(Error::GuardExceeded { .. })));
    assert!(extreme_rays(&[], &[], 10).unwrap().is_empty());
}
