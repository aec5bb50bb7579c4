use fair_cc_web::{Demo, MAX_N};

#[test]
fn rounding_before_solving_is_an_error() {
    let demo = Demo::planted(12, 3, 0.1, 1).unwrap();
    assert!(demo.round_once(10, 0.4, 0.2, 0).is_err());
    assert!(demo.metric_matrix().iter().all(|&x| x == 0.0));
}

#[test]
fn solve_then_round_and_sweep() {
    let mut demo = Demo::planted(16, 4, 0.0, 3).unwrap();
    let lp = demo.solve_lp().unwrap();
    assert_eq!(lp.status, "optimal");
    // noiseless planted clusters are fair, so the LP reaches zero
    assert_eq!(lp.planted_cost, 0);
    assert!(lp.objective.abs() < 1e-6);

    let one = demo.round_once(10, 0.4, 0.2, 5).unwrap();
    assert_eq!(one.assignment.len(), 16);
    assert_eq!(one.cost, 0);
    assert_eq!(one.carved, 4);
    assert!(one.violation.unwrap() <= 0.1 + 1e-9);

    let best = demo.best_sweep(1, 2).unwrap();
    assert!(best.cost <= one.cost);
    assert_eq!(best.clusters, best.carved + best.degenerate);
}

#[test]
fn matrices_are_symmetric() {
    let mut demo = Demo::planted(10, 2, 0.3, 7).unwrap();
    demo.solve_lp().unwrap();
    let (signs, metric) = (demo.sign_matrix(), demo.metric_matrix());
    for u in 0..10 {
        assert_eq!(signs[u * 10 + u], 0);
        for v in 0..10 {
            assert_eq!(signs[u * 10 + v], signs[v * 10 + u]);
            assert_eq!(metric[u * 10 + v], metric[v * 10 + u]);
        }
    }
}

#[test]
fn size_limit() {
    assert!(Demo::planted(MAX_N + 1, 4, 0.1, 0).is_err());
}
