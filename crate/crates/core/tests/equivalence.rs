mod common;

use std::time::Instant;

use sortie::{oracle_solve, solve_scenario, validate, ObjectiveKind, SolverParams};

#[test]
fn solver_matches_enumeration_on_random_instances() {
    let params = SolverParams::default();
    let instances = common::equivalence_instances();
    assert_eq!(instances.len(), 20);
    for s in &instances {
        for kind in ObjectiveKind::ALL {
            let t0 = Instant::now();
            let got = solve_scenario(s, kind, &params).unwrap();
            let t_solve = t0.elapsed();
            let want = oracle_solve(s, kind).unwrap();
            eprintln!(
                "n={} w={} {kind:?} solve={} oracle={} nodes={} {t_solve:?}",
                s.n(),
                s.w(),
                got.objective,
                want.objective,
                got.node_count
            );
            assert!((got.objective - want.objective).abs() < 1e-6);
            let report = validate(s, &got).unwrap();
            assert!(report.ok, "{:?}", report.violations);
        }
    }
}
