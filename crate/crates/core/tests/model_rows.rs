//! Row-level checks of the one-target, three-vehicle model against its
//! reference written-out form, plus census points.

use std::collections::BTreeMap;

use sortie::model::{reference_inequality_total, Sense};
use sortie::{build_model, variable_census, MilpModel, ObjectiveKind, Scenario, Task, VariableId};

const SCENARIO: &str = include_str!("../scenarios/one_target_fast_self_attack.json");

/// Reference variable numbering `x1..x25` for n = 1, w = 3.
fn numbered(m: &MilpModel) -> Vec<usize> {
    use Task::*;
    let a = |v, task, i| VariableId::Assign { v, task, i, j: 1 };
    let ids = [
        a(1, Attack, 1),
        a(2, Attack, 1),
        a(3, Attack, 1),
        a(1, Classify, 2),
        a(1, Attack, 2),
        a(1, Verify, 2),
        a(2, Classify, 3),
        a(2, Attack, 3),
        a(2, Verify, 3),
        a(3, Classify, 4),
        a(3, Attack, 4),
        a(3, Verify, 4),
        VariableId::SinkArc { v: 1, i: 1 },
        VariableId::SinkArc { v: 2, i: 1 },
        VariableId::SinkArc { v: 3, i: 1 },
        VariableId::SinkArc { v: 1, i: 2 },
        VariableId::SinkArc { v: 2, i: 3 },
        VariableId::SinkArc { v: 3, i: 4 },
        VariableId::Departure { v: 1 },
        VariableId::Departure { v: 2 },
        VariableId::Departure { v: 3 },
        VariableId::TaskTime {
            j: 1,
            task: Classify,
        },
        VariableId::TaskTime { j: 1, task: Attack },
        VariableId::TaskTime { j: 1, task: Verify },
        VariableId::Makespan,
    ];
    ids.iter().map(|&id| m.var(id)).collect()
}

/// A row as `sum coeff * x_k (sense) rhs`, normalized to `<=` or `=`.
#[derive(Debug, Clone, PartialEq)]
struct Row {
    coeffs: BTreeMap<usize, i64>,
    eq: bool,
    rhs: i64,
}

/// Coefficients and right-hand sides are compared in units of 1e-6.
fn q(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn row(terms: &[(usize, f64)], sense: Sense, rhs: f64) -> Row {
    let flip = if sense == Sense::Ge { -1.0 } else { 1.0 };
    let mut coeffs = BTreeMap::new();
    for &(k, c) in terms {
        *coeffs.entry(k).or_insert(0) += q(flip * c);
    }
    coeffs.retain(|_, c| *c != 0);
    Row {
        coeffs,
        eq: sense == Sense::Eq,
        rhs: q(flip * rhs),
    }
}

fn model_rows(m: &MilpModel) -> Vec<Row> {
    m.constraints
        .iter()
        .map(|c| row(&c.coeffs, c.sense, c.rhs))
        .collect()
}

/// Written-out rows in reference numbering: `x` maps 1-based numbers to
/// ordinals.
fn reference_rows(x: &[usize], t: [f64; 4], big_m: f64, eps: f64) -> Vec<Row> {
    use Sense::*;
    let v = |k: usize| x[k - 1];
    let sum = |ks: &[usize]| ks.iter().map(|&k| (v(k), 1.0)).collect::<Vec<_>>();
    let (t11, t21, t31, t41) = (t[0], t[1], t[2], t[3]);
    let mut rows = Vec::new();
    for sense in [Eq, Le] {
        rows.push(row(&sum(&[4, 7, 10]), sense, 1.0));
        rows.push(row(&sum(&[6, 9, 12]), sense, 1.0));
        rows.push(row(&sum(&[1, 2, 3, 5, 8, 11]), sense, 1.0));
    }
    for (c, a, vf, s, sink, src_sink) in [
        (4, 5, 6, 1, 13, 16),
        (7, 8, 9, 2, 14, 17),
        (10, 11, 12, 3, 15, 18),
    ] {
        rows.push(row(&sum(&[c, a, vf]), Le, 1.0));
        rows.push(row(&[(v(vf), 1.0), (v(sink), -1.0)], Le, 0.0));
        rows.push(row(&[(v(c), 1.0), (v(s), -1.0), (v(sink), -1.0)], Le, 0.0));
        rows.push(row(&sum(&[s, a, sink]), Le, 1.0));
        rows.push(row(&[(v(sink), 1.0), (v(c), -1.0), (v(vf), -1.0)], Le, 0.0));
        rows.push(row(&sum(&[c, a, vf, src_sink]), Eq, 1.0));
        rows.push(row(&[(v(s), 1.0), (v(c), -1.0)], Le, 0.0));
    }
    // Self-attack after classifying in place.
    for (s, c) in [(1, 4), (2, 7), (3, 10)] {
        let terms = [(v(23), 1.0), (v(22), -1.0), (v(s), big_m), (v(c), big_m)];
        rows.push(row(&terms, Le, t11 + 2.0 * big_m));
        let terms = [(v(23), 1.0), (v(22), -1.0), (v(s), -big_m), (v(c), -big_m)];
        rows.push(row(&terms, Ge, t11 - 2.0 * big_m));
    }
    // Legs out of the sources.
    for (task_var, legs) in [
        (22, [(19, 4, t21), (20, 7, t31), (21, 10, t41)]),
        (23, [(19, 5, t21), (20, 8, t31), (21, 11, t41)]),
        (24, [(19, 6, t21), (20, 9, t31), (21, 12, t41)]),
    ] {
        for (dep, arc, time) in legs {
            let terms = [(v(task_var), 1.0), (v(dep), -1.0), (v(arc), big_m)];
            rows.push(row(&terms, Le, time + big_m));
            let terms = [(v(task_var), 1.0), (v(dep), -1.0), (v(arc), -big_m)];
            rows.push(row(&terms, Ge, time - big_m));
        }
    }
    rows.push(row(&[(v(22), 1.0), (v(23), -1.0)], Le, -eps));
    rows.push(row(&[(v(23), 1.0), (v(24), -1.0)], Le, -eps));
    rows.push(row(&[(v(24), 1.0), (v(25), -1.0)], Le, 0.0));
    rows
}

#[test]
fn one_target_rows_are_all_present() {
    let s = Scenario::from_json_str(SCENARIO).unwrap();
    let m = build_model(&s, ObjectiveKind::WeightedMakespan);
    let x = numbered(&m);
    let have = model_rows(&m);
    let want = reference_rows(&x, [0.11, 3.7, 4.24, 5.38], 300.0, 0.1);
    assert_eq!(want.len(), 54);
    for r in &want {
        assert!(have.contains(r), "missing row {r:?}");
    }
    // Rows beyond the written-out set: sink-once, leave-once, one attack per
    // vehicle and attack-or-verify, one each per vehicle.
    assert_eq!(have.len() - want.len(), 12);
}

#[test]
fn one_target_objective() {
    let s = Scenario::from_json_str(SCENARIO).unwrap();
    let m = build_model(&s, ObjectiveKind::WeightedMakespan);
    let x = numbered(&m);
    let mut want: Vec<(usize, f64)> = vec![(x[24], 1.0), (x[21], 0.1), (x[22], 0.1), (x[23], 0.1)];
    want.sort_by_key(|p| p.0);
    assert_eq!(m.objective.coeffs, want);
}

#[test]
fn census_points() {
    let points = [
        ((2, 3), (51, 10), 9),
        ((2, 4), (68, 11), 10),
        ((2, 5), (85, 12), 11),
        ((3, 4), (136, 14), 13),
    ];
    for ((n, w), vars, eq) in points {
        assert_eq!(variable_census(n, w), vars);
        let s = sortie::random_scenario(n, w, 1).unwrap();
        let m = build_model(&s, ObjectiveKind::WeightedMakespan);
        assert_eq!((m.binary_count(), m.continuous_count()), vars);
        assert_eq!(m.constraint_census().equality, eq);
    }
}

#[test]
fn inequality_totals_differ_from_the_closed_form_only_outside_timing() {
    for (n, w) in [(2, 3), (2, 4), (2, 5), (3, 4)] {
        let s = sortie::random_scenario(n, w, 1).unwrap();
        let census = build_model(&s, ObjectiveKind::WeightedMakespan).constraint_census();
        let closed = reference_inequality_total(n, w);
        assert_eq!(census.inequality, closed + 3 * n + n * w, "n={n} w={w}");
        // Timing rows: 12(n-1)nw + 2nw + 6nw big-M rows, 2n order rows, n makespan rows.
        assert_eq!(
            census.timing_inequalities(),
            12 * (n - 1) * n * w + 2 * n * w + 6 * n * w + 3 * n
        );
    }
}
