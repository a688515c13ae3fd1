use std::collections::BTreeSet;

use num_complex::Complex64;
use uqsln::families;
use uqsln::patterns::{check_admissible, enumerate_states_with, Traversal, Violation};
use uqsln::{build_module, enumerate_states, Error, FracClass, IndexValue, QContext, RepSpec};

/// Integer GZ patterns in the shifted convention `p_il = m_il - i`, listed
/// directly from the betweenness conditions.
fn classical_patterns(top: &[i64]) -> BTreeSet<Vec<Vec<i64>>> {
    fn below(row: &[i64]) -> Vec<Vec<i64>> {
        // p_{i,l+1} >= p_il > p_{i+1,l+1}
        let mut out = vec![Vec::new()];
        for i in 0..row.len() - 1 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (row[i + 1] + 1..=row[i]).map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        out
    }
    let mut out = BTreeSet::new();
    let mut stack = vec![vec![top.to_vec()]];
    while let Some(rows) = stack.pop() {
        let last = rows.last().unwrap();
        if last.len() == 1 {
            let mut rows = rows.clone();
            rows.reverse();
            out.insert(rows);
            continue;
        }
        for next in below(last) {
            let mut more = rows.clone();
            more.push(next);
            stack.push(more);
        }
    }
    out
}

fn integer_rows(spec: &RepSpec) -> BTreeSet<Vec<Vec<i64>>> {
    enumerate_states(spec)
        .unwrap()
        .iter()
        .map(|p| p.rows().iter().map(|r| r.iter().map(|v| v.twice_offset / 2).collect()).collect())
        .collect()
}

fn weyl_dimension(top: &[i64]) -> i64 {
    let n = top.len();
    let mut num = 1;
    let mut den = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= top[i] - top[j];
            den *= (j - i) as i64;
        }
    }
    num / den
}

#[test]
fn usual_states_are_the_classical_patterns() {
    for top in [vec![1, -2], vec![3, -2], vec![1, -1, -3], vec![2, 0, -3], vec![3, 1, -1, -4], vec![0, -1, -2, -3]] {
        let spec = families::usual(&top, 0.7).unwrap();
        let found = integer_rows(&spec);
        assert_eq!(found, classical_patterns(&top), "top {top:?}");
        assert_eq!(found.len() as i64, weyl_dimension(&top), "top {top:?}");
    }
}

#[test]
fn traversal_order_does_not_change_the_state_set() {
    for spec in [
        families::generic_periodic(3, 5, 2).unwrap(),
        families::nilpotent(3, 3, 2).unwrap(),
        families::usual(&[3, 1, -1, -4], 0.4).unwrap(),
        families::truncated_flat_sl3(5, 3).unwrap(),
    ] {
        let bfs = enumerate_states_with(&spec, Traversal::BreadthFirst).unwrap();
        let dfs = enumerate_states_with(&spec, Traversal::DepthFirst).unwrap();
        assert_eq!(bfs, dfs);
    }
}

#[test]
fn family_dimensions() {
    for (n, m) in [(2, 3), (2, 7), (3, 3), (3, 5), (4, 3)] {
        let expected = (m as usize).pow((n * (n - 1) / 2) as u32);
        assert_eq!(enumerate_states(&families::generic_periodic(n, m, 3).unwrap()).unwrap().len(), expected);
        assert_eq!(enumerate_states(&families::semi_periodic(n, m, 3).unwrap()).unwrap().len(), expected);
        assert_eq!(enumerate_states(&families::nilpotent(n, m, 3).unwrap()).unwrap().len(), expected);
    }
}

#[test]
fn state_budget_is_enforced() {
    let mut spec = families::generic_periodic(3, 5, 1).unwrap();
    spec.max_states = 100;
    match enumerate_states(&spec) {
        Err(Error::BudgetExceeded { cap }) => assert_eq!(cap, 100),
        other => panic!("expected a budget error, got {other:?}"),
    }
}

#[test]
fn convexity_violation_is_rejected() {
    let classes: Vec<FracClass> = ["a", "b", "c", "x", "y"]
        .iter()
        .enumerate()
        .map(|(k, name)| FracClass::new(*name, Complex64::new(0.1 + 0.07 * k as f64, 0.03)))
        .collect();
    let top = vec![IndexValue::new(0, 0), IndexValue::new(1, 0), IndexValue::new(2, 0)];
    let lower = vec![vec![IndexValue::new(4, 0)], vec![IndexValue::new(3, 0), IndexValue::new(3, -2)]];
    let spec = RepSpec::new(QContext::root_of_unity(3).unwrap(), classes, top, Some(lower)).unwrap();
    let report = check_admissible(&spec).unwrap();
    assert!(matches!(report.violations[..], [Violation::Convexity { level: 2, .. }]), "{report}");
    assert!(matches!(build_module(&spec), Err(Error::Inadmissible(_))));
}

#[test]
fn wide_integer_top_row_at_a_root_is_rejected() {
    let spec = families::usual_at_root(&[4, 0], 3).unwrap();
    let report = check_admissible(&spec).unwrap();
    assert_eq!(report.violations, vec![Violation::TopRowSpread { spread: 4, m: 3 }]);
    assert!(check_admissible(&families::usual_at_root(&[2, 0], 3).unwrap()).unwrap().passed());
}

#[test]
fn truncated_flat_modules_satisfy_the_relations() {
    for p13 in 1..=5 {
        let module = build_module(&families::truncated_flat_sl3(5, p13).unwrap()).unwrap();
        assert!(uqsln::verify::relation_residuals(&module.ops).max() < 1e-9);
    }
}
