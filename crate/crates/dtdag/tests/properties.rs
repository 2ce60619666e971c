//! Property tests over randomly generated dags.

use proptest::prelude::*;

use dtdag::approx::{clique_cover_approx, coloring_approx, independent_set_approx, verify};
use dtdag::io::{emit_instance, parse_instance};
use dtdag::oracle;
use dtdag::{
    check_feasible, compute_lambda, verify_assignment, verify_forcing_cycle, Dag, Feasibility,
    Ratio64, Thresholds,
};

fn arb_dag(max_n: usize) -> impl Strategy<Value = Dag> {
    (1..=max_n, 0u64..1_000_000, 0usize..3).prop_map(|(n, seed, d)| {
        let p = [0.2, 0.45, 0.7][d];
        oracle::random_dag(n, p, seed).unwrap()
    })
}

fn arb_thresholds() -> impl Strategy<Value = Thresholds<i64>> {
    (1i64..=4, 0i64..=6).prop_map(|(t1, extra)| Thresholds::new(t1, t1 + extra).unwrap())
}

proptest! {
    #[test]
    fn hops_plus_edges_cover_all_pairs(dag in arb_dag(9)) {
        let n = dag.n();
        prop_assert_eq!(dag.hops().len() + dag.m(), n * (n - 1) / 2);
        prop_assert_eq!(dag.hops().len(), dag.hop_count());
    }

    #[test]
    fn topological_sort_is_a_valid_order(dag in arb_dag(9)) {
        let order = dag.topological_sort();
        let mut seen = vec![false; dag.n()];
        for &v in &order {
            prop_assert!(!seen[v]);
            seen[v] = true;
        }
        let mut pos = vec![0; dag.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for &(u, v) in dag.edges() {
            prop_assert!(pos[u] < pos[v]);
        }
    }

    #[test]
    fn feasibility_matches_oracle_with_valid_certificates(
        dag in arb_dag(6),
        th in arb_thresholds(),
    ) {
        let fast = check_feasible(&dag, th).unwrap();
        let slow = oracle::brute_feasible(&dag, th);
        match (fast, slow) {
            (Feasibility::Feasible(alpha), oracle::BruteVerdict::Feasible(_)) => {
                prop_assert!(verify_assignment(&dag, th, &alpha).unwrap().is_empty());
                let n = dag.n() as i64;
                for v in 0..dag.n() {
                    prop_assert!(alpha.value(v) <= 0);
                    prop_assert!(alpha.value(v) >= -(n - 1) * th.t1());
                }
            }
            (Feasibility::Infeasible(cycle), oracle::BruteVerdict::Infeasible) => {
                let ratio = verify_forcing_cycle::<i64>(&dag, &cycle).unwrap();
                prop_assert!(ratio > th.ratio());
            }
            (fast, slow) => {
                return Err(TestCaseError::fail(format!(
                    "verdicts disagree: fast {:?}, oracle {:?}",
                    fast.is_feasible(),
                    slow.is_feasible()
                )));
            }
        }
    }

    #[test]
    fn scaling_assignments_scales_thresholds(
        dag in arb_dag(6),
        th in arb_thresholds(),
        c in 1i64..=5,
    ) {
        if let Feasibility::Feasible(alpha) = check_feasible(&dag, th).unwrap() {
            let scaled = Thresholds::new(th.t1() * c, th.t2() * c).unwrap();
            prop_assert!(verify_assignment(&dag, scaled, &alpha.scale(c)).unwrap().is_empty());
        }
    }

    #[test]
    fn lambda_agrees_with_brute_force(dag in arb_dag(7)) {
        let fast = compute_lambda::<i64>(&dag);
        prop_assert_eq!(fast, oracle::brute_lambda(&dag).unwrap());
    }

    #[test]
    fn lambda_splits_feasibility_monotonically(dag in arb_dag(6), th in arb_thresholds()) {
        let lambda = compute_lambda::<i64>(&dag);
        let feasible = check_feasible(&dag, th).unwrap().is_feasible();
        prop_assert_eq!(feasible, th.ratio() >= lambda);
    }

    #[test]
    fn lambda_below_two_implies_transitive(dag in arb_dag(8)) {
        if compute_lambda::<i64>(&dag) < Ratio64::new(2, 1) {
            prop_assert!(dag.is_transitive());
        }
    }

    #[test]
    fn instance_files_round_trip(dag in arb_dag(9)) {
        let text = emit_instance(&dag);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &dag);
        prop_assert_eq!(emit_instance(&back), text);
    }

    #[test]
    fn approximations_are_feasible(dag in arb_dag(8)) {
        let is = independent_set_approx::<i64>(&dag).unwrap();
        prop_assert!(verify::is_independent(&dag, &is.solution));
        prop_assert!(!is.solution.is_empty());
        let col = coloring_approx::<i64>(&dag).unwrap();
        prop_assert!(verify::is_proper_coloring(&dag, &col.solution));
        let cov = clique_cover_approx::<i64>(&dag).unwrap();
        prop_assert!(verify::is_clique_cover(&dag, &cov.solution));
    }
}
