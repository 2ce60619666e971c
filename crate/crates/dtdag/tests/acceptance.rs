//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! All comparisons are exact (rational arithmetic); the only tolerances are
//! the stated wall-clock budgets.

use std::sync::OnceLock;
use std::time::Instant;

use dtdag::approx::{clique_cover_approx, coloring_approx, independent_set_approx, verify};
use dtdag::clique::{check_k_clique_extendable, is_clique, max_clique_approx, max_clique_exact};
use dtdag::feasibility::{check_feasible_with_stats, RelaxStats};
use dtdag::io::{
    AssignmentDoc, CycleDoc, InstanceMeta, Instrumentation, RatioDoc, ResultDocument,
};
use dtdag::lambda::{clique_parameter, compute_lambda_with_stats, LambdaStats};
use dtdag::oracle::{self, Corpus, CorpusEntry};
use dtdag::{
    certify_lambda, check_feasible, compute_lambda, verify_assignment, verify_forcing_cycle,
    Feasibility, Ratio64, Thresholds, Thresholds64,
};

const RANDOM_PER_N: usize = 150; // 600 random dags across n = 5..=8

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| Corpus::acceptance(RANDOM_PER_N))
}

fn small_entries() -> impl Iterator<Item = &'static CorpusEntry> {
    corpus().iter().filter(|e| e.dag.n() <= 8)
}

fn threshold_pairs() -> [Thresholds64; 4] {
    [
        Thresholds::new(1, 1).unwrap(),
        Thresholds::new(1, 2).unwrap(),
        Thresholds::new(2, 3).unwrap(),
        Thresholds::new(1, 3).unwrap(),
    ]
}

fn pass(number: u32, name: &str, detail: String) {
    println!("criterion {number:02} ({name}): PASS [{detail}]");
}

#[test]
fn criterion_01_path_family() {
    let start = Instant::now();
    for n in 3..=12usize {
        let p = oracle::path(n).unwrap();
        assert_eq!(
            compute_lambda::<i64>(&p),
            Ratio64::new(n as i64 - 1, 1),
            "lambda(path({n}))"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "path family took {elapsed:?}, budget 1 s"
    );
    pass(
        1,
        "path family: lambda = (n-1)/1",
        format!("n = 3..=12 in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_chain_plus_isolated_family() {
    for n in 4..=12usize {
        let d = oracle::chain_plus_isolated(n).unwrap();
        let expected = Ratio64::new(n as i64 - 2, 2);
        let fast = compute_lambda::<i64>(&d);
        assert_eq!(fast, expected, "lambda(chain({n}))");
        assert_eq!(
            oracle::brute_lambda::<i64>(&d).unwrap(),
            expected,
            "brute lambda(chain({n}))"
        );
    }
    pass(
        2,
        "chain+isolated: lambda = (n-2)/2, certified by enumeration",
        "n = 4..=12".into(),
    );
}

#[test]
fn criterion_03_lambda_oracle_equivalence() {
    let start = Instant::now();
    let exhaustive = oracle::all_dags(4).unwrap();
    assert_eq!(exhaustive.len(), 543);
    let random = Corpus::random_mid(RANDOM_PER_N);
    assert!(random.len() >= 500);
    let mut checked = 0usize;
    for dag in exhaustive.iter().chain(random.iter().map(|e| &e.dag)) {
        let fast = compute_lambda::<i64>(dag);
        assert_eq!(
            fast,
            oracle::brute_lambda(dag).unwrap(),
            "enumeration disagrees on {:?}",
            dag.edges()
        );
        assert_eq!(
            fast,
            oracle::binary_search_lambda(dag),
            "binary search disagrees on {:?}",
            dag.edges()
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "oracle equivalence took {elapsed:?}, budget 60 s"
    );
    pass(
        3,
        "lambda = brute = binary search",
        format!("{checked} dags, zero mismatches, {elapsed:?}"),
    );
}

#[test]
fn criterion_04_feasibility_split() {
    let mut runs = 0usize;
    for entry in small_entries() {
        let dag = &entry.dag;
        for th in threshold_pairs() {
            let (fast, _) = check_feasible_with_stats(dag, th).unwrap();
            let slow = oracle::brute_feasible(dag, th);
            match (&fast, &slow) {
                (Feasibility::Feasible(alpha), oracle::BruteVerdict::Feasible(_)) => {
                    assert!(
                        verify_assignment(dag, th, alpha).unwrap().is_empty(),
                        "{}: violations at ({}, {})",
                        entry.name,
                        th.t1(),
                        th.t2()
                    );
                }
                (Feasibility::Infeasible(cycle), oracle::BruteVerdict::Infeasible) => {
                    let ratio = verify_forcing_cycle::<i64>(dag, cycle).unwrap();
                    assert!(
                        ratio > th.ratio(),
                        "{}: cycle ratio {ratio} not above {}",
                        entry.name,
                        th.ratio()
                    );
                }
                _ => panic!(
                    "{}: verdict mismatch at ({}, {})",
                    entry.name,
                    th.t1(),
                    th.t2()
                ),
            }
            runs += 1;
        }
    }
    pass(
        4,
        "feasibility verdicts match oracle, certificates valid",
        format!("{runs} runs"),
    );
}

#[test]
fn criterion_05_lambda_certificates() {
    let mut certified = 0usize;
    let mut clamped = 0usize;
    for entry in corpus().iter() {
        let dag = &entry.dag;
        if dag.is_degenerate() {
            continue;
        }
        let cert = certify_lambda::<i64>(dag).unwrap();
        assert_eq!(cert.lambda, compute_lambda::<i64>(dag), "{}", entry.name);
        let (num, den) = (*cert.lambda.numer(), *cert.lambda.denom());
        assert!(den <= num, "{}: lambda shape den <= num", entry.name);
        assert!(
            num + den <= dag.n() as i64,
            "{}: lambda shape num + den <= n",
            entry.name
        );
        assert_eq!(cert.thresholds.t1(), den);
        assert_eq!(cert.thresholds.t2(), num);
        assert!(
            verify_assignment(dag, cert.thresholds, &cert.assignment)
                .unwrap()
                .is_empty(),
            "{}: assignment fails at (den, num)",
            entry.name
        );
        let ratio = verify_forcing_cycle::<i64>(dag, &cert.cycle).unwrap();
        if cert.clamped {
            // No forcing cycle of ratio 1 exists on these instances; lambda
            // was clamped up to 1 by the t1 <= t2 model constraint. The cycle
            // must attain the true maximum ratio, which enumeration confirms.
            clamped += 1;
            assert_eq!(cert.lambda, Ratio64::new(1, 1), "{}", entry.name);
            assert!(ratio < Ratio64::new(1, 1), "{}", entry.name);
            assert_eq!(
                ratio,
                oracle::brute_max_forcing_ratio(dag).unwrap(),
                "{}: clamped cycle must attain the maximum ratio",
                entry.name
            );
        } else {
            assert_eq!(
                ratio, cert.lambda,
                "{}: cycle ratio must equal lambda",
                entry.name
            );
        }
        certified += 1;
    }
    pass(
        5,
        "lambda certificates verify on both sides, reduced shape bounds",
        format!("{certified} nondegenerate dags, {clamped} pinned via the t1<=t2 bound"),
    );
}

#[test]
fn criterion_06_topological_sorts_are_clique_extendable() {
    let mut checked = 0usize;
    for entry in corpus().iter() {
        let dag = &entry.dag;
        let k = clique_parameter(compute_lambda::<i64>(dag));
        let order = dag.topological_sort();
        assert!(
            check_k_clique_extendable(dag, &order, k),
            "{}: topological sort not {k}-clique extendable",
            entry.name
        );
        checked += 1;
    }
    pass(
        6,
        "topological sorts pass the extendability check at floor(lambda)+1",
        format!("{checked} dags"),
    );
}

#[test]
fn criterion_07_maximum_clique() {
    let mut exact_runs = 0usize;
    let mut approx_runs = 0usize;
    for entry in small_entries() {
        let dag = &entry.dag;
        let optimum = oracle::brute_max_clique(dag).unwrap().len();
        for strict in [false, true] {
            let got = max_clique_exact(dag, strict);
            assert!(is_clique(dag, &got), "{}: not a clique", entry.name);
            assert_eq!(got.len(), optimum, "{} strict={strict}", entry.name);
        }
        exact_runs += 1;
        let lambda = compute_lambda::<i64>(dag);
        for factor in 1usize..=3 {
            if Ratio64::new(factor as i64, 1) > lambda {
                continue;
            }
            let got = max_clique_approx::<i64>(dag, factor).unwrap();
            assert!(is_clique(dag, &got), "{}: approx not a clique", entry.name);
            assert!(
                got.len() * factor >= optimum,
                "{}: factor {factor} bound violated ({} * {factor} < {optimum})",
                entry.name,
                got.len()
            );
            approx_runs += 1;
        }
    }
    pass(
        7,
        "exact clique matches brute force; approx within factor",
        format!("{exact_runs} exact, {approx_runs} approximate runs"),
    );
}

#[test]
fn criterion_08_approximation_factors() {
    let mut checked = 0usize;
    for entry in small_entries() {
        let dag = &entry.dag;
        let is = independent_set_approx::<i64>(dag).unwrap();
        assert!(
            verify::is_independent(dag, &is.solution),
            "{}: IS not independent",
            entry.name
        );
        let opt_is = oracle::brute_independent_set(dag).unwrap().len();
        assert!(
            opt_is <= is.k * is.solution.len(),
            "{}: IS factor violated",
            entry.name
        );

        let col = coloring_approx::<i64>(dag).unwrap();
        assert!(
            verify::is_proper_coloring(dag, &col.solution),
            "{}: coloring improper",
            entry.name
        );
        let chi = oracle::brute_chromatic(dag).unwrap().len();
        assert!(
            col.solution.len() <= col.k * chi,
            "{}: coloring factor violated",
            entry.name
        );

        let cov = clique_cover_approx::<i64>(dag).unwrap();
        assert!(
            verify::is_clique_cover(dag, &cov.solution),
            "{}: cover infeasible",
            entry.name
        );
        let opt_cov = oracle::brute_clique_cover(dag).unwrap().len();
        assert!(
            cov.solution.len() <= cov.k * opt_cov,
            "{}: cover factor violated",
            entry.name
        );
        checked += 1;
    }
    pass(
        8,
        "IS/coloring/cover feasible and within floor(lambda)+1",
        format!("{checked} dags, zero factor violations"),
    );
}

#[test]
fn criterion_09_lambda_below_two_implies_transitive() {
    let mut checked = 0usize;
    for entry in corpus().iter() {
        let dag = &entry.dag;
        if compute_lambda::<i64>(dag) < Ratio64::new(2, 1) {
            assert!(dag.is_transitive(), "{}: lambda < 2 but not transitive", entry.name);
            checked += 1;
        }
    }
    pass(
        9,
        "lambda < 2 implies transitivity",
        format!("{checked} dags below 2"),
    );
}

#[test]
fn criterion_10_instrumented_bounds_and_smoke() {
    // Pass bounds on every corpus run.
    let mut lambda_runs = 0usize;
    let mut feas_runs = 0usize;
    for entry in corpus().iter() {
        let dag = &entry.dag;
        let (lambda, stats) = compute_lambda_with_stats::<i64>(dag);
        if let Some(stats) = stats {
            let bound = LambdaStats::pass_bound(dag.n(), lambda);
            assert!(
                stats.passes <= bound,
                "{}: {} lambda passes exceed bound {bound}",
                entry.name,
                stats.passes
            );
            assert!(
                stats.inner_reads <= stats.passes * dag.n(),
                "{}: inner reads {} exceed passes * n",
                entry.name,
                stats.inner_reads
            );
            lambda_runs += 1;
        }
        for th in threshold_pairs() {
            let (_, stats) = check_feasible_with_stats(dag, th).unwrap();
            let bound = RelaxStats::pass_bound(dag.n(), th);
            assert!(
                stats.passes <= bound,
                "{}: {} feasibility passes exceed bound {bound}",
                entry.name,
                stats.passes
            );
            feas_runs += 1;
        }
    }

    // Performance smoke test: n = 2000, m about 20000.
    let big = oracle::random_dag(2000, 0.01, 42).unwrap();
    assert!((15_000..25_000).contains(&big.m()), "m = {}", big.m());
    let start = Instant::now();
    let (lambda, stats) = compute_lambda_with_stats::<i64>(&big);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "lambda(n=2000) took {elapsed:?}, budget 10 s"
    );
    let stats = stats.expect("random dag of this density is nondegenerate");
    assert!(stats.passes <= LambdaStats::pass_bound(big.n(), lambda));
    pass(
        10,
        "pass bounds hold; n=2000 smoke test in budget",
        format!(
            "{lambda_runs} lambda runs, {feas_runs} feasibility runs; smoke lambda = {lambda} in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_11_certificate_round_trip() {
    let mut documents = 0usize;
    for entry in corpus().iter() {
        let dag = &entry.dag;
        // Instance text round-trip.
        let text = dtdag::io::emit_instance(dag);
        assert_eq!(&dtdag::io::parse_instance(&text).unwrap(), dag, "{}", entry.name);

        if dag.is_degenerate() {
            continue;
        }
        let cert = certify_lambda::<i64>(dag).unwrap();
        let doc = ResultDocument::Certify {
            instance: InstanceMeta::of(dag),
            lambda: RatioDoc::from_ratio(cert.lambda),
            assignment: AssignmentDoc::from_parts(cert.thresholds, &cert.assignment),
            cycle: CycleDoc::from_cycle(&cert.cycle),
            instrumentation: Instrumentation {
                passes: 0,
                table_cells: 0,
                elapsed_ms: 0,
            },
        };
        let json = doc.to_json();
        let back = ResultDocument::from_json(&json).unwrap();
        assert_eq!(back, doc, "{}", entry.name);
        let ResultDocument::Certify {
            assignment, cycle, ..
        } = back
        else {
            unreachable!()
        };
        let (th, alpha) = assignment.to_parts().unwrap();
        assert!(
            verify_assignment(dag, th, &alpha).unwrap().is_empty(),
            "{}: assignment does not re-verify",
            entry.name
        );
        let fc = cycle.to_cycle();
        assert_eq!(
            verify_forcing_cycle::<i64>(dag, &fc).unwrap(),
            cert.cycle.ratio(),
            "{}: cycle does not re-verify",
            entry.name
        );
        documents += 1;

        // An infeasible check document round-trips the same way.
        let th_low = Thresholds::new(*cert.lambda.denom() * dag.n() as i64,
                                     *cert.lambda.numer() * dag.n() as i64 - 1);
        if let Ok(th_low) = th_low {
            if let Feasibility::Infeasible(cycle) = check_feasible(dag, th_low).unwrap() {
                let doc = CycleDoc::from_cycle(&cycle);
                let json = serde_json::to_string(&doc).unwrap();
                let back: CycleDoc = serde_json::from_str(&json).unwrap();
                let ratio = verify_forcing_cycle::<i64>(dag, &back.to_cycle()).unwrap();
                assert!(ratio > th_low.ratio(), "{}", entry.name);
                documents += 1;
            }
        }
    }
    pass(
        11,
        "all emitted certificates re-verify after round-trip",
        format!("{documents} documents"),
    );
}
