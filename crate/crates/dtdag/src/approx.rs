//! Ratio-parameterized approximations.
//!
//! All three algorithms read a certified utility assignment at thresholds
//! with `t2/t1 = lambda` and exploit the same geometry: vertices whose
//! utilities fall inside a width-`t1` window are independent, and vertices
//! whose utilities are pairwise more than `t2` apart form a clique. Each is a
//! `floor(lambda) + 1`-factor approximation.
//!
//! Degenerate dags (weak orders) bypass the assignment machinery: their level
//! structure yields exact optima directly.

use num::Zero;

use crate::dag::{Dag, DegeneracyClass};
use crate::error::Error;
use crate::feasibility::{Thresholds, UtilityAssignment};
use crate::lambda::{certify_lambda, clique_parameter};
use crate::weight::{Rational, Weight};

/// An approximate solution plus the certificate data it was computed from.
/// `alpha` and `thresholds` are `None` on the degenerate (exact) path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult<S, W: Weight> {
    pub solution: S,
    /// The approximation factor `floor(lambda) + 1` (1 when exact).
    pub k: usize,
    pub lambda: Rational<W>,
    pub alpha: Option<UtilityAssignment<W>>,
    pub thresholds: Option<Thresholds<W>>,
}

enum Certified<W: Weight> {
    Degenerate { levels: Vec<usize> },
    Ratio(Box<CertData<W>>),
}

struct CertData<W: Weight> {
    lambda: Rational<W>,
    k: usize,
    alpha: UtilityAssignment<W>,
    thresholds: Thresholds<W>,
}

fn certified<W: Weight>(dag: &Dag) -> Result<Certified<W>, Error> {
    match dag.classify_degenerate() {
        DegeneracyClass::Degenerate { levels } => Ok(Certified::Degenerate { levels }),
        DegeneracyClass::Nondegenerate => {
            let cert = certify_lambda::<W>(dag)?;
            Ok(Certified::Ratio(Box::new(CertData {
                lambda: cert.lambda,
                k: clique_parameter(cert.lambda),
                alpha: cert.assignment,
                thresholds: cert.thresholds,
            })))
        }
    }
}

fn level_classes(levels: &[usize]) -> Vec<Vec<usize>> {
    let height = levels.iter().copied().max().map_or(0, |h| h + 1);
    let mut classes = vec![Vec::new(); height];
    for (v, &l) in levels.iter().enumerate() {
        classes[l].push(v);
    }
    classes
}

/// Independent set of size at least `optimum / (floor(lambda) + 1)`: the best
/// half-open window `[x, x + t1)` over the utilities (any edge forces a
/// difference of at least `t1`). Window starts slide over the utility values
/// themselves, smallest winning position on ties.
pub fn independent_set_approx<W: Weight>(dag: &Dag) -> Result<ApproxResult<Vec<usize>, W>, Error> {
    match certified::<W>(dag)? {
        Certified::Degenerate { levels } => {
            // Every independent set of a weak order sits inside one level.
            let classes = level_classes(&levels);
            let best = classes
                .iter()
                .enumerate()
                .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
                .map(|(_, c)| c.clone())
                .unwrap_or_default();
            Ok(ApproxResult {
                solution: best,
                k: 1,
                lambda: Rational::zero(),
                alpha: None,
                thresholds: None,
            })
        }
        Certified::Ratio(cert) => {
            let t1 = cert.thresholds.t1();
            let mut best: Option<(usize, W)> = None;
            for v in 0..dag.n() {
                let x = cert.alpha.value(v);
                let count = (0..dag.n())
                    .filter(|&u| {
                        let a = cert.alpha.value(u);
                        a >= x && a < x + t1
                    })
                    .count();
                let better = match best {
                    None => true,
                    Some((c, bx)) => count > c || (count == c && x < bx),
                };
                if better {
                    best = Some((count, x));
                }
            }
            let (_, x) = best.expect("nondegenerate dags are nonempty");
            let solution: Vec<usize> = (0..dag.n())
                .filter(|&u| {
                    let a = cert.alpha.value(u);
                    a >= x && a < x + t1
                })
                .collect();
            Ok(ApproxResult {
                solution,
                k: cert.k,
                lambda: cert.lambda,
                alpha: Some(cert.alpha),
                thresholds: Some(cert.thresholds),
            })
        }
    }
}

/// Proper coloring with at most `(floor(lambda) + 1) * chi` classes: bucket
/// the utility range into width-`t1` intervals; each nonempty bucket is an
/// independent color class.
pub fn coloring_approx<W: Weight>(dag: &Dag) -> Result<ApproxResult<Vec<Vec<usize>>, W>, Error> {
    match certified::<W>(dag)? {
        Certified::Degenerate { levels } => Ok(ApproxResult {
            solution: level_classes(&levels),
            k: 1,
            lambda: Rational::zero(),
            alpha: None,
            thresholds: None,
        }),
        Certified::Ratio(cert) => {
            let t1 = cert.thresholds.t1();
            let x = (0..dag.n())
                .map(|v| cert.alpha.value(v))
                .min()
                .expect("nonempty");
            let top: usize = num::traits::NumCast::from(
                (0..dag.n())
                    .map(|v| (cert.alpha.value(v) - x) / t1)
                    .max()
                    .unwrap(),
            )
            .expect("bucket index fits usize");
            let bucket_count = top + 1;
            let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); bucket_count];
            for v in 0..dag.n() {
                let idx: usize =
                    num::traits::NumCast::from((cert.alpha.value(v) - x) / t1).unwrap();
                buckets[idx].push(v);
            }
            buckets.retain(|b| !b.is_empty());
            Ok(ApproxResult {
                solution: buckets,
                k: cert.k,
                lambda: cert.lambda,
                alpha: Some(cert.alpha),
                thresholds: Some(cert.thresholds),
            })
        }
    }
}

/// Clique cover with at most `(floor(lambda) + 1)` times the minimum number
/// of cliques. Repeatedly: find the window `[y, y + t2]` holding the most
/// remaining utilities, take the smallest-utility vertex in it, grow a chain
/// upward (always the least utility more than `t2` above the previous) and
/// downward (greatest utility more than `t2` below), emit that clique and
/// recurse on the rest.
pub fn clique_cover_approx<W: Weight>(
    dag: &Dag,
) -> Result<ApproxResult<Vec<Vec<usize>>, W>, Error> {
    match certified::<W>(dag)? {
        Certified::Degenerate { levels } => {
            // Chains across all levels: the t-th chain takes the t-th vertex
            // of every level that is deep enough. Cover size equals the
            // largest level, which is optimal for a weak order.
            let classes = level_classes(&levels);
            let depth = classes.iter().map(|c| c.len()).max().unwrap_or(0);
            let mut chains = Vec::with_capacity(depth);
            for t in 0..depth {
                let chain: Vec<usize> = classes
                    .iter()
                    .filter_map(|c| c.get(t).copied())
                    .collect();
                chains.push(chain);
            }
            Ok(ApproxResult {
                solution: chains,
                k: 1,
                lambda: Rational::zero(),
                alpha: None,
                thresholds: None,
            })
        }
        Certified::Ratio(cert) => {
            let t2 = cert.thresholds.t2();
            let alpha = |v: usize| cert.alpha.value(v);
            let mut remaining: Vec<usize> = (0..dag.n()).collect();
            let mut cliques = Vec::new();
            while !remaining.is_empty() {
                let mut best: Option<(usize, W)> = None;
                for &v in &remaining {
                    let y = alpha(v);
                    let count = remaining
                        .iter()
                        .filter(|&&u| alpha(u) >= y && alpha(u) <= y + t2)
                        .count();
                    let better = match best {
                        None => true,
                        Some((c, by)) => count > c || (count == c && y < by),
                    };
                    if better {
                        best = Some((count, y));
                    }
                }
                let (_, y) = best.unwrap();
                let seed = remaining
                    .iter()
                    .copied()
                    .filter(|&u| alpha(u) >= y && alpha(u) <= y + t2)
                    .min_by_key(|&u| (alpha(u), u))
                    .unwrap();
                let mut clique = vec![seed];
                let mut cur = seed;
                loop {
                    let next = remaining
                        .iter()
                        .copied()
                        .filter(|&u| alpha(u) > alpha(cur) + t2)
                        .min_by_key(|&u| (alpha(u), u));
                    match next {
                        Some(u) => {
                            clique.push(u);
                            cur = u;
                        }
                        None => break,
                    }
                }
                cur = seed;
                loop {
                    let next = remaining
                        .iter()
                        .copied()
                        .filter(|&u| alpha(u) < alpha(cur) - t2)
                        .max_by(|&a, &b| alpha(a).cmp(&alpha(b)).then(b.cmp(&a)));
                    match next {
                        Some(u) => {
                            clique.push(u);
                            cur = u;
                        }
                        None => break,
                    }
                }
                clique.sort_unstable();
                remaining.retain(|u| !clique.contains(u));
                cliques.push(clique);
            }
            Ok(ApproxResult {
                solution: cliques,
                k: cert.k,
                lambda: cert.lambda,
                alpha: Some(cert.alpha),
                thresholds: Some(cert.thresholds),
            })
        }
    }
}

/// Structural feasibility checks shared by tests and the self-test command.
pub mod verify {
    use crate::clique::is_clique;
    use crate::dag::Dag;

    pub fn is_independent(dag: &Dag, verts: &[usize]) -> bool {
        verts.iter().enumerate().all(|(i, &u)| {
            verts[i + 1..]
                .iter()
                .all(|&v| u != v && !dag.adjacent(u, v))
        })
    }

    /// Classes partition the vertices and each is independent.
    pub fn is_proper_coloring(dag: &Dag, classes: &[Vec<usize>]) -> bool {
        partitions(dag.n(), classes) && classes.iter().all(|c| is_independent(dag, c))
    }

    /// Classes partition the vertices and each is a clique.
    pub fn is_clique_cover(dag: &Dag, cliques: &[Vec<usize>]) -> bool {
        partitions(dag.n(), cliques) && cliques.iter().all(|c| is_clique(dag, c))
    }

    fn partitions(n: usize, classes: &[Vec<usize>]) -> bool {
        let mut seen = vec![false; n];
        for c in classes {
            for &v in c {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::verify::*;
    use super::*;
    use crate::oracle;
    use crate::Ratio64;

    fn p3() -> Dag {
        oracle::path(3).unwrap()
    }

    #[test]
    fn independent_set_on_p3() {
        let r = independent_set_approx::<i64>(&p3()).unwrap();
        assert_eq!(r.k, 3);
        assert_eq!(r.lambda, Ratio64::new(2, 1));
        assert_eq!(r.solution.len(), 1);
        assert!(is_independent(&p3(), &r.solution));
        let optimum = oracle::brute_independent_set(&p3()).unwrap().len();
        assert!(optimum <= r.k * r.solution.len());
    }

    #[test]
    fn independent_set_on_single_edge() {
        let d = Dag::from_edges(2, &[(0, 1)]).unwrap();
        // A single edge is a weak order: exact level path.
        let r = independent_set_approx::<i64>(&d).unwrap();
        assert_eq!(r.solution.len(), 1);
        assert!(is_independent(&d, &r.solution));
    }

    #[test]
    fn independent_set_on_chain_plus_isolated() {
        let d = oracle::chain_plus_isolated(6).unwrap();
        let r = independent_set_approx::<i64>(&d).unwrap();
        assert!(is_independent(&d, &r.solution));
        let optimum = oracle::brute_independent_set(&d).unwrap().len();
        assert_eq!(r.k, 3);
        assert!(optimum <= r.k * r.solution.len());
        // The best window catches the isolated vertex plus one chain vertex.
        assert_eq!(r.solution.len(), 2);
    }

    #[test]
    fn coloring_on_p3() {
        let r = coloring_approx::<i64>(&p3()).unwrap();
        assert_eq!(r.solution, vec![vec![0], vec![1], vec![2]]);
        assert!(is_proper_coloring(&p3(), &r.solution));
        let chi = oracle::brute_chromatic(&p3()).unwrap().len();
        assert!(r.solution.len() <= r.k * chi);
    }

    #[test]
    fn coloring_on_degenerate() {
        let edgeless = Dag::from_edges(4, &[]).unwrap();
        let r = coloring_approx::<i64>(&edgeless).unwrap();
        assert_eq!(r.solution.len(), 1);
        let tt3 = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = coloring_approx::<i64>(&tt3).unwrap();
        assert_eq!(r.solution.len(), 3);
        assert!(is_proper_coloring(&tt3, &r.solution));
    }

    #[test]
    fn cover_on_p3() {
        let r = clique_cover_approx::<i64>(&p3()).unwrap();
        assert_eq!(r.solution.len(), 3);
        assert!(is_clique_cover(&p3(), &r.solution));
        let optimum = oracle::brute_clique_cover(&p3()).unwrap().len();
        assert!(r.solution.len() <= r.k * optimum);
    }

    #[test]
    fn cover_on_degenerate() {
        let tt4 = oracle::chain_plus_isolated(5).unwrap().induced(&[0, 1, 2, 3]);
        let r = clique_cover_approx::<i64>(&tt4).unwrap();
        assert_eq!(r.solution, vec![vec![0, 1, 2, 3]]);
        let edgeless = Dag::from_edges(4, &[]).unwrap();
        let r = clique_cover_approx::<i64>(&edgeless).unwrap();
        assert_eq!(r.solution.len(), 4);
        assert!(is_clique_cover(&edgeless, &r.solution));
    }

    #[test]
    fn factor_bounds_on_random_corpus() {
        for seed in 0..40u64 {
            let d = oracle::random_dag(7, 0.4, 4000 + seed).unwrap();
            let is = independent_set_approx::<i64>(&d).unwrap();
            assert!(is_independent(&d, &is.solution), "seed {seed}");
            let opt_is = oracle::brute_independent_set(&d).unwrap().len();
            assert!(opt_is <= is.k * is.solution.len(), "seed {seed}");

            let col = coloring_approx::<i64>(&d).unwrap();
            assert!(is_proper_coloring(&d, &col.solution), "seed {seed}");
            let chi = oracle::brute_chromatic(&d).unwrap().len();
            assert!(col.solution.len() <= col.k * chi, "seed {seed}");

            let cov = clique_cover_approx::<i64>(&d).unwrap();
            assert!(is_clique_cover(&d, &cov.solution), "seed {seed}");
            let opt_cov = oracle::brute_clique_cover(&d).unwrap().len();
            assert!(cov.solution.len() <= cov.k * opt_cov, "seed {seed}");
        }
    }

    #[test]
    fn deterministic_outputs() {
        for seed in [3u64, 17, 90] {
            let d = oracle::random_dag(8, 0.5, seed).unwrap();
            assert_eq!(
                independent_set_approx::<i64>(&d).unwrap(),
                independent_set_approx::<i64>(&d).unwrap()
            );
            assert_eq!(
                clique_cover_approx::<i64>(&d).unwrap(),
                clique_cover_approx::<i64>(&d).unwrap()
            );
        }
    }

    #[test]
    fn coloring_reduction_instances_stay_within_two() {
        for seed in 0..10u64 {
            let (d, classes) = oracle::random_colored3(8, 0.5, 600 + seed).unwrap();
            let lambda = crate::compute_lambda::<i64>(&d);
            assert!(lambda <= Ratio64::new(2, 1), "seed {seed}");
            assert_eq!(lambda, oracle::brute_lambda(&d).unwrap(), "seed {seed}");
            // The class indices themselves satisfy (1, 2).
            let th = Thresholds::new(1i64, 2).unwrap();
            let alpha =
                UtilityAssignment::new(classes.iter().map(|&c| c as i64).collect::<Vec<_>>());
            assert!(crate::verify_assignment(&d, th, &alpha).unwrap().is_empty());
        }
        // A class-1 to class-3 gap with the middle pair non-adjacent forces
        // the bound to be tight.
        let tight = oracle::from_colored_graph(3, &[(0, 1), (1, 2)], &[0, 1, 2]).unwrap();
        assert_eq!(crate::compute_lambda::<i64>(&tight), Ratio64::new(2, 1));
        assert_eq!(
            oracle::brute_lambda::<i64>(&tight).unwrap(),
            Ratio64::new(2, 1)
        );
    }
}
