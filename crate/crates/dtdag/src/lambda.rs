//! Exact minimum satisfiable ratio.
//!
//! For a nondegenerate dag, weight `G_d` with `(t1, t2) = (1, 1)` and let `c`
//! be its minimum cycle mean; then `lambda = (t2 - c) / (t1 + c)`, clamped to
//! at least 1. The cycle mean is found with the cycle-mean minimax formula
//! reindexed by hop count: `H(i, v)` is the cheapest walk ending at `v` with
//! exactly `i` hop edges, its length `l(i, v)` is recovered from the weight,
//! and only rows up to about `n / (lambda + 1)` are ever computed because the
//! running minimum can be returned as soon as the mean weight of length-`n`
//! walks (which grows with `i`) overtakes it.
//!
//! A computed `lambda = j/i` is certified from both sides: a satisfying
//! assignment at `(i, j)`, and a forcing cycle from an infeasibility run at
//! `(i n, j n - 1)` — its ratio must exceed `(j n - 1) / (i n)`, and the only
//! ratio with numerator and denominator summing to at most `n` in that open
//! window is `j/i` itself.

use num::traits::NumCast;
use num::{One, Zero};

use crate::dag::Dag;
use crate::error::Error;
use crate::feasibility::{
    check_feasible, dag_relax_opt, solve, Feasibility, ForcingCycle, ScanScratch, Thresholds,
    UtilityAssignment,
};
use crate::weight::{w, Rational, Weight};

/// Instrumentation for the minimum-cycle-mean table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaStats {
    /// Rows computed beyond row 0.
    pub passes: usize,
    /// Cells written, row 0 included.
    pub table_cells: usize,
    /// Table reads performed by the inner maximizations.
    pub inner_reads: usize,
}

impl LambdaStats {
    /// `floor(n / (lambda + 1)) + 2`; the pass count never exceeds this.
    pub fn pass_bound<W: Weight>(n: usize, lambda: Rational<W>) -> usize {
        let den = *lambda.denom();
        let num = *lambda.numer();
        let floor: usize = NumCast::from((w::<W>(n) * den).div_floor(&(num + den)))
            .expect("pass bound fits usize");
        floor + 2
    }
}

/// Minimum mean weight over directed cycles of `G_d` under `th`, as an exact
/// (possibly negative) rational. Rejects degenerate dags, whose `G_d` may be
/// acyclic.
pub fn min_cycle_mean<W: Weight>(dag: &Dag, th: Thresholds<W>) -> Result<Rational<W>, Error> {
    min_cycle_mean_with_stats(dag, th).map(|(c, _)| c)
}

/// Same as [`min_cycle_mean`] plus instrumentation.
pub fn min_cycle_mean_with_stats<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
) -> Result<(Rational<W>, LambdaStats), Error> {
    if dag.is_degenerate() {
        return Err(Error::DegenerateInput);
    }
    min_cycle_mean_unchecked(dag, th)
}

fn min_cycle_mean_unchecked<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
) -> Result<(Rational<W>, LambdaStats), Error> {
    let n = dag.n();
    let (t1, t2) = (th.t1(), th.t2());
    let nw = w::<W>(n);
    let rev_topo: Vec<usize> = dag.topological_sort().into_iter().rev().collect();

    // Row 0: cheapest walks of reversed (-t1) edges only, any start vertex.
    let mut row0: Vec<Option<W>> = vec![Some(W::zero()); n];
    dag_relax_opt(dag, t1, &rev_topo, &mut row0);
    let mut rows: Vec<Vec<Option<W>>> = vec![row0];

    // l(i, v) = i + (i t2 - H(i, v)) / t1; the division is exact because
    // every walk weight is i t2 minus a multiple of t1.
    let walk_len = |i: usize, h: W| -> usize {
        let extra = w::<W>(i) * t2 - h;
        debug_assert!(extra >= W::zero() && extra.is_multiple_of(&t1));
        let tail: usize = NumCast::from(extra / t1).expect("walk length fits usize");
        i + tail
    };

    let mut min: Option<Rational<W>> = None;
    let mut inner_reads = 0usize;
    let mut scratch = ScanScratch::new(n);
    let mut passes = 0usize;
    for i in 1.. {
        if let Some(m) = min {
            let iw = w::<W>(i);
            let interest_mean = Rational::new(iw * t2 - (nw - iw) * t1, nw);
            if m < interest_mean {
                let stats = LambdaStats {
                    passes,
                    table_cells: (passes + 1) * n,
                    inner_reads,
                };
                return Ok((m, stats));
            }
        }
        if i > n {
            // A nondegenerate dag always produces a length-n walk of interest.
            return Err(Error::Internal(
                "cycle-mean table exhausted without a critical term".into(),
            ));
        }
        let prev = &rows[i - 1];
        let cand = scratch.min_hop_neighbor(dag, prev);
        let mut row: Vec<Option<W>> = (0..n)
            .map(|v| cand[v].map(|(_, wu)| wu + t2))
            .collect();
        dag_relax_opt(dag, t1, &rev_topo, &mut row);
        rows.push(row);
        passes = i;
        for v in 0..n {
            let h = match rows[i][v] {
                Some(h) => h,
                None => continue,
            };
            if walk_len(i, h) != n {
                continue;
            }
            let mut term_max: Option<Rational<W>> = None;
            for (j, row_j) in rows.iter().enumerate().take(i) {
                if let Some(hj) = row_j[v] {
                    let lj = walk_len(j, hj);
                    if lj < n {
                        inner_reads += 1;
                        let k = Rational::new(h - hj, nw - w::<W>(lj));
                        if term_max.is_none_or(|t| k > t) {
                            term_max = Some(k);
                        }
                    }
                }
            }
            // j = 0 is always finite with length < n, so the max is nonempty.
            let k = term_max.expect("inner maximization over a nonempty set");
            if min.is_none_or(|m| k < m) {
                min = Some(k);
            }
        }
    }
    unreachable!()
}

/// The minimum satisfiable ratio `lambda(G)`: 0 for weak orders, otherwise
/// `(1 - c) / (1 + c)` for the cycle mean `c` at unit thresholds, clamped to
/// at least 1.
pub fn compute_lambda<W: Weight>(dag: &Dag) -> Rational<W> {
    compute_lambda_with_stats(dag).0
}

/// Same as [`compute_lambda`]; stats are `None` for degenerate inputs, which
/// skip the cycle-mean computation entirely.
pub fn compute_lambda_with_stats<W: Weight>(dag: &Dag) -> (Rational<W>, Option<LambdaStats>) {
    if dag.is_degenerate() {
        return (Rational::zero(), None);
    }
    let th = Thresholds::new(W::one(), W::one()).unwrap();
    let (c, stats) =
        min_cycle_mean_unchecked(dag, th).expect("nondegenerate dags have a cycle mean");
    let one = Rational::one();
    let lambda = (one - c) / (one + c);
    (lambda.max(one), Some(stats))
}

/// Dual certificate pinning `lambda` exactly: an assignment feasible at
/// `lambda = t2/t1`, and a forcing cycle attaining the maximum edge/hop
/// ratio.
///
/// The cycle ratio equals `lambda` except when `clamped` is set: some dags
/// (a single edge plus an isolated vertex, say) have every forcing cycle
/// below ratio 1, yet `lambda = 1` because the model requires `t1 <= t2`. The
/// returned cycle then attains the maximum ratio and the `t1 <= t2`
/// constraint itself supplies the remaining lower bound, so the pair still
/// pins `lambda` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCertificate<W: Weight> {
    pub lambda: Rational<W>,
    pub thresholds: Thresholds<W>,
    pub assignment: UtilityAssignment<W>,
    pub cycle: ForcingCycle,
    pub clamped: bool,
}

/// Computes `lambda = j/i` and certifies it from both sides.
pub fn certify_lambda<W: Weight>(dag: &Dag) -> Result<LambdaCertificate<W>, Error> {
    if dag.is_degenerate() {
        return Err(Error::DegenerateInput);
    }
    let th_unit = Thresholds::new(W::one(), W::one()).unwrap();
    let (c, _) = min_cycle_mean_unchecked(dag, th_unit)?;
    let one = Rational::one();
    // The maximum forcing-cycle ratio, before the >= 1 clamp. A nondegenerate
    // dag always has a cycle through at least one edge, so this is positive.
    let raw = (one - c) / (one + c);
    let lambda = raw.max(one);
    let (num, den) = (*lambda.numer(), *lambda.denom());
    let thresholds = Thresholds::new(den, num).expect("lambda >= 1 gives den <= num");
    let assignment = match check_feasible(dag, thresholds)? {
        Feasibility::Feasible(a) => a,
        Feasibility::Infeasible(_) => {
            return Err(Error::Internal(
                "computed lambda is not feasible at its own thresholds".into(),
            ))
        }
    };
    // Probe just below the maximum cycle ratio j/i: every candidate ratio
    // with numerator + denominator at most n is either <= (j n - 1)/(i n) or
    // exactly j/i, so the extracted cycle is exact. When lambda = 1 the probe
    // runs with t1 > t2, which the solver itself tolerates.
    let nw = w::<W>(dag.n());
    let perturbed = Thresholds::raw(*raw.denom() * nw, *raw.numer() * nw - W::one());
    let cycle = match solve(dag, perturbed)?.0 {
        Feasibility::Infeasible(c) => c,
        Feasibility::Feasible(_) => {
            return Err(Error::Internal(
                "no forcing cycle found just below the maximum ratio".into(),
            ))
        }
    };
    if cycle.ratio::<W>() != raw {
        return Err(Error::Internal(format!(
            "forcing-cycle ratio {} does not attain the maximum {}",
            cycle.ratio::<W>(),
            raw
        )));
    }
    Ok(LambdaCertificate {
        lambda,
        thresholds,
        assignment,
        cycle,
        clamped: raw < one,
    })
}

/// `floor(lambda) + 1`, the parameter of every approximation bound.
pub fn clique_parameter<W: Weight>(lambda: Rational<W>) -> usize {
    let f: W = lambda.floor().to_integer();
    let f: usize = NumCast::from(f).expect("floor(lambda) fits usize");
    f + 1
}
