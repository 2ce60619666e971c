//! Deciding `(t1, t2)`-representability.
//!
//! The constraint system (edges force `alpha(v) - alpha(u) >= t1`, hops cap
//! `|alpha(v) - alpha(u)| <= t2`, `alpha <= 0`) reduces to least-weight paths
//! in the constraint digraph `G_d`: a reversed edge of weight `-t1` per dag
//! edge and a pair of weight-`t2` edges per hop. A negative cycle in `G_d` is
//! exactly a forcing cycle with edge/hop ratio above `t2/t1`.
//!
//! [`check_feasible`] runs Bellman–Ford reindexed by the number of weight-`t2`
//! edges on a walk: row `B(i, .)` holds the cheapest walks using at most `i`
//! hop edges. Each pass is one general relaxation over the hop edges (done in
//! `O(n + m)` with a sorted scan over marked neighborhoods, since all hop
//! edges share one weight) followed by one dag relaxation over the acyclic
//! `-t1` edges. Rows stabilize by `floor((n-1)/(r+1)) + 1` passes with
//! `r = t2/t1` when the instance is feasible; one extra pass still improving
//! proves infeasibility, and walking the per-cell back-links yields the
//! forcing cycle.

use std::fmt;

use num::traits::NumCast;


use crate::dag::{Dag, Hop};
use crate::error::Error;
use crate::weight::{w, Rational, Weight};

/// Threshold pair with `1 <= t1 <= t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds<W: Weight> {
    t1: W,
    t2: W,
}

impl<W: Weight> Thresholds<W> {
    pub fn new(t1: W, t2: W) -> Result<Self, Error> {
        if t1 < W::one() || t2 < t1 {
            return Err(Error::InvalidThresholds {
                t1: t1.to_string(),
                t2: t2.to_string(),
            });
        }
        Ok(Thresholds { t1, t2 })
    }

    /// Skips the `t1 <= t2` check. The solver itself is indifferent to the
    /// ordering; certificate extraction probes ratios just below 1.
    pub(crate) fn raw(t1: W, t2: W) -> Self {
        debug_assert!(t1 >= W::one() && t2 >= W::one());
        Thresholds { t1, t2 }
    }

    pub fn t1(&self) -> W {
        self.t1
    }

    pub fn t2(&self) -> W {
        self.t2
    }

    pub fn ratio(&self) -> Rational<W> {
        Rational::new(self.t2, self.t1)
    }
}

/// The constraint digraph `G_d` as a view over a dag and thresholds.
pub struct ConstraintGraph<'a, W: Weight> {
    dag: &'a Dag,
    th: Thresholds<W>,
}

impl<'a, W: Weight> ConstraintGraph<'a, W> {
    pub fn new(dag: &'a Dag, th: Thresholds<W>) -> Self {
        ConstraintGraph { dag, th }
    }

    /// `m` reversed edges plus two directed edges per hop.
    pub fn edge_count(&self) -> usize {
        self.dag.m() + 2 * self.dag.hop_count()
    }

    /// Weighted edges of `G_d`, reversed dag edges first.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, W)> + '_ {
        let t1 = self.th.t1;
        let t2 = self.th.t2;
        let dag = self.dag;
        let reversed = dag.edges().iter().map(move |&(x, y)| (y, x, -t1));
        let hops = dag.vertices().flat_map(move |u| {
            ((u + 1)..dag.n())
                .filter(move |&v| !dag.adjacent(u, v))
                .flat_map(move |v| [(u, v, t2), (v, u, t2)])
        });
        reversed.chain(hops)
    }
}

/// Vertex utilities; all values lie in `[-(n-1) t1, 0]` when produced by the
/// solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityAssignment<W: Weight> {
    values: Vec<W>,
}

impl<W: Weight> UtilityAssignment<W> {
    pub fn new(values: Vec<W>) -> Self {
        UtilityAssignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> W {
        self.values[v]
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    /// A solution for `(t1, t2)` scaled by `c` solves `(c t1, c t2)`.
    pub fn scale(&self, c: W) -> Self {
        UtilityAssignment {
            values: self.values.iter().map(|&x| x * c).collect(),
        }
    }
}

/// Kind of a forcing-cycle step: a directed dag edge or a hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Edge,
    Hop,
}

/// Simple cyclic sequence of dag edges and hops; the infeasibility witness.
///
/// `steps[k]` is the step from `steps[k].0` to `steps[(k+1) % len].0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingCycle {
    steps: Vec<(usize, StepKind)>,
}

impl ForcingCycle {
    pub fn new(steps: Vec<(usize, StepKind)>) -> Self {
        ForcingCycle { steps }
    }

    pub fn steps(&self) -> &[(usize, StepKind)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|(_, k)| *k == StepKind::Edge)
            .count()
    }

    pub fn hop_count(&self) -> usize {
        self.len() - self.edge_count()
    }

    /// Edges over hops, reduced.
    pub fn ratio<W: Weight>(&self) -> Rational<W> {
        Rational::new(w(self.edge_count()), w(self.hop_count()))
    }
}

impl fmt::Display for ForcingCycle {
    /// `0 -> 1 -> 2 ~ 0` (the final step closes the cycle).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, kind) in &self.steps {
            let sep = match kind {
                StepKind::Edge => " -> ",
                StepKind::Hop => " ~ ",
            };
            write!(f, "{v}{sep}")?;
        }
        if let Some((first, _)) = self.steps.first() {
            write!(f, "{first}")?;
        }
        Ok(())
    }
}

/// One violated constraint, with the offending difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation<W: Weight> {
    /// Edge `(u, v)` with `alpha(v) - alpha(u) < t1`.
    EdgeGap { u: usize, v: usize, diff: W },
    /// Hop `{u, v}` with `|alpha(v) - alpha(u)| > t2`.
    HopSpread { u: usize, v: usize, diff: W },
}

/// Outcome of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility<W: Weight> {
    Feasible(UtilityAssignment<W>),
    Infeasible(ForcingCycle),
}

impl<W: Weight> Feasibility<W> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Instrumentation for the reindexed table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelaxStats {
    /// Relaxation passes executed (rows beyond row 0).
    pub passes: usize,
    /// Table cells written, including row 0.
    pub table_cells: usize,
}

impl RelaxStats {
    /// `floor((n-1) t1 / (t1 + t2)) + 2`: the pass count never exceeds this.
    pub fn pass_bound<W: Weight>(n: usize, th: Thresholds<W>) -> usize {
        if n == 0 {
            return 0;
        }
        let num = w::<W>(n - 1) * th.t1();
        let den = th.t1() + th.t2();
        let floor: usize = NumCast::from(num.div_floor(&den)).expect("pass bound fits usize");
        floor + 2
    }
}

/// Decides `(t1, t2)`-representability, returning a satisfying assignment or
/// a forcing cycle whose edge/hop ratio exceeds `t2/t1`.
pub fn check_feasible<W: Weight>(dag: &Dag, th: Thresholds<W>) -> Result<Feasibility<W>, Error> {
    Ok(solve(dag, th)?.0)
}

/// Same as [`check_feasible`] plus pass instrumentation.
pub fn check_feasible_with_stats<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
) -> Result<(Feasibility<W>, RelaxStats), Error> {
    solve(dag, th)
}

/// Back-link of a table cell: how its value was produced.
#[derive(Debug, Clone, Copy)]
enum Link {
    /// Row-0 seed (the zero-weight empty walk).
    Start,
    /// Copied from the same vertex one row up.
    Carry,
    /// Hop edge from `from` (previous row).
    Hop { from: usize },
    /// Reversed dag edge from `from` (same row): `(v, from)` is a dag edge.
    Edge { from: usize },
}

pub(crate) fn solve<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
) -> Result<(Feasibility<W>, RelaxStats), Error> {
    let n = dag.n();
    if n == 0 {
        return Ok((
            Feasibility::Feasible(UtilityAssignment::new(Vec::new())),
            RelaxStats {
                passes: 0,
                table_cells: 0,
            },
        ));
    }
    check_weight_headroom(n, th)?;
    let (t1, t2) = (th.t1(), th.t2());
    let rev_topo: Vec<usize> = dag.topological_sort().into_iter().rev().collect();

    // Row 0: cheapest all-(-t1) walks, seeded from the zero-weight empty walk
    // at every vertex (this plays the role of the virtual source, so
    // disconnected inputs need no special handling).
    let mut prev = vec![W::zero(); n];
    let mut links: Vec<Vec<Link>> = vec![vec![Link::Start; n]];
    dag_relax_linked(dag, t1, &rev_topo, &mut prev, &mut links[0]);

    let num = w::<W>(n - 1) * t1;
    let stop: usize = {
        let f: usize = NumCast::from(num.div_floor(&(t1 + t2))).expect("stop index fits usize");
        f + 1
    };

    let mut scratch = ScanScratch::new(n);
    for i in 1..=stop + 1 {
        let mut row = vec![W::zero(); n];
        let mut row_links = vec![Link::Carry; n];
        let cand = scratch.min_hop_neighbor_finite(dag, &prev);
        for v in 0..n {
            row[v] = prev[v];
            if let Some((u, wu)) = cand[v] {
                let c = wu + t2;
                if c < row[v] {
                    row[v] = c;
                    row_links[v] = Link::Hop { from: u };
                }
            }
        }
        dag_relax_linked(dag, t1, &rev_topo, &mut row, &mut row_links);
        links.push(row_links);
        let stats = RelaxStats {
            passes: i,
            table_cells: (i + 1) * n,
        };
        if row == prev {
            return Ok((Feasibility::Feasible(UtilityAssignment::new(row)), stats));
        }
        if i == stop + 1 {
            let start_v = (0..n)
                .find(|&v| row[v] < prev[v])
                .expect("row differs from previous");
            let cycle = extract_forcing_cycle(&links, i, start_v, n, t1, t2)?;
            return Ok((Feasibility::Infeasible(cycle), stats));
        }
        prev = row;
    }
    unreachable!("loop exits at the stopping index")
}

/// Rejects thresholds whose walk weights could overflow the scalar: every
/// table value is bounded by `n^2 * max(t1, t2)` in magnitude.
fn check_weight_headroom<W: Weight>(n: usize, th: Thresholds<W>) -> Result<(), Error> {
    let nw: W = NumCast::from(n).ok_or(Error::ArithmeticOverflow)?;
    let big = th.t1().max(th.t2());
    nw.checked_mul(&nw)
        .and_then(|x| x.checked_mul(&big))
        .ok_or(Error::ArithmeticOverflow)?;
    Ok(())
}

/// Dag-variant relaxation over the `-t1` edges, recording improving links.
///
/// Processing in reverse topological order finalizes each vertex after all
/// its out-neighbors, so one sweep composes whole `-t1` paths.
fn dag_relax_linked<W: Weight>(
    dag: &Dag,
    t1: W,
    rev_topo: &[usize],
    row: &mut [W],
    links: &mut [Link],
) {
    for &v in rev_topo {
        for &y in dag.out(v) {
            let c = row[y] - t1;
            if c < row[v] {
                row[v] = c;
                links[v] = Link::Edge { from: y };
            }
        }
    }
}

/// Option-aware dag relaxation (`None` = unreachable), used by the
/// exact-hop-count table.
pub(crate) fn dag_relax_opt<W: Weight>(dag: &Dag, t1: W, rev_topo: &[usize], row: &mut [Option<W>]) {
    for &v in rev_topo {
        for &y in dag.out(v) {
            if let Some(wy) = row[y] {
                let c = wy - t1;
                if row[v].is_none_or(|wv| c < wv) {
                    row[v] = Some(c);
                }
            }
        }
    }
}

/// Reusable buffers for the sorted-scan minimum over hop neighborhoods.
pub(crate) struct ScanScratch {
    marked: Vec<bool>,
    order: Vec<usize>,
}

impl ScanScratch {
    pub(crate) fn new(n: usize) -> Self {
        ScanScratch {
            marked: vec![false; n],
            order: Vec::with_capacity(n),
        }
    }

    /// For each vertex `v`, the `(argmin, min)` of `weights` over the hop
    /// neighbors of `v` (ties by smallest id). Sorts the vertices by weight
    /// once, then for each `v` marks `v` and its adjacent vertices and scans
    /// for the first unmarked entry; the scan skips at most `deg(v) + 1`
    /// entries, keeping the whole pass linear in the graph size.
    pub(crate) fn min_hop_neighbor<W: Weight>(
        &mut self,
        dag: &Dag,
        weights: &[Option<W>],
    ) -> Vec<Option<(usize, W)>> {
        let n = dag.n();
        self.order.clear();
        self.order.extend((0..n).filter(|&v| weights[v].is_some()));
        sort_by_weight(&mut self.order, weights);
        let mut result: Vec<Option<(usize, W)>> = vec![None; n];
        #[allow(clippy::needless_range_loop)]
        for v in 0..n {
            self.marked[v] = true;
            for u in dag.und_neighbors(v) {
                self.marked[u] = true;
            }
            for &x in &self.order {
                if !self.marked[x] {
                    result[v] = Some((x, weights[x].unwrap()));
                    break;
                }
            }
            self.marked[v] = false;
            for u in dag.und_neighbors(v) {
                self.marked[u] = false;
            }
        }
        result
    }

    fn min_hop_neighbor_finite<W: Weight>(
        &mut self,
        dag: &Dag,
        weights: &[W],
    ) -> Vec<Option<(usize, W)>> {
        let opt: Vec<Option<W>> = weights.iter().map(|&x| Some(x)).collect();
        self.min_hop_neighbor(dag, &opt)
    }
}

/// Ascending by `(weight, id)`. Counting sort on offset keys when the key
/// range is comparable to `n` (the feasible-side range is at most
/// `(n-1) t1`); otherwise a comparison sort keeps the pass bound independent
/// of the threshold magnitude.
fn sort_by_weight<W: Weight>(order: &mut [usize], weights: &[Option<W>]) {
    if order.len() <= 1 {
        return;
    }
    let min = order
        .iter()
        .map(|&v| weights[v].unwrap())
        .fold(None::<W>, |acc, x| Some(acc.map_or(x, |a| a.min(x))))
        .unwrap();
    let max = order
        .iter()
        .map(|&v| weights[v].unwrap())
        .fold(None::<W>, |acc, x| Some(acc.map_or(x, |a| a.max(x))))
        .unwrap();
    let span = max - min;
    let budget = w::<W>(2 * weights.len() + 64);
    if span <= budget {
        let range: usize = NumCast::from(span).expect("span fits usize");
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); range + 1];
        for &v in order.iter() {
            let key: usize = NumCast::from(weights[v].unwrap() - min).unwrap();
            buckets[key].push(v);
        }
        let mut k = 0;
        for bucket in buckets {
            for v in bucket {
                order[k] = v;
                k += 1;
            }
        }
    } else {
        order.sort_unstable_by_key(|&v| (weights[v].unwrap(), v));
    }
}

/// Walks back-links from an improving cell. Rows are frozen once written, so
/// each link is an exact equality and any vertex repetition closes a cycle
/// whose weight is the sum of its step weights; zero-weight closures are
/// peeled off and the walk continues until a strictly negative cycle (one
/// with edge/hop ratio above `t2/t1`) appears, which the stopping-index
/// argument guarantees.
fn extract_forcing_cycle<W: Weight>(
    links: &[Vec<Link>],
    start_row: usize,
    start_v: usize,
    n: usize,
    t1: W,
    t2: W,
) -> Result<ForcingCycle, Error> {
    let mut seq = vec![start_v];
    let mut kinds: Vec<StepKind> = Vec::new();
    let mut pos: Vec<Option<usize>> = vec![None; n];
    pos[start_v] = Some(0);
    let (mut row, mut v) = (start_row, start_v);
    loop {
        let (kind, from, next_row) = match links[row][v] {
            Link::Start => {
                return Err(Error::Internal(
                    "back-link walk reached the table start without a forcing cycle".into(),
                ))
            }
            Link::Carry => {
                row -= 1;
                continue;
            }
            Link::Hop { from } => (StepKind::Hop, from, row - 1),
            Link::Edge { from } => (StepKind::Edge, from, row),
        };
        kinds.push(kind);
        if let Some(k) = pos[from] {
            let edges = kinds[k..].iter().filter(|&&s| s == StepKind::Edge).count();
            let hops = kinds.len() - k - edges;
            if w::<W>(edges) * t1 > w::<W>(hops) * t2 {
                let steps = seq[k..]
                    .iter()
                    .copied()
                    .zip(kinds[k..].iter().copied())
                    .collect();
                return Ok(ForcingCycle::new(steps));
            }
            for &u in &seq[k + 1..] {
                pos[u] = None;
            }
            seq.truncate(k + 1);
            kinds.truncate(k);
        } else {
            pos[from] = Some(seq.len());
            seq.push(from);
        }
        row = next_row;
        v = from;
    }
}

/// One dag-variant relaxation pass over the reversed (weight `-t1`) edges.
pub fn dag_relaxation<W: Weight>(dag: &Dag, t1: W, weights: &[W]) -> Vec<W> {
    let rev_topo: Vec<usize> = dag.topological_sort().into_iter().rev().collect();
    let mut row = weights.to_vec();
    let mut links = vec![Link::Start; dag.n()];
    dag_relax_linked(dag, t1, &rev_topo, &mut row, &mut links);
    row
}

/// One general relaxation pass over the hop (weight `t2`) edges, loops
/// included: `w'(v) = min(w(v), min over hop neighbors u of w(u) + t2)`.
pub fn hop_relaxation<W: Weight>(dag: &Dag, t2: W, weights: &[W]) -> Vec<W> {
    let mut scratch = ScanScratch::new(dag.n());
    let cand = scratch.min_hop_neighbor_finite(dag, weights);
    weights
        .iter()
        .enumerate()
        .map(|(v, &wv)| match cand[v] {
            Some((_, wu)) => wv.min(wu + t2),
            None => wv,
        })
        .collect()
}

/// Checks an assignment against every constraint; empty result means valid.
pub fn verify_assignment<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
    alpha: &UtilityAssignment<W>,
) -> Result<Vec<Violation<W>>, Error> {
    if alpha.len() != dag.n() {
        return Err(Error::MissingVertex {
            expected: dag.n(),
            got: alpha.len(),
        });
    }
    let mut violations = Vec::new();
    for &(u, v) in dag.edges() {
        let diff = alpha.value(v) - alpha.value(u);
        if diff < th.t1() {
            violations.push(Violation::EdgeGap { u, v, diff });
        }
    }
    for Hop { u, v } in dag.hops() {
        let diff = alpha.value(v) - alpha.value(u);
        if diff.abs() > th.t2() {
            violations.push(Violation::HopSpread { u, v, diff });
        }
    }
    Ok(violations)
}

/// Validates simplicity and step kinds, then returns the edge/hop ratio.
pub fn verify_forcing_cycle<W: Weight>(
    dag: &Dag,
    cycle: &ForcingCycle,
) -> Result<Rational<W>, Error> {
    let steps = cycle.steps();
    if steps.len() < 2 {
        return Err(Error::NotSimple(steps.first().map_or(0, |s| s.0)));
    }
    let mut seen = vec![false; dag.n()];
    for &(v, _) in steps {
        if v >= dag.n() {
            return Err(Error::VertexOutOfRange { v, n: dag.n() });
        }
        if seen[v] {
            return Err(Error::NotSimple(v));
        }
        seen[v] = true;
    }
    for (k, &(u, kind)) in steps.iter().enumerate() {
        let v = steps[(k + 1) % steps.len()].0;
        let ok = match kind {
            StepKind::Edge => dag.has_edge(u, v),
            StepKind::Hop => !dag.adjacent(u, v),
        };
        if !ok {
            return Err(Error::WrongStepKind { position: k, u, v });
        }
    }
    // Edge steps alone would form a directed cycle, which the dag forbids.
    debug_assert!(cycle.hop_count() >= 1);
    Ok(cycle.ratio())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn path3() -> Dag {
        Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn th(t1: i64, t2: i64) -> Thresholds<i64> {
        Thresholds::new(t1, t2).unwrap()
    }

    #[test]
    fn thresholds_validation() {
        assert!(Thresholds::new(1i64, 1).is_ok());
        assert!(matches!(
            Thresholds::new(0i64, 1),
            Err(Error::InvalidThresholds { .. })
        ));
        assert!(matches!(
            Thresholds::new(2i64, 1),
            Err(Error::InvalidThresholds { .. })
        ));
    }

    #[test]
    fn constraint_graph_shape() {
        let d = path3();
        let g = ConstraintGraph::new(&d, th(1, 2));
        assert_eq!(g.edge_count(), d.m() + 2 * d.hop_count());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), g.edge_count());
        assert!(edges.contains(&(1, 0, -1)));
        assert!(edges.contains(&(0, 2, 2)));
        assert!(edges.contains(&(2, 0, 2)));
    }

    #[test]
    fn path3_feasible_at_1_2() {
        // Expected alpha computed by iterated relaxation on the explicit G_d.
        let d = path3();
        match check_feasible(&d, th(1, 2)).unwrap() {
            Feasibility::Feasible(a) => {
                assert_eq!(a.values(), &[-2, -1, 0]);
                assert!(verify_assignment(&d, th(1, 2), &a).unwrap().is_empty());
                match oracle::brute_feasible(&d, th(1, 2)) {
                    oracle::BruteVerdict::Feasible(b) => assert_eq!(b.values(), a.values()),
                    _ => panic!("oracle disagrees"),
                }
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn path3_infeasible_at_1_1() {
        let d = path3();
        match check_feasible(&d, th(1, 1)).unwrap() {
            Feasibility::Infeasible(c) => {
                assert_eq!(
                    c.steps(),
                    &[
                        (0, StepKind::Edge),
                        (1, StepKind::Edge),
                        (2, StepKind::Hop)
                    ]
                );
                let r: Rational<i64> = verify_forcing_cycle(&d, &c).unwrap();
                assert_eq!(r, Rational::new(2, 1));
                assert!(r > th(1, 1).ratio());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn single_edge_feasible_at_1_1() {
        let d = Dag::from_edges(2, &[(0, 1)]).unwrap();
        match check_feasible(&d, th(1, 1)).unwrap() {
            Feasibility::Feasible(a) => assert_eq!(a.values(), &[-1, 0]),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn relaxation_pass_examples() {
        let d = path3();
        assert_eq!(dag_relaxation(&d, 1i64, &[0, 0, 0]), vec![-2, -1, 0]);
        let complete = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(hop_relaxation(&complete, 2i64, &[-1, 0, 3]), vec![-1, 0, 3]);
        let iso = Dag::from_edges(2, &[]).unwrap();
        assert_eq!(hop_relaxation(&iso, 2i64, &[-5, 0]), vec![-5, -3]);
    }

    #[test]
    fn verify_assignment_reports_violations() {
        let d = path3();
        let a = UtilityAssignment::new(vec![-2, -1, 0]);
        assert!(verify_assignment(&d, th(1, 2), &a).unwrap().is_empty());
        let viols = verify_assignment(&d, th(1, 1), &a).unwrap();
        assert_eq!(
            viols,
            vec![Violation::HopSpread {
                u: 0,
                v: 2,
                diff: 2
            }]
        );
        let empty2 = Dag::from_edges(2, &[]).unwrap();
        let zeros = UtilityAssignment::new(vec![0, 0]);
        assert!(verify_assignment(&empty2, th(1, 1), &zeros)
            .unwrap()
            .is_empty());
        assert!(matches!(
            verify_assignment(&d, th(1, 1), &zeros),
            Err(Error::MissingVertex { .. })
        ));
    }

    #[test]
    fn verify_forcing_cycle_checks_kinds() {
        let d = path3();
        let good = ForcingCycle::new(vec![
            (0, StepKind::Edge),
            (1, StepKind::Edge),
            (2, StepKind::Hop),
        ]);
        assert_eq!(
            verify_forcing_cycle::<i64>(&d, &good).unwrap(),
            Rational::new(2, 1)
        );
        let bad = ForcingCycle::new(vec![
            (0, StepKind::Edge),
            (1, StepKind::Hop),
            (2, StepKind::Hop),
        ]);
        assert_eq!(
            verify_forcing_cycle::<i64>(&d, &bad).unwrap_err(),
            Error::WrongStepKind {
                position: 1,
                u: 1,
                v: 2
            }
        );
        let repeated = ForcingCycle::new(vec![
            (0, StepKind::Edge),
            (1, StepKind::Hop),
            (0, StepKind::Hop),
        ]);
        assert_eq!(
            verify_forcing_cycle::<i64>(&d, &repeated).unwrap_err(),
            Error::NotSimple(0)
        );
    }

    #[test]
    fn figure_cycle_ratio_is_five_thirds() {
        let d = oracle::tight_five_thirds();
        let cycle = ForcingCycle::new(vec![
            (0, StepKind::Edge),
            (1, StepKind::Edge),
            (2, StepKind::Hop),
            (3, StepKind::Edge),
            (4, StepKind::Edge),
            (5, StepKind::Hop),
            (6, StepKind::Edge),
            (7, StepKind::Hop),
        ]);
        assert_eq!(
            verify_forcing_cycle::<i64>(&d, &cycle).unwrap(),
            Rational::new(5, 3)
        );
    }

    #[test]
    fn cycle_display_shows_steps() {
        let c = ForcingCycle::new(vec![
            (0, StepKind::Edge),
            (1, StepKind::Edge),
            (2, StepKind::Hop),
        ]);
        assert_eq!(c.to_string(), "0 -> 1 -> 2 ~ 0");
    }

    #[test]
    fn scaling_preserves_feasibility() {
        let d = path3();
        if let Feasibility::Feasible(a) = check_feasible(&d, th(1, 2)).unwrap() {
            let scaled = a.scale(3);
            assert!(verify_assignment(&d, th(3, 6), &scaled).unwrap().is_empty());
        } else {
            panic!("feasible expected");
        }
    }

    #[test]
    fn pass_count_respects_bound() {
        let d = path3();
        let (_, stats) = check_feasible_with_stats(&d, th(1, 2)).unwrap();
        assert!(stats.passes <= RelaxStats::pass_bound(d.n(), th(1, 2)));
        let (_, stats) = check_feasible_with_stats(&d, th(1, 1)).unwrap();
        assert!(stats.passes <= RelaxStats::pass_bound(d.n(), th(1, 1)));
    }

    #[test]
    fn alpha_values_within_range() {
        let d = Dag::from_edges(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        for (t1, t2) in [(1i64, 2), (2, 3), (1, 4)] {
            if let Feasibility::Feasible(a) = check_feasible(&d, th(t1, t2)).unwrap() {
                for v in 0..d.n() {
                    assert!(a.value(v) <= 0);
                    assert!(a.value(v) >= -((d.n() as i64 - 1) * t1));
                }
            }
        }
    }

    #[test]
    fn works_with_i128_scalars() {
        let d = path3();
        let t: Thresholds<i128> = Thresholds::new(1i128, 2).unwrap();
        match check_feasible(&d, t).unwrap() {
            Feasibility::Feasible(a) => assert_eq!(a.values(), &[-2i128, -1, 0]),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn rejects_overflowing_thresholds() {
        let d = path3();
        let t = Thresholds::new(i64::MAX / 2, i64::MAX / 2).unwrap();
        assert_eq!(check_feasible(&d, t).unwrap_err(), Error::ArithmeticOverflow);
    }
}
