//! Brute-force ground truth and instance generators.
//!
//! Everything here exists to certify the optimized algorithms: exhaustive
//! cycle enumeration for the satisfiable ratio, iterated relaxation on the
//! explicit constraint digraph for feasibility, subset/partition search for
//! the NP-hard problems, and deterministic instance families for test
//! corpora. None of it shares code with the fast paths it checks.

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::Dag;
use crate::error::Error;
use crate::feasibility::{ConstraintGraph, Thresholds, UtilityAssignment};
use crate::weight::{w, Rational, Weight};

const CYCLE_ENUM_LIMIT: usize = 12;
const MEAN_ENUM_LIMIT: usize = 10;
const SUBSET_LIMIT: usize = 12;
const PARTITION_LIMIT: usize = 8;

/// Feasibility verdict without a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteVerdict<W: Weight> {
    Feasible(UtilityAssignment<W>),
    Infeasible,
}

impl<W: Weight> BruteVerdict<W> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, BruteVerdict::Feasible(_))
    }
}

/// Iterated relaxation on the explicit `G_d` edge list (O(n^3)); feasible iff
/// no edge relaxes after `n` full passes.
pub fn brute_feasible<W: Weight>(dag: &Dag, th: Thresholds<W>) -> BruteVerdict<W> {
    let n = dag.n();
    if n == 0 {
        return BruteVerdict::Feasible(UtilityAssignment::new(Vec::new()));
    }
    let edges: Vec<(usize, usize, W)> = ConstraintGraph::new(dag, th).edges().collect();
    let mut dist = vec![W::zero(); n];
    for _ in 0..n {
        let mut changed = false;
        for &(u, v, wt) in &edges {
            let c = dist[u] + wt;
            if c < dist[v] {
                dist[v] = c;
                changed = true;
            }
        }
        if !changed {
            return BruteVerdict::Feasible(UtilityAssignment::new(dist));
        }
    }
    for &(u, v, wt) in &edges {
        if dist[u] + wt < dist[v] {
            return BruteVerdict::Infeasible;
        }
    }
    BruteVerdict::Feasible(UtilityAssignment::new(dist))
}

/// Maximum forcing-cycle ratio by depth-first enumeration of simple mixed
/// cycles, clamped to at least 1; weak orders give 0.
pub fn brute_lambda<W: Weight>(dag: &Dag) -> Result<Rational<W>, Error> {
    if dag.is_degenerate() {
        return Ok(Rational::zero());
    }
    Ok(brute_max_forcing_ratio(dag)?.max(Rational::one()))
}

/// The raw maximum (no >= 1 clamp); what a lambda certificate's cycle must
/// attain. Requires at least one mixed cycle, i.e. a nondegenerate dag.
pub fn brute_max_forcing_ratio<W: Weight>(dag: &Dag) -> Result<Rational<W>, Error> {
    let n = dag.n();
    if n > CYCLE_ENUM_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: CYCLE_ENUM_LIMIT,
        });
    }
    let mut best: Option<Rational<W>> = None;
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        max_ratio_dfs(dag, s, s, 1, 0, 0, &mut on_path, &mut best);
        on_path[s] = false;
    }
    best.ok_or_else(|| Error::Internal("no mixed cycle found".into()))
}

/// Extends a simple path whose smallest vertex is the start `s`; every step
/// is forced to be either a dag edge or a hop. Prunes branches that cannot
/// beat the best ratio even if all remaining steps were edges.
#[allow(clippy::too_many_arguments)]
fn max_ratio_dfs<W: Weight>(
    dag: &Dag,
    s: usize,
    u: usize,
    path_len: usize,
    edges: usize,
    hops: usize,
    on_path: &mut Vec<bool>,
    best: &mut Option<Rational<W>>,
) {
    let n = dag.n();
    if let Some(b) = *best {
        let cap = Rational::new(w(edges + (n - path_len) + 1), w(hops.max(1)));
        if cap <= b {
            return;
        }
    }
    let consider = |v: usize, is_edge: bool, best: &mut Option<Rational<W>>, on_path: &mut Vec<bool>| {
        let (e, h) = if is_edge {
            (edges + 1, hops)
        } else {
            (edges, hops + 1)
        };
        if v == s {
            if path_len >= 2 && h >= 1 {
                let r = Rational::new(w::<W>(e), w(h));
                if best.is_none_or(|b| r > b) {
                    *best = Some(r);
                }
            }
        } else if v > s && !on_path[v] {
            on_path[v] = true;
            max_ratio_dfs(dag, s, v, path_len + 1, e, h, on_path, best);
            on_path[v] = false;
        }
    };
    for &v in dag.out(u) {
        consider(v, true, best, on_path);
    }
    for v in 0..n {
        if v != u && !dag.adjacent(u, v) {
            consider(v, false, best, on_path);
        }
    }
}

/// Minimum mean weight over simple cycles of the explicit `G_d`
/// (`(i t2 - j t1) / (i + j)` for a cycle of `j` reversed edges and `i` hop
/// edges); `None` when `G_d` is acyclic.
pub fn brute_min_cycle_mean<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
) -> Result<Option<Rational<W>>, Error> {
    let n = dag.n();
    if n > MEAN_ENUM_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: MEAN_ENUM_LIMIT,
        });
    }
    let mut best: Option<Rational<W>> = None;
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        min_mean_dfs(dag, th, s, s, 1, 0, 0, &mut on_path, &mut best);
        on_path[s] = false;
    }
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn min_mean_dfs<W: Weight>(
    dag: &Dag,
    th: Thresholds<W>,
    s: usize,
    u: usize,
    path_len: usize,
    edges: usize,
    hops: usize,
    on_path: &mut Vec<bool>,
    best: &mut Option<Rational<W>>,
) {
    let n = dag.n();
    let consider = |v: usize, is_edge: bool, best: &mut Option<Rational<W>>, on_path: &mut Vec<bool>| {
        let (e, h) = if is_edge {
            (edges + 1, hops)
        } else {
            (edges, hops + 1)
        };
        if v == s {
            if path_len >= 2 {
                let weight = w::<W>(h) * th.t2() - w::<W>(e) * th.t1();
                let mean = Rational::new(weight, w(e + h));
                if best.is_none_or(|b| mean < b) {
                    *best = Some(mean);
                }
            }
        } else if v > s && !on_path[v] {
            on_path[v] = true;
            min_mean_dfs(dag, th, s, v, path_len + 1, e, h, on_path, best);
            on_path[v] = false;
        }
    };
    for &v in dag.out(u) {
        consider(v, true, best, on_path);
    }
    for v in 0..n {
        if v != u && !dag.adjacent(u, v) {
            consider(v, false, best, on_path);
        }
    }
}

/// Binary search over all candidate ratios `j/i` with `1 <= i <= j`,
/// `i + j <= n`, probing each with [`brute_feasible`].
pub fn binary_search_lambda<W: Weight>(dag: &Dag) -> Rational<W> {
    if dag.is_degenerate() {
        return Rational::zero();
    }
    let n = dag.n();
    let mut candidates: Vec<Rational<W>> = Vec::new();
    for i in 1..=n / 2 {
        for j in i..=(n - i) {
            candidates.push(Rational::new(w(j), w(i)));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    let feasible = |r: &Rational<W>| {
        let th = Thresholds::new(*r.denom(), *r.numer()).expect("candidate has den <= num");
        brute_feasible(dag, th).is_feasible()
    };
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(&candidates[hi]), "lambda <= n - 1 always holds");
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn check_subset_limit(n: usize) -> Result<(), Error> {
    if n > SUBSET_LIMIT {
        Err(Error::TooLarge {
            n,
            limit: SUBSET_LIMIT,
        })
    } else {
        Ok(())
    }
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

fn best_subset(dag: &Dag, keep: impl Fn(usize, usize) -> bool) -> Result<Vec<usize>, Error> {
    check_subset_limit(dag.n())?;
    let n = dag.n();
    let mut best: u32 = 0;
    for mask in 1u32..(1 << n) {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let verts = mask_vertices(mask);
        let ok = verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| keep(u, v)));
        if ok {
            best = mask;
        }
    }
    Ok(mask_vertices(best))
}

/// Exhaustive maximum clique (underlying undirected graph), n <= 12.
pub fn brute_max_clique(dag: &Dag) -> Result<Vec<usize>, Error> {
    if dag.n() == 0 {
        return Ok(Vec::new());
    }
    best_subset(dag, |u, v| dag.adjacent(u, v))
}

/// Exhaustive maximum independent set, n <= 12.
pub fn brute_independent_set(dag: &Dag) -> Result<Vec<usize>, Error> {
    if dag.n() == 0 {
        return Ok(Vec::new());
    }
    best_subset(dag, |u, v| !dag.adjacent(u, v))
}

/// Minimum partition of the vertices into classes satisfying `good_class`,
/// via subset dynamic programming (O(3^n)).
fn min_partition(dag: &Dag, good_pair: impl Fn(usize, usize) -> bool) -> Result<Vec<Vec<usize>>, Error> {
    let n = dag.n();
    if n > PARTITION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: PARTITION_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let full: u32 = (1 << n) - 1;
    let mut good = vec![false; (full + 1) as usize];
    for mask in 1u32..=full {
        let verts = mask_vertices(mask);
        good[mask as usize] = verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| good_pair(u, v)));
    }
    let mut dp = vec![u32::MAX; (full + 1) as usize];
    let mut choice = vec![0u32; (full + 1) as usize];
    dp[0] = 0;
    for mask in 1u32..=full {
        let low = mask & mask.wrapping_neg();
        let mut s = mask;
        while s > 0 {
            if s & low != 0 && good[s as usize] && dp[(mask ^ s) as usize] != u32::MAX {
                let c = dp[(mask ^ s) as usize] + 1;
                if c < dp[mask as usize] {
                    dp[mask as usize] = c;
                    choice[mask as usize] = s;
                }
            }
            s = (s - 1) & mask;
        }
    }
    let mut classes = Vec::new();
    let mut mask = full;
    while mask > 0 {
        let s = choice[mask as usize];
        classes.push(mask_vertices(s));
        mask ^= s;
    }
    classes.reverse();
    Ok(classes)
}

/// Minimum proper coloring (classes independent), n <= 8.
pub fn brute_chromatic(dag: &Dag) -> Result<Vec<Vec<usize>>, Error> {
    min_partition(dag, |u, v| !dag.adjacent(u, v))
}

/// Minimum clique cover (classes are cliques), n <= 8.
pub fn brute_clique_cover(dag: &Dag) -> Result<Vec<Vec<usize>>, Error> {
    min_partition(dag, |u, v| dag.adjacent(u, v))
}

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

/// Every labeled dag on `n <= 4` vertices: each unordered pair is absent or
/// oriented one of two ways; cyclic assignments are filtered out. Counts are
/// 1, 1, 3, 25, 543 for n = 0..=4.
pub fn all_dags(n: usize) -> Result<Vec<Dag>, Error> {
    if n > 4 {
        return Err(Error::TooLarge { n, limit: 4 });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut state = vec![0u8; pairs.len()];
    let mut out = Vec::new();
    loop {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .zip(state.iter())
            .filter_map(|(&(u, v), &s)| match s {
                1 => Some((u, v)),
                2 => Some((v, u)),
                _ => None,
            })
            .collect();
        match Dag::from_edges(n, &edges) {
            Ok(d) => out.push(d),
            Err(Error::CycleDetected(_)) => {}
            Err(e) => return Err(e),
        }
        let mut i = 0;
        loop {
            if i == state.len() {
                return Ok(out);
            }
            state[i] += 1;
            if state[i] < 3 {
                break;
            }
            state[i] = 0;
            i += 1;
        }
    }
}

/// Random dag: undirected G(n, p) oriented along a uniformly random
/// topological order. Fully determined by `(n, p, seed)`.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Result<Dag, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("edge probability {p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                if rank[u] < rank[v] {
                    edges.push((u, v));
                } else {
                    edges.push((v, u));
                }
            }
        }
    }
    Ok(Dag::from_edges(n, &edges).expect("orientation along an order is acyclic"))
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> Result<Dag, Error> {
    if n == 0 {
        return Err(Error::BadParams("path needs n >= 1".into()));
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(Dag::from_edges(n, &edges).unwrap())
}

/// A chain (total order) on `n - 1` vertices plus one isolated vertex; its
/// satisfiable ratio is `(n - 2) / 2`.
pub fn chain_plus_isolated(n: usize) -> Result<Dag, Error> {
    if n < 2 {
        return Err(Error::BadParams("chain_plus_isolated needs n >= 2".into()));
    }
    let mut edges = Vec::new();
    for u in 0..(n - 1) {
        for v in (u + 1)..(n - 1) {
            edges.push((u, v));
        }
    }
    Ok(Dag::from_edges(n, &edges).unwrap())
}

/// Orients a properly 3-colored (or k-colored) undirected graph from the
/// smaller color index to the larger; the class indices themselves are a
/// satisfying assignment for `(1, 2)`, so the result always has ratio <= 2.
pub fn from_colored_graph(
    n: usize,
    edges: &[(usize, usize)],
    classes: &[usize],
) -> Result<Dag, Error> {
    if classes.len() != n {
        return Err(Error::BadParams(format!(
            "{} class labels for {} vertices",
            classes.len(),
            n
        )));
    }
    let mut oriented = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { v: u.max(v), n });
        }
        if classes[u] == classes[v] {
            return Err(Error::BadParams(format!(
                "edge ({u}, {v}) joins two vertices of class {}",
                classes[u]
            )));
        }
        if classes[u] < classes[v] {
            oriented.push((u, v));
        } else {
            oriented.push((v, u));
        }
    }
    Dag::from_edges(n, &oriented)
}

/// Random properly 3-colored graph pushed through [`from_colored_graph`].
pub fn random_colored3(n: usize, p: f64, seed: u64) -> Result<(Dag, Vec<usize>), Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("edge probability {p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3usize)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if classes[u] != classes[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let dag = from_colored_graph(n, &edges, &classes)?;
    Ok((dag, classes))
}

/// Eight-vertex transitive dag with satisfiable ratio exactly 5/3, carrying a
/// forcing cycle of five edges and three hops. Utilities
/// `[0, 3, 6, 1, 4, 7, 2, 5]` satisfy `(3, 5)`: pairs at difference >= 3 are
/// edges except the three difference-5 pairs left non-adjacent to close the
/// cycle `0 -e-> 1 -e-> 2 ~ 3 -e-> 4 -e-> 5 ~ 6 -e-> 7 ~ 0`.
pub fn tight_five_thirds() -> Dag {
    let alpha: [i64; 8] = [0, 3, 6, 1, 4, 7, 2, 5];
    let skip = [(3usize, 2usize), (6, 5), (0, 7)];
    let mut edges = Vec::new();
    for u in 0..8 {
        for v in 0..8 {
            if u != v && alpha[v] - alpha[u] >= 3 && !skip.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Dag::from_edges(8, &edges).unwrap()
}

// ---------------------------------------------------------------------------
// Test corpus
// ---------------------------------------------------------------------------

/// A named, reproducible instance.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub dag: Dag,
}

/// Deterministic instance families used by the verification suites.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter()
    }

    fn push(&mut self, name: String, dag: Dag) {
        self.entries.push(CorpusEntry { name, dag });
    }

    /// Every labeled dag on 1..=4 vertices.
    pub fn exhaustive_small() -> Corpus {
        let mut c = Corpus::default();
        for n in 1..=4 {
            for (i, d) in all_dags(n).unwrap().into_iter().enumerate() {
                c.push(format!("all{n}/{i}"), d);
            }
        }
        c
    }

    /// `per_n` seeded random dags for each n in 5..=8, densities cycling
    /// through a fixed set.
    pub fn random_mid(per_n: usize) -> Corpus {
        let densities = [0.15, 0.3, 0.5, 0.7];
        let mut c = Corpus::default();
        for n in 5..=8usize {
            for k in 0..per_n {
                let p = densities[k % densities.len()];
                let seed = (n as u64) * 1000 + k as u64;
                c.push(
                    format!("rand{n}/{k}"),
                    random_dag(n, p, seed).unwrap(),
                );
            }
        }
        c
    }

    /// Structured families: paths, chains with an isolated vertex, coloring
    /// reductions, and the tight 5/3 instance.
    pub fn structured() -> Corpus {
        let mut c = Corpus::default();
        for n in 3..=12 {
            c.push(format!("path{n}"), path(n).unwrap());
        }
        for n in 4..=12 {
            c.push(format!("chain{n}"), chain_plus_isolated(n).unwrap());
        }
        for (i, (n, p, seed)) in [(6, 0.5, 11u64), (7, 0.4, 12), (8, 0.6, 13)]
            .into_iter()
            .enumerate()
        {
            let (dag, _) = random_colored3(n, p, seed).unwrap();
            c.push(format!("colored3/{i}"), dag);
        }
        c.push("tight53".into(), tight_five_thirds());
        c
    }

    /// The full acceptance corpus.
    pub fn acceptance(random_per_n: usize) -> Corpus {
        let mut c = Corpus::exhaustive_small();
        c.entries.extend(Corpus::random_mid(random_per_n).entries);
        c.entries.extend(Corpus::structured().entries);
        c
    }
}
