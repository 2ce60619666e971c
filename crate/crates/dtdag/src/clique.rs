//! Maximum clique via clique-extendable orderings.
//!
//! A topological sort of a nondegenerate dag is a k-clique extendable
//! ordering for `k = floor(lambda) + 1`, so a maximum clique of the
//! underlying undirected graph falls out of a dynamic program over the
//! enumerated k-cliques: sorted by reverse-tuple lexicographic order, cliques
//! sharing their last `k - 1` members form consecutive blocks; the label of a
//! clique (largest clique ending with it) is one more than the best label in
//! the block matching its first `k - 1` members.
//!
//! [`max_clique_exact`] stages k = 2, then 3, returning early whenever the
//! candidate verifies as a clique, and falls back to the guaranteed
//! `floor(lambda) + 1`; `strict` mode jumps straight to the guaranteed stage.

use std::collections::HashMap;

use num::One;

use crate::dag::Dag;
use crate::error::Error;
use crate::feasibility::UtilityAssignment;
use crate::lambda::{certify_lambda, clique_parameter, compute_lambda};
use crate::weight::{w, Rational, Weight};
use crate::DefaultWeight;

/// All k-vertex cliques of the underlying undirected graph, each sorted by
/// id, listed in lexicographic order. Recursion follows a degeneracy
/// ordering, so each clique is emitted exactly once.
pub fn enumerate_k_cliques(dag: &Dag, k: usize) -> Vec<Vec<usize>> {
    assert!(k >= 1, "clique size must be positive");
    let n = dag.n();
    if k == 1 {
        return (0..n).map(|v| vec![v]).collect();
    }
    let rank = degeneracy_rank(dag);
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for u in dag.und_neighbors(v) {
            if rank[u] > rank[v] {
                fwd[v].push(u);
            }
        }
    }
    for f in fwd.iter_mut() {
        f.sort_unstable_by_key(|&u| rank[u]);
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        prefix.push(v);
        extend_cliques(dag, k, &mut prefix, &fwd[v], &mut out);
        prefix.pop();
    }
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort_unstable();
    out
}

fn extend_cliques(
    dag: &Dag,
    k: usize,
    prefix: &mut Vec<usize>,
    cands: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() + cands.len() < k {
        return;
    }
    for (idx, &u) in cands.iter().enumerate() {
        if prefix.len() + 1 == k {
            let mut clique = prefix.clone();
            clique.push(u);
            out.push(clique);
        } else {
            let next: Vec<usize> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&x| dag.adjacent(x, u))
                .collect();
            prefix.push(u);
            extend_cliques(dag, k, prefix, &next, out);
            prefix.pop();
        }
    }
}

/// Removal rank under repeated minimum-degree deletion (ties by id).
fn degeneracy_rank(dag: &Dag) -> Vec<usize> {
    let n = dag.n();
    let mut deg: Vec<usize> = (0..n).map(|v| dag.und_degree(v)).collect();
    let mut removed = vec![false; n];
    let mut rank = vec![0usize; n];
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        rank[v] = step;
        for u in dag.und_neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    rank
}

/// True iff the vertices are pairwise adjacent (and distinct).
pub fn is_clique(dag: &Dag, verts: &[usize]) -> bool {
    verts
        .iter()
        .enumerate()
        .all(|(i, &u)| verts[i + 1..].iter().all(|&v| u != v && dag.adjacent(u, v)))
}

/// Runs the block dynamic program on `order`, assuming it is k-clique
/// extendable; if it is not, the result may fail to be a clique (callers
/// verify). Uniform weights make the labels clique sizes.
pub fn max_clique_with_ordering(dag: &Dag, order: &[usize], k: usize) -> Vec<usize> {
    let ones = vec![DefaultWeight::one(); dag.n()];
    block_dp(dag, order, k, &ones)
}

/// Weighted variant: labels accumulate vertex weights, which must be
/// positive.
pub fn max_weight_clique_with_ordering<W: Weight>(
    dag: &Dag,
    order: &[usize],
    k: usize,
    weights: &[W],
) -> Result<Vec<usize>, Error> {
    if weights.len() != dag.n() {
        return Err(Error::MissingVertex {
            expected: dag.n(),
            got: weights.len(),
        });
    }
    if let Some(v) = (0..dag.n()).find(|&v| weights[v] <= W::zero()) {
        return Err(Error::NonpositiveWeight(v));
    }
    Ok(block_dp(dag, order, k, weights))
}

fn block_dp<W: Weight>(dag: &Dag, order: &[usize], k: usize, weights: &[W]) -> Vec<usize> {
    let n = dag.n();
    if n == 0 {
        return Vec::new();
    }
    debug_assert_eq!(order.len(), n);
    if k == 1 {
        let v = (0..n)
            .max_by(|&a, &b| weights[a].cmp(&weights[b]).then(b.cmp(&a)))
            .unwrap();
        return vec![v];
    }
    let cliques = enumerate_k_cliques(dag, k);
    if cliques.is_empty() {
        return heaviest_small_clique(dag, k, weights);
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // Tuple = clique vertices in ordering position, ascending.
    let tuples: Vec<Vec<usize>> = cliques
        .into_iter()
        .map(|mut c| {
            c.sort_unstable_by_key(|&v| pos[v]);
            c
        })
        .collect();
    let count = tuples.len();
    let slot_pos = |c: usize, slot: usize| pos[tuples[c][slot]];

    // Reverse-tuple lexicographic order: LSD radix over slots 0..k, most
    // significant slot (the last tuple element) sorted last.
    let mut table: Vec<usize> = (0..count).collect();
    for slot in 0..k {
        counting_sort(&mut table, n, |c| slot_pos(c, slot));
    }

    // Consecutive runs sharing slots 1..k are the blocks.
    let same_suffix = |a: usize, b: usize| (1..k).all(|s| tuples[a][s] == tuples[b][s]);
    let mut block_of = vec![0usize; count];
    let mut block_repr: Vec<usize> = Vec::new();
    for (t, &c) in table.iter().enumerate() {
        if t == 0 || !same_suffix(table[t - 1], c) {
            block_repr.push(c);
        }
        block_of[c] = block_repr.len() - 1;
    }

    // Wire each clique to the block matching its first k-1 elements by
    // merging two lists ordered by the same reverse-lexicographic comparator.
    let mut by_prefix: Vec<usize> = (0..count).collect();
    for slot in 0..k - 1 {
        counting_sort(&mut by_prefix, n, |c| slot_pos(c, slot));
    }
    // Compares block b's suffix key against clique c's prefix key.
    let cmp_keys = |b: usize, c: usize| {
        for off in (0..k - 1).rev() {
            let x = slot_pos(block_repr[b], 1 + off);
            let y = slot_pos(c, off);
            if x != y {
                return x.cmp(&y);
            }
        }
        std::cmp::Ordering::Equal
    };
    let mut relevant: Vec<Option<usize>> = vec![None; count];
    let mut bi = 0usize;
    for &c in &by_prefix {
        while bi < block_repr.len() && cmp_keys(bi, c) == std::cmp::Ordering::Less {
            bi += 1;
        }
        if bi < block_repr.len() && cmp_keys(bi, c) == std::cmp::Ordering::Equal {
            relevant[c] = Some(bi);
        }
    }

    // One sweep in table order; every member of a block precedes any clique
    // that references it, so block maxima are complete when read.
    let mut block_best: Vec<Option<(W, usize)>> = vec![None; block_repr.len()];
    let mut best: Option<(W, usize)> = None;
    let mut labels: Vec<W> = vec![W::zero(); count];
    for &c in &table {
        let tuple_weight = || {
            tuples[c]
                .iter()
                .fold(W::zero(), |acc, &v| acc + weights[v])
        };
        let label = match relevant[c].and_then(|b| block_best[b]) {
            Some((blabel, _)) => blabel + weights[tuples[c][k - 1]],
            None => tuple_weight(),
        };
        labels[c] = label;
        let own = block_of[c];
        if block_best[own].is_none_or(|(l, _)| label > l) {
            block_best[own] = Some((label, c));
        }
        if best.is_none_or(|(l, _)| label > l) {
            best = Some((label, c));
        }
    }

    // Reconstruct by walking relevant blocks backwards, prepending each
    // leading element.
    let (_, best_c) = best.unwrap();
    let mut result = tuples[best_c].clone();
    let mut cur = best_c;
    while let Some((_, next)) = relevant[cur].and_then(|b| block_best[b]) {
        result.push(tuples[next][0]);
        cur = next;
    }
    result.sort_unstable();
    result
}

/// When no k-clique exists: exhaust sizes below k, heaviest first found wins
/// (largest size wins under uniform weights).
fn heaviest_small_clique<W: Weight>(dag: &Dag, k: usize, weights: &[W]) -> Vec<usize> {
    let mut best: Option<(W, Vec<usize>)> = None;
    for i in (1..k).rev() {
        for c in enumerate_k_cliques(dag, i) {
            let wt = c.iter().fold(W::zero(), |acc, &v| acc + weights[v]);
            if best.as_ref().is_none_or(|(b, _)| wt > *b) {
                best = Some((wt, c));
            }
        }
    }
    best.expect("1-cliques always exist").1
}

fn counting_sort(idx: &mut Vec<usize>, key_range: usize, key: impl Fn(usize) -> usize) {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); key_range];
    for &c in idx.iter() {
        buckets[key(c)].push(c);
    }
    let mut out = Vec::with_capacity(idx.len());
    for bucket in buckets {
        out.extend(bucket);
    }
    *idx = out;
}

/// Exact maximum clique, handled per connected component. Stages k = 2 and
/// k = 3 run first and return as soon as their candidate verifies; otherwise
/// lambda is computed and the `floor(lambda) + 1` stage is guaranteed. With
/// `strict` the guaranteed stage runs alone.
pub fn max_clique_exact(dag: &Dag, strict: bool) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for comp in dag.undirected_components() {
        let sub = dag.induced(&comp);
        let local = component_max_clique(&sub, strict);
        if local.len() > best.len() {
            best = local.into_iter().map(|i| comp[i]).collect();
        }
    }
    best
}

fn component_max_clique(sub: &Dag, strict: bool) -> Vec<usize> {
    let n = sub.n();
    if n == 1 {
        return vec![0];
    }
    let topo = sub.topological_sort();
    let ones = vec![DefaultWeight::one(); n];
    if sub.is_degenerate() {
        // Weak orders are transitive, so k = 2 is already guaranteed.
        return block_dp(sub, &topo, 2, &ones);
    }
    if !strict {
        let r2 = block_dp(sub, &topo, 2, &ones);
        if is_clique(sub, &r2) {
            return r2;
        }
        let r3 = block_dp(sub, &topo, 3, &ones);
        if is_clique(sub, &r3) {
            return r3;
        }
    }
    let lambda = compute_lambda::<DefaultWeight>(sub);
    let k = clique_parameter(lambda);
    let r = block_dp(sub, &topo, k, &ones);
    assert!(
        is_clique(sub, &r),
        "topological sort must be clique-extendable at floor(lambda) + 1"
    );
    r
}

/// Keeps only the edges whose utility difference reaches `span`.
pub fn prune_edges_below_span<W: Weight>(
    dag: &Dag,
    alpha: &UtilityAssignment<W>,
    span: W,
) -> Dag {
    let edges: Vec<(usize, usize)> = dag
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| alpha.value(v) - alpha.value(u) >= span)
        .collect();
    let mut pruned = Dag::from_edges(dag.n(), &edges).expect("edge subset of a dag is a dag");
    for (&v, label) in dag.labels() {
        pruned = pruned.with_label(v, label.clone()).unwrap();
    }
    pruned
}

/// Clique within a factor `i` of the maximum: certify lambda, drop edges
/// whose utility difference is below `i` at unit-`t1` scale, and solve the
/// pruned dag exactly (its lambda shrinks to at most `lambda / i`).
pub fn max_clique_approx<W: Weight>(dag: &Dag, factor: usize) -> Result<Vec<usize>, Error> {
    let lambda = compute_lambda::<W>(dag);
    if factor < 1 || Rational::from_integer(w::<W>(factor)) > lambda {
        return Err(Error::InvalidFactor {
            factor,
            lambda: lambda.to_string(),
        });
    }
    let cert = certify_lambda::<W>(dag)?;
    let span = w::<W>(factor) * cert.thresholds.t1();
    let pruned = prune_edges_below_span(dag, &cert.assignment, span);
    Ok(max_clique_exact(&pruned, false))
}

/// Direct check of the k-clique extendable ordering definition: whenever two
/// overlapping k-cliques share k-1 vertices and their private vertices are
/// the extremes of the union in `order`, those two must be adjacent.
pub fn check_k_clique_extendable(dag: &Dag, order: &[usize], k: usize) -> bool {
    if k < 2 || dag.n() == 0 {
        return true;
    }
    let mut pos = vec![0usize; dag.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let cliques = enumerate_k_cliques(dag, k);
    let mut groups: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for (ci, clique) in cliques.iter().enumerate() {
        for omit in 0..k {
            let mut key = clique.clone();
            let extra = key.remove(omit);
            groups.entry(key).or_default().push((extra, ci));
        }
    }
    for (key, members) in groups {
        for (a, &(xa, _)) in members.iter().enumerate() {
            for &(xb, _) in &members[a + 1..] {
                let lo = pos[xa].min(pos[xb]);
                let hi = pos[xa].max(pos[xb]);
                let kmin = key.iter().map(|&v| pos[v]).min().unwrap();
                let kmax = key.iter().map(|&v| pos[v]).max().unwrap();
                let extremes = lo < kmin && hi > kmax;
                if extremes && !dag.adjacent(xa, xb) {
                    return false;
                }
            }
        }
    }
    true
}
