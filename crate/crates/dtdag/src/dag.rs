//! Validated directed acyclic graphs with dense vertex ids.
//!
//! Every other module consumes [`Dag`]: the constructor rejects self-loops,
//! duplicate edges and directed cycles, so downstream code never re-checks
//! acyclicity. Vertices are `0..n`; optional string labels live in a side
//! table and never affect algorithm output.

use std::collections::{BTreeMap, HashSet};

use crate::error::Error;

/// Immutable dag with out/in adjacency and O(1) edge membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_set: HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

/// Unordered non-adjacent pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hop {
    pub u: usize,
    pub v: usize,
}

impl Hop {
    pub fn new(a: usize, b: usize) -> Self {
        Hop {
            u: a.min(b),
            v: a.max(b),
        }
    }
}

/// Whether a dag models a weak order, and if so its level structure.
///
/// In the degenerate case `(u, v)` is an edge iff `level[u] < level[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyClass {
    Degenerate { levels: Vec<usize> },
    Nondegenerate,
}

impl Dag {
    /// Builds a dag from an edge list, validating ids, simplicity and acyclicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut edge_set = HashSet::with_capacity(edges.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !edge_set.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        let mut edges: Vec<(usize, usize)> = edges.to_vec();
        edges.sort_unstable();
        let dag = Dag {
            n,
            out_adj,
            in_adj,
            edge_set,
            edges,
            labels: BTreeMap::new(),
        };
        if let Some(cycle) = dag.find_directed_cycle() {
            return Err(Error::CycleDetected(cycle));
        }
        Ok(dag)
    }

    /// Attaches a display label to a vertex (construction-time only).
    pub fn with_label(mut self, v: usize, label: impl Into<String>) -> Result<Self, Error> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        self.labels.insert(v, label.into());
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set.contains(&(u, v))
    }

    /// Adjacent in the underlying undirected graph.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// Neighbors in the underlying undirected graph. Out- and in-neighbor
    /// sets are disjoint (2-cycles are rejected at construction).
    pub fn und_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[v].iter().chain(self.in_adj[v].iter()).copied()
    }

    pub fn und_degree(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(|s| s.as_str())
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Number of hops without materializing them.
    pub fn hop_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.m()
    }

    /// All unordered non-adjacent pairs, sorted.
    pub fn hops(&self) -> Vec<Hop> {
        let mut out = Vec::with_capacity(self.hop_count());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adjacent(u, v) {
                    out.push(Hop { u, v });
                }
            }
        }
        out
    }

    /// Kahn's algorithm with smallest-id-first tie-breaking, so the order is
    /// reproducible byte-for-byte.
    pub fn topological_sort(&self) -> Vec<usize> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_adj[v].len()).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        debug_assert_eq!(order.len(), self.n);
        order
    }

    /// True iff every pair of consecutive edges composes to an edge.
    pub fn is_transitive(&self) -> bool {
        for v in 0..self.n {
            for &u in &self.in_adj[v] {
                for &w in &self.out_adj[v] {
                    if !self.has_edge(u, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Weak-order detection. Levels are longest-path depths; the dag is a
    /// weak order iff every edge climbs a level and the edge count equals the
    /// number of cross-level pairs (then edges = cross-level pairs exactly).
    pub fn classify_degenerate(&self) -> DegeneracyClass {
        let levels = self.longest_path_levels();
        for &(u, v) in &self.edges {
            if levels[u] >= levels[v] {
                return DegeneracyClass::Nondegenerate;
            }
        }
        let height = levels.iter().copied().max().map_or(0, |h| h + 1);
        let mut sizes = vec![0usize; height];
        for &l in &levels {
            sizes[l] += 1;
        }
        let mut cross_pairs = 0usize;
        let mut seen = 0usize;
        for &c in &sizes {
            cross_pairs += seen * c;
            seen += c;
        }
        if cross_pairs == self.m() {
            DegeneracyClass::Degenerate { levels }
        } else {
            DegeneracyClass::Nondegenerate
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.classify_degenerate(), DegeneracyClass::Degenerate { .. })
    }

    /// level[v] = length of the longest directed path ending at v.
    pub fn longest_path_levels(&self) -> Vec<usize> {
        let mut levels = vec![0usize; self.n];
        for &v in &self.topological_sort() {
            for &u in &self.in_adj[v] {
                levels[v] = levels[v].max(levels[u] + 1);
            }
        }
        levels
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest member.
    pub fn undirected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.und_neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Induced subdag on `verts` (must be sorted and duplicate-free); vertex
    /// `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Dag {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &v in verts {
            for &w in &self.out_adj[v] {
                if w < self.n && index[w] != usize::MAX && index[v] != usize::MAX {
                    edges.push((index[v], index[w]));
                }
            }
        }
        Dag::from_edges(verts.len(), &edges).expect("induced subgraph of a dag is a dag")
    }

    fn find_directed_cycle(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_adj[v].len()).collect();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0usize;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if removed == self.n {
            return None;
        }
        // Every residual vertex keeps an incoming residual edge (its indegree
        // never reached zero), so walking predecessors must revisit a vertex.
        let residual: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
        let start = (0..self.n).find(|&v| residual[v]).unwrap();
        let mut pos = vec![usize::MAX; self.n];
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if pos[v] != usize::MAX {
                let mut cycle = path[pos[v]..].to_vec();
                cycle.reverse();
                return Some(cycle);
            }
            pos[v] = path.len();
            path.push(v);
            v = *self.in_adj[v]
                .iter()
                .find(|&&w| residual[w])
                .expect("residual vertex keeps an incoming residual edge");
        }
    }
}
