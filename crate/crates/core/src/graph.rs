//! Simple undirected graphs on up to 64 vertices with bitmask adjacency rows.
//!
//! Clique extension is a word-parallel intersection of neighbor masks, which
//! is what the arrowing search spends most of its time on. Graphs are
//! immutable after construction and cheap to clone and share across threads.

use std::fmt;

use thiserror::Error;

/// Hard cap imposed by the single-word adjacency rows (and by the short
/// graph6 format, which tops out at 62).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the {MAX_VERTICES}-vertex limit")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A subset of `[n]` as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut mask = 0u64;
        for v in iter {
            debug_assert!(v < MAX_VERTICES);
            mask |= 1u64 << v;
        }
        VertexSet(mask)
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph; `rows[v]` is the neighbor bitset of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    /// `K_n` with vertex set `[n]`.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        if n == 0 {
            return Ok(g);
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for v in 0..n {
            g.rows[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        if n < 3 {
            return Ok(g); // degenerate, no edges
        }
        for v in 0..n {
            g.set_edge(v, (v + 1) % n)?;
        }
        Ok(g)
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.set_edge(u, v)?;
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        self.rows[u] |= 1u64 << v;
        self.rows[v] |= 1u64 << u;
        Ok(())
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Graph {
        debug_assert_eq!(rows.len(), n);
        Graph { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.rows[u] >> v) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Canonical edge index of `{u, v}`: colex position among all pairs,
    /// i.e. `(0,1), (0,2), (1,2), (0,3), ...` — the graph6 bit order.
    pub fn edge_index(u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        b * (b - 1) / 2 + a
    }

    /// Edges in canonical (colex) order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 1..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Graph on `|S|` relabeled vertices preserving adjacency; relabeling is
    /// by ascending original index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Graph {
        let verts: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut g = Graph {
            n: verts.len(),
            rows: vec![0; verts.len()],
        };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.rows[i] |= 1u64 << j;
                    g.rows[j] |= 1u64 << i;
                }
            }
        }
        g
    }

    /// Number of edges inside `S`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let mask = s.mask();
        let mut total = 0usize;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if v < self.n {
                total += (self.rows[v] & mask).count_ones() as usize;
            }
        }
        total / 2
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let verts = s.to_vec();
        for (i, &u) in verts.iter().enumerate() {
            if u >= self.n {
                return false;
            }
            for &v in &verts[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Lexicographically first clique on `t` vertices, if any.
    pub fn find_clique(&self, t: usize) -> Option<VertexSet> {
        if t == 0 {
            return Some(VertexSet::EMPTY);
        }
        if t > self.n {
            return None;
        }
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.extend_clique(0, all, t).map(VertexSet)
    }

    fn extend_clique(&self, chosen: u64, cand: u64, need: usize) -> Option<u64> {
        if need == 0 {
            return Some(chosen);
        }
        if (cand.count_ones() as usize) < need {
            return None;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if let Some(c) =
                self.extend_clique(chosen | (1u64 << v), rest & self.rows[v], need - 1)
            {
                return Some(c);
            }
        }
        None
    }

    pub fn has_clique(&self, t: usize) -> bool {
        self.find_clique(t).is_some()
    }

    /// All `k`-cliques, each once, in canonical (lexicographic) order.
    ///
    /// Pivotless recursive intersection in vertex order, so the output order
    /// is deterministic and certificates replay bit-identically.
    pub fn cliques(&self, k: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if k > self.n {
            return out;
        }
        if k == 0 {
            out.push(VertexSet::EMPTY);
            return out;
        }
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.collect_cliques(0, all, k, &mut out);
        out
    }

    fn collect_cliques(&self, chosen: u64, cand: u64, need: usize, out: &mut Vec<VertexSet>) {
        if need == 0 {
            out.push(VertexSet(chosen));
            return;
        }
        if (cand.count_ones() as usize) < need {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.collect_cliques(chosen | (1u64 << v), rest & self.rows[v], need - 1, out);
        }
    }

    /// Vertices in a degeneracy order (repeated minimum-degree removal,
    /// lowest index on ties).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut alive = if self.n == 0 {
            0u64
        } else if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut order = Vec::with_capacity(self.n);
        while alive != 0 {
            let mut best = usize::MAX;
            let mut best_deg = usize::MAX;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = (self.rows[v] & alive).count_ones() as usize;
                if d < best_deg {
                    best_deg = d;
                    best = v;
                }
            }
            order.push(best);
            alive &= !(1u64 << best);
        }
        order
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: nested loops over all t-subsets.
    fn naive_cliques(g: &Graph, t: usize) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..t).collect();
        if t == 0 || t > n {
            return out;
        }
        loop {
            let mut ok = true;
            'pairs: for i in 0..t {
                for j in i + 1..t {
                    if !g.has_edge(idx[i], idx[j]) {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok {
                out.push(idx.clone());
            }
            // next combination
            let mut i = t;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - t {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn k8_minus_c5() -> Graph {
        let removed: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let mut edges = Vec::new();
        for v in 1..8 {
            for u in 0..v {
                let e = (u, v);
                let gone = removed
                    .iter()
                    .any(|&(a, b)| (a.min(b), a.max(b)) == e);
                if !gone {
                    edges.push(e);
                }
            }
        }
        Graph::from_edges(8, edges).unwrap()
    }

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(Graph::complete(0).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(3).unwrap().edge_count(), 3);
        assert_eq!(Graph::complete(6).unwrap().edge_count(), 15);
    }

    #[test]
    fn clique_detection_basics() {
        let k5 = Graph::complete(5).unwrap();
        assert!(k5.has_clique(5));
        let w = k5.find_clique(5).unwrap();
        assert!(k5.is_clique(&w));

        let c5 = Graph::cycle(5).unwrap();
        assert!(!c5.has_clique(3));
    }

    #[test]
    fn k8_minus_cycle_has_no_k6() {
        let g = k8_minus_c5();
        assert_eq!(g.edge_count(), 23);
        assert!(!g.has_clique(6));
        assert!(naive_cliques(&g, 6).is_empty());
        assert!(g.has_clique(5));
    }

    #[test]
    fn triangle_counts_match_naive_oracle() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.cliques(3).len(), 10);

        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.cliques(3).is_empty());

        let g = k8_minus_c5();
        let fast = g.cliques(3);
        let slow = naive_cliques(&g, 3);
        assert_eq!(fast.len(), slow.len());
        assert_eq!(fast.len(), 31);
        for (a, b) in fast.iter().zip(slow.iter()) {
            assert_eq!(a.to_vec(), *b);
        }
        for w in &fast {
            assert!(g.is_clique(w));
        }
    }

    #[test]
    fn cliques_nonempty_iff_has_clique() {
        let g = k8_minus_c5();
        for k in 1..=8 {
            assert_eq!(!g.cliques(k).is_empty(), g.has_clique(k));
        }
    }

    #[test]
    fn induced_subgraph_cases() {
        let k6 = Graph::complete(6).unwrap();
        let s = VertexSet::from_iter([1, 3, 5]);
        let h = k6.induced_subgraph(&s);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);

        let c5 = Graph::cycle(5).unwrap();
        let path = c5.induced_subgraph(&VertexSet::from_iter([0, 1, 2]));
        assert_eq!(path.edge_count(), 2);

        let full = VertexSet::from_iter(0..5);
        assert_eq!(c5.induced_subgraph(&full), c5);
    }

    #[test]
    fn degrees_and_edge_indexing() {
        let c5 = Graph::cycle(5).unwrap();
        for v in 0..5 {
            assert_eq!(c5.degree(v), 2);
        }
        assert_eq!(Graph::edge_index(0, 1), 0);
        assert_eq!(Graph::edge_index(0, 2), 1);
        assert_eq!(Graph::edge_index(1, 2), 2);
        assert_eq!(Graph::edge_index(2, 3), 5);
        let edges = c5.edges();
        assert_eq!(edges.len(), 5);
        let mut prev = None;
        for &(u, v) in &edges {
            let idx = Graph::edge_index(u, v);
            if let Some(p) = prev {
                assert!(idx > p, "edges not in canonical order");
            }
            prev = Some(idx);
        }
    }

    #[test]
    fn constructor_errors() {
        assert!(Graph::empty(65).is_err());
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 5)]).is_err());
    }

    #[test]
    fn edges_within_matches_induced() {
        let g = k8_minus_c5();
        let s = VertexSet::from_iter([0, 2, 4, 6]);
        assert_eq!(g.edges_within(&s), g.induced_subgraph(&s).edge_count());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..=10, any::<u64>()).prop_map(|(n, bits)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for v in 1..n {
                    for u in 0..v {
                        if (bits >> (i % 64)) & 1 == 1 {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        }

        proptest! {
            #[test]
            fn enumeration_agrees_with_naive_oracle(g in arb_graph(), k in 1usize..=10) {
                let fast: Vec<Vec<usize>> = g.cliques(k).iter().map(VertexSet::to_vec).collect();
                let slow = naive_cliques(&g, k);
                prop_assert_eq!(&fast, &slow);
                prop_assert_eq!(!fast.is_empty(), g.has_clique(k));
                if let Some(w) = g.find_clique(k) {
                    prop_assert!(g.is_clique(&w));
                    prop_assert_eq!(w.len(), k);
                }
            }

            #[test]
            fn induced_subgraph_preserves_adjacency(g in arb_graph(), mask in any::<u64>()) {
                let s = VertexSet::from_mask(mask & ((1u64 << g.n()) - 1).max(1));
                let verts = s.to_vec();
                let h = g.induced_subgraph(&s);
                prop_assert_eq!(h.n(), verts.len());
                for (i, &u) in verts.iter().enumerate() {
                    for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                        prop_assert_eq!(h.has_edge(i, j), g.has_edge(u, v));
                    }
                }
            }
        }
    }
}
