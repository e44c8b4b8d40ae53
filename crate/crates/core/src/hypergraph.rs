//! The clique hypergraph `H(n, k)` and its co-degree structure.
//!
//! Vertices of `H(n, k)` are the `C(n,2)` edges of `K_n`; hyperedges are the
//! edge sets of the `C(n,k)` copies of `K_k`, so the hypergraph is
//! `C(k,2)`-uniform and `C(n-2,k-2)`-regular, and a vertex subset is
//! independent exactly when the corresponding graph is `K_k`-free. Explicit
//! materialization is capped at `n <= 12`; past that only the closed-form
//! degree formulas make sense to use.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::interval::{IntervalError, LogInterval, Verdict};

/// Materialization cap for `H(n, k)`.
pub const MAX_CLIQUE_HYPERGRAPH_N: u64 = 12;

/// Vertex-count cap for generic hypergraphs (bitmask rows).
pub const MAX_HYPERGRAPH_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypergraphError {
    #[error("materialization bound exceeded: n={n} (cap {MAX_CLIQUE_HYPERGRAPH_N}), k={k}")]
    TooLarge { n: u64, k: u64 },
    #[error("need 2 <= k <= n, got n={n}, k={k}")]
    BadParameters { n: u64, k: u64 },
    #[error("hypergraph has more than {MAX_HYPERGRAPH_VERTICES} vertices")]
    TooManyVertices(usize),
    #[error("hyperedge has size {got}, expected uniformity {expected}")]
    NonUniform { got: usize, expected: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("co-degree function undefined on an empty hypergraph")]
    EmptyHypergraph,
    #[error("tau must be positive")]
    BadTau,
    #[error("j-degree index {j} outside 2..={h}")]
    BadJ { j: usize, h: usize },
    #[error("hypergraph text: {0}")]
    Parse(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// An `h`-uniform hypergraph on at most 128 vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericHypergraph {
    n: usize,
    h: usize,
    edges: Vec<Vec<u32>>,
    masks: Vec<u128>,
}

impl GenericHypergraph {
    pub fn new(n: usize, edges: Vec<Vec<u32>>) -> Result<Self, HypergraphError> {
        if n > MAX_HYPERGRAPH_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let h = edges.first().map_or(0, Vec::len);
        let mut masks = Vec::with_capacity(edges.len());
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for e in edges {
            if e.len() != h {
                return Err(HypergraphError::NonUniform {
                    got: e.len(),
                    expected: h,
                });
            }
            let mut mask = 0u128;
            let mut sorted: Vec<u32> = e;
            sorted.sort_unstable();
            for &v in &sorted {
                if v as usize >= n {
                    return Err(HypergraphError::VertexOutOfRange {
                        vertex: v as usize,
                        order: n,
                    });
                }
                mask |= 1u128 << v;
            }
            if mask.count_ones() as usize != h {
                return Err(HypergraphError::NonUniform {
                    got: mask.count_ones() as usize,
                    expected: h,
                });
            }
            masks.push(mask);
            sorted_edges.push(sorted);
        }
        Ok(GenericHypergraph {
            n,
            h,
            edges: sorted_edges,
            masks,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.h
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        let bit = 1u128 << v;
        self.masks.iter().filter(|&&m| m & bit != 0).count()
    }

    /// Number of hyperedges containing every vertex of `set`.
    pub fn set_degree(&self, set: u128) -> usize {
        self.masks.iter().filter(|&&m| set & !m == 0).count()
    }

    /// `d_j(v)`: the maximum, over `j`-sets `J` containing `v`, of the number
    /// of hyperedges through `J`. Candidates are enumerated inside hyperedges
    /// through `v` only, since any other `J` has degree zero.
    pub fn max_j_degree(&self, v: usize, j: usize) -> Result<usize, HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        if !(2..=self.h).contains(&j) {
            return Err(HypergraphError::BadJ { j, h: self.h });
        }
        let bit = 1u128 << v;
        let mut candidates: BTreeSet<u128> = BTreeSet::new();
        for (mask, edge) in self.masks.iter().zip(&self.edges) {
            if mask & bit == 0 {
                continue;
            }
            let others: Vec<u32> = edge.iter().copied().filter(|&w| w as usize != v).collect();
            collect_subsets(&others, j - 1, 0, bit, &mut candidates);
        }
        Ok(candidates
            .into_iter()
            .map(|set| self.set_degree(set))
            .max()
            .unwrap_or(0))
    }

    /// True iff no hyperedge lies inside `s`.
    pub fn is_independent(&self, s: u128) -> bool {
        self.masks.iter().all(|&m| m & !s != 0)
    }

    /// Text form: first line `n h`, then one hyperedge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.h);
        for e in &self.edges {
            let words: Vec<String> = e.iter().map(u32::to_string).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, HypergraphError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| HypergraphError::Parse("missing header".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| HypergraphError::Parse("bad vertex count".into()))?;
        let h: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| HypergraphError::Parse("bad uniformity".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let verts: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            let verts =
                verts.map_err(|_| HypergraphError::Parse(format!("bad hyperedge: {line}")))?;
            if verts.len() != h {
                return Err(HypergraphError::NonUniform {
                    got: verts.len(),
                    expected: h,
                });
            }
            edges.push(verts);
        }
        GenericHypergraph::new(n, edges)
    }
}

fn collect_subsets(pool: &[u32], need: usize, start: usize, acc: u128, out: &mut BTreeSet<u128>) {
    if need == 0 {
        out.insert(acc);
        return;
    }
    for i in start..pool.len() {
        collect_subsets(pool, need - 1, i + 1, acc | (1u128 << pool[i]), out);
    }
}

/// `ell(j)`: the smallest integer `l` with `j <= C(l, 2)` — the vertex count
/// of a smallest graph with `j` edges. For `j >= 2` this is at least 3.
pub fn ell(j: u64) -> u64 {
    debug_assert!(j >= 1);
    let mut l = 2u64;
    while l * (l - 1) / 2 < j {
        l += 1;
    }
    l
}

/// Explicit `H(n, k)`.
#[derive(Debug, Clone)]
pub struct CliqueHypergraph {
    n: u64,
    k: u64,
    hyper: GenericHypergraph,
}

impl CliqueHypergraph {
    pub fn build(n: u64, k: u64) -> Result<Self, HypergraphError> {
        if k < 2 || k > n {
            return Err(HypergraphError::BadParameters { n, k });
        }
        if n > MAX_CLIQUE_HYPERGRAPH_N {
            return Err(HypergraphError::TooLarge { n, k });
        }
        let g = Graph::complete(n as usize).expect("n <= 12");
        let mut edges = Vec::new();
        for cl in g.cliques(k as usize) {
            let verts = cl.to_vec();
            let mut he = Vec::with_capacity((k * (k - 1) / 2) as usize);
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    he.push(Graph::edge_index(u, v) as u32);
                }
            }
            edges.push(he);
        }
        let hyper = GenericHypergraph::new((n * (n - 1) / 2) as usize, edges)?;
        Ok(CliqueHypergraph { n, k, hyper })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn hypergraph(&self) -> &GenericHypergraph {
        &self.hyper
    }

    /// The `K_n` edge (pair) behind hypergraph vertex `i`.
    pub fn vertex_pair(&self, i: usize) -> (usize, usize) {
        let mut v = 1usize;
        while (v + 1) * v / 2 <= i {
            v += 1;
        }
        (i - v * (v - 1) / 2, v)
    }

    /// The graph with edge set `s` on vertex set `[n]`.
    pub fn graph_of_subset(&self, s: u128) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.hyper.vertex_count() {
            if (s >> i) & 1 == 1 {
                edges.push(self.vertex_pair(i));
            }
        }
        Graph::from_edges(self.n as usize, edges).expect("indices in range")
    }
}

/// Which denominator the co-degree sum carries: the defining form keeps the
/// pair powers `2^C(j-1,2)`, the bounding form drops them (which can only
/// increase the value).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CodegreeForm {
    #[default]
    Exact,
    DroppedPairPowers,
}

/// The co-degree function
/// `delta(H, tau) = 2^(C(h,2)-1)/(n d) * sum_j sum_v d_j(v) / (2^C(j-1,2) tau^(j-1))`,
/// evaluated exactly over the materialized hypergraph and returned as a
/// certified interval. `n d` equals `h * e(H)` by the handshake identity.
pub fn codegree_function(
    hg: &GenericHypergraph,
    tau: &LogInterval,
    form: CodegreeForm,
) -> Result<LogInterval, HypergraphError> {
    if hg.edge_count() == 0 {
        return Err(HypergraphError::EmptyHypergraph);
    }
    if tau.is_zero() {
        return Err(HypergraphError::BadTau);
    }
    let h = hg.uniformity();
    let nd = (h as u64) * (hg.edge_count() as u64);
    let mut sum = LogInterval::zero();
    for j in 2..=h {
        let mut dj_total: u64 = 0;
        for v in 0..hg.vertex_count() {
            dj_total += hg.max_j_degree(v, j)? as u64;
        }
        if dj_total == 0 {
            continue;
        }
        let mut term = LogInterval::from_u64(dj_total).div(&tau.powi((j - 1) as i64)?)?;
        if form == CodegreeForm::Exact {
            let pair_pow = ((j - 1) * (j - 2) / 2) as i64;
            term = term.div(&LogInterval::pow2_int(pair_pow))?;
        }
        sum = sum.add(&term);
    }
    let prefactor_exp = (h * (h - 1) / 2) as i64 - 1;
    let prefactor = LogInterval::pow2_int(prefactor_exp).div(&LogInterval::from_u64(nd))?;
    Ok(prefactor.mul(&sum))
}

/// Closed-form majorant
/// `delta(n, k, tau) = sum_{j=2}^{C(k,2)} 2^(k^4) k^(k-2) / (tau^(j-1) n^(ell_j - 2))`.
///
/// `n` is an interval so the astronomically large thresholds plug in
/// directly; for concrete small `n` pass `LogInterval::from_u64`.
pub fn codegree_majorant(
    n: &LogInterval,
    k: u64,
    tau: &LogInterval,
) -> Result<LogInterval, HypergraphError> {
    if tau.is_zero() {
        return Err(HypergraphError::BadTau);
    }
    if k < 3 {
        return Err(HypergraphError::BadParameters { n: 0, k });
    }
    let k4 = (k * k * k * k) as i64;
    let coeff = LogInterval::pow2_int(k4).mul(&LogInterval::from_u64(k).powi((k - 2) as i64)?);
    let mut sum = LogInterval::zero();
    for j in 2..=k * (k - 1) / 2 {
        let denom = tau
            .powi((j - 1) as i64)?
            .mul(&n.powi((ell(j) - 2) as i64)?);
        sum = sum.add(&coeff.div(&denom)?);
    }
    Ok(sum)
}

/// One line of the exact-versus-closed-form comparison.
#[derive(Debug, Clone)]
pub struct CodegreeComparison {
    pub n: u64,
    pub k: u64,
    pub exact: LogInterval,
    pub closed_form: LogInterval,
    pub holds: Verdict,
    pub margin_log2: f64,
}

/// Certifies `delta(H(n,k), tau) <= delta(n, k, tau)` on a materialized
/// instance.
pub fn check_claim_codegree_majorant(
    n: u64,
    k: u64,
    tau: &LogInterval,
) -> Result<CodegreeComparison, HypergraphError> {
    let ch = CliqueHypergraph::build(n, k)?;
    let exact = codegree_function(ch.hypergraph(), tau, CodegreeForm::Exact)?;
    let closed_form = codegree_majorant(&LogInterval::from_u64(n), k, tau)?;
    let (holds, margin_log2) = exact.certify_le(&closed_form);
    Ok(CodegreeComparison {
        n,
        k,
        exact,
        closed_form,
        holds,
        margin_log2,
    })
}
