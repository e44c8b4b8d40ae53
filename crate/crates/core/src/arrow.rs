//! Exact decision of `G -> (K_k)_r` with machine-checkable certificates.
//!
//! The search precomputes every `K_k` copy of the host, orders the edges so
//! that a dense core is colored first, and backtracks over colors with two
//! pruning rules: a clique whose edges all share one color kills the branch,
//! and a clique with all but one edge in a single color forbids that color on
//! the remaining edge (unit propagation). Color labels are broken by letting
//! an edge take at most one color that is not already in use, which is sound
//! because forbidden colors are always colors already on the board, and any
//! proper completion can be relabeled — fixing the current partial coloring —
//! so that its next color falls inside the allowed set.
//!
//! Verdicts:
//! * `Arrows` — the symmetry-reduced space was exhausted with no proper
//!   coloring, so every `r`-coloring has a monochromatic `K_k`.
//! * `NonArrowing` — carries a witness coloring that re-verifies.
//! * `Indeterminate` — a node or wall-clock budget ran out; never silently
//!   coerced into either answer.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{find_monochromatic_clique, EdgeColoring};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArrowVerdict {
    Arrows,
    NonArrowing,
    Indeterminate,
}

/// Node- and time-limits for a search; `Indeterminate` on exhaustion.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_wall: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_wall: None,
    };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            max_wall: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Color assignments attempted (decisions plus propagations).
    pub nodes: u64,
    /// Number of `K_k` copies in the host.
    pub cliques: u64,
    pub wall_ms: u64,
    /// True when the symmetry-reduced coloring space was fully explored.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowCertificate {
    pub k: u32,
    pub r: u32,
    pub verdict: ArrowVerdict,
    /// Proper coloring in canonical edge order; present iff `NonArrowing`.
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

impl ArrowCertificate {
    /// Re-checks whatever is checkable without re-running the search: a
    /// `NonArrowing` witness must be proper on the host.
    pub fn verify_against(&self, g: &Graph) -> bool {
        match self.verdict {
            ArrowVerdict::NonArrowing => match &self.witness {
                Some(w) => matches!(find_monochromatic_clique(g, w, self.k as usize), Ok(None)),
                None => false,
            },
            ArrowVerdict::Arrows => self.witness.is_none() && self.stats.exhausted,
            ArrowVerdict::Indeterminate => self.witness.is_none(),
        }
    }
}

/// Search mode; `Deterministic` is single-threaded with a canonical witness,
/// `Parallel` splits the tree over a thread pool and must agree on the
/// verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Deterministic,
    Parallel,
}

/// A search strategy behind a common interface, selectable by name.
pub trait ArrowStrategy: Sync {
    fn name(&self) -> &'static str;
    fn search(&self, g: &Graph, k: u32, r: u32, budget: Budget) -> ArrowCertificate;
}

struct DeterministicStrategy;
struct ParallelStrategy;

impl ArrowStrategy for DeterministicStrategy {
    fn name(&self) -> &'static str {
        "det"
    }
    fn search(&self, g: &Graph, k: u32, r: u32, budget: Budget) -> ArrowCertificate {
        arrows(g, k, r, SearchMode::Deterministic, budget)
    }
}

impl ArrowStrategy for ParallelStrategy {
    fn name(&self) -> &'static str {
        "par"
    }
    fn search(&self, g: &Graph, k: u32, r: u32, budget: Budget) -> ArrowCertificate {
        arrows(g, k, r, SearchMode::Parallel, budget)
    }
}

static STRATEGIES: &[&dyn ArrowStrategy] = &[&DeterministicStrategy, &ParallelStrategy];

pub fn strategies() -> &'static [&'static dyn ArrowStrategy] {
    STRATEGIES
}

pub fn strategy_by_name(name: &str) -> Option<&'static dyn ArrowStrategy> {
    STRATEGIES.iter().copied().find(|s| s.name() == name)
}

/// Decides `G -> (K_k)_r`.
pub fn arrows(g: &Graph, k: u32, r: u32, mode: SearchMode, budget: Budget) -> ArrowCertificate {
    assert!(k >= 2, "arrowing targets start at K_2");
    assert!((1..=16).contains(&r), "color count must lie in 1..=16");
    let start = Instant::now();
    let kk = k as usize;
    let cliques = g.cliques(kk);
    let m = g.edge_count();

    let finish = |verdict, witness, nodes, exhausted| ArrowCertificate {
        k,
        r,
        verdict,
        witness,
        stats: SearchStats {
            nodes,
            cliques: cliques.len() as u64,
            wall_ms: start.elapsed().as_millis() as u64,
            exhausted,
        },
    };

    // no K_k at all: any total coloring is proper
    if cliques.is_empty() {
        let witness = EdgeColoring::constant(g, r.max(1), 1).expect("color 1 valid");
        return finish(ArrowVerdict::NonArrowing, Some(witness), 0, true);
    }
    // with one color the only coloring is monochromatic
    if r == 1 {
        return finish(ArrowVerdict::Arrows, None, 0, true);
    }

    let problem = Problem::build(g, &cliques, m, r);
    let outcome = match mode {
        SearchMode::Deterministic => {
            let mut engine = Engine::new(&problem, budget, None, None);
            engine.solve(&[])
        }
        SearchMode::Parallel => parallel_solve(&problem, budget),
    };

    match outcome {
        Outcome::Witness(colors, nodes) => {
            let witness = problem.to_canonical_coloring(&colors, r);
            let witness = match mode {
                SearchMode::Deterministic => witness.canonicalize_labels(),
                SearchMode::Parallel => witness,
            };
            debug_assert!(matches!(
                find_monochromatic_clique(g, &witness, kk),
                Ok(None)
            ));
            finish(ArrowVerdict::NonArrowing, Some(witness), nodes, false)
        }
        Outcome::Exhausted(nodes) => finish(ArrowVerdict::Arrows, None, nodes, true),
        Outcome::BudgetExceeded(nodes) => finish(ArrowVerdict::Indeterminate, None, nodes, false),
    }
}

/// Clique-freeness side of the Folkman property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueCheck {
    pub l: u32,
    pub has_clique: bool,
    pub witness: Option<Vec<usize>>,
}

/// Both halves of the Folkman check with their sub-certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FolkmanBundle {
    pub k: u32,
    pub r: u32,
    pub l: u32,
    /// `Some(true)` iff the host arrows and is `K_l`-free; `None` when the
    /// arrowing search was indeterminate and the clique side did not already
    /// settle the answer.
    pub folkman: Option<bool>,
    pub arrowing: ArrowCertificate,
    pub clique: CliqueCheck,
}

/// Checks `G -> (K_k)_r` and `K_l`-freeness; `l >= k + 1`.
pub fn is_folkman(
    g: &Graph,
    k: u32,
    r: u32,
    l: u32,
    mode: SearchMode,
    budget: Budget,
) -> FolkmanBundle {
    assert!(l > k, "forbidden clique size must exceed the target");
    let clique_witness = g.find_clique(l as usize);
    let clique = CliqueCheck {
        l,
        has_clique: clique_witness.is_some(),
        witness: clique_witness.as_ref().map(VertexSet::to_vec),
    };
    let arrowing = arrows(g, k, r, mode, budget);
    let folkman = if clique.has_clique {
        Some(false)
    } else {
        match arrowing.verdict {
            ArrowVerdict::Arrows => Some(true),
            ArrowVerdict::NonArrowing => Some(false),
            ArrowVerdict::Indeterminate => None,
        }
    };
    FolkmanBundle {
        k,
        r,
        l,
        folkman,
        arrowing,
        clique,
    }
}

enum Outcome {
    /// Proper coloring found, in search-edge order.
    Witness(Vec<u8>, u64),
    Exhausted(u64),
    BudgetExceeded(u64),
}

/// Static search data shared by all workers.
struct Problem {
    m: usize,
    r: u32,
    h: usize,
    /// search position -> canonical edge-list position
    order: Vec<usize>,
    /// cliques as search positions
    cliques: Vec<Vec<u32>>,
    /// search position -> cliques through it
    edge_cliques: Vec<Vec<u32>>,
}

impl Problem {
    fn build(g: &Graph, cliques: &[VertexSet], m: usize, r: u32) -> Problem {
        let edges = g.edges();
        // Degeneracy-informed static order: put the densest core first so the
        // early prefix closes cliques as soon as possible.
        let degen = g.degeneracy_order();
        let mut rank = vec![0usize; g.n()];
        for (i, &v) in degen.iter().rev().enumerate() {
            rank[v] = i;
        }
        let mut order: Vec<usize> = (0..m).collect();
        let key = |i: usize| {
            let (u, v) = edges[i];
            let (a, b) = if rank[u] < rank[v] {
                (rank[u], rank[v])
            } else {
                (rank[v], rank[u])
            };
            (b, a)
        };
        order.sort_by_key(|&i| key(i));

        let mut inv = vec![0u32; m];
        for (pos, &canon) in order.iter().enumerate() {
            inv[canon] = pos as u32;
        }
        let pos_of = crate::coloring::edge_positions(g);
        let mut clique_edges = Vec::with_capacity(cliques.len());
        let mut edge_cliques = vec![Vec::new(); m];
        for (ci, cl) in cliques.iter().enumerate() {
            let verts = cl.to_vec();
            let mut es = Vec::new();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    let canon = pos_of[Graph::edge_index(u, v)].expect("clique edge present");
                    let sp = inv[canon];
                    es.push(sp);
                    edge_cliques[sp as usize].push(ci as u32);
                }
            }
            clique_edges.push(es);
        }
        let h = clique_edges.first().map_or(0, Vec::len);
        Problem {
            m,
            r,
            h,
            order,
            cliques: clique_edges,
            edge_cliques,
        }
    }

    /// Translates search-order colors back to canonical edge order.
    fn to_canonical_coloring(&self, search_colors: &[u8], r: u32) -> EdgeColoring {
        let mut canon = vec![0u8; self.m];
        for (pos, &canonical_index) in self.order.iter().enumerate() {
            canon[canonical_index] = search_colors[pos];
        }
        EdgeColoring::new(r, canon).expect("search produces total colorings")
    }
}

const NO_CONFLICT: u32 = u32::MAX;

struct Engine<'p> {
    p: &'p Problem,
    color: Vec<u8>,
    forbidden: Vec<u16>,
    /// clique index * r + (c-1) -> edges of that clique in color c
    color_cnt: Vec<u8>,
    colored_cnt: Vec<u8>,
    /// how many edges currently wear each color
    used_cnt: Vec<u32>,
    distinct_used: u32,
    nodes: u64,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    stop: Option<&'p AtomicBool>,
    shared_nodes: Option<&'p AtomicU64>,
    budget_hit: bool,
}

struct Trail {
    assigned: Vec<u32>,
    forbids: Vec<(u32, u16)>,
    distinct_before: u32,
}

impl<'p> Engine<'p> {
    fn new(
        p: &'p Problem,
        budget: Budget,
        stop: Option<&'p AtomicBool>,
        shared_nodes: Option<&'p AtomicU64>,
    ) -> Engine<'p> {
        Engine {
            p,
            color: vec![0; p.m],
            forbidden: vec![0; p.m],
            color_cnt: vec![0; p.cliques.len() * p.r as usize],
            colored_cnt: vec![0; p.cliques.len()],
            used_cnt: vec![0; p.r as usize],
            distinct_used: 0,
            nodes: 0,
            node_budget: budget.max_nodes,
            deadline: budget.max_wall.map(|d| Instant::now() + d),
            stop,
            shared_nodes,
            budget_hit: false,
        }
    }

    fn allowed_mask(&self, e: usize) -> u16 {
        let cap = (self.distinct_used + 1).min(self.p.r);
        let base = if cap >= 16 { u16::MAX } else { (1u16 << cap) - 1 };
        base & !self.forbidden[e]
    }

    fn over_budget(&mut self) -> bool {
        if self.budget_hit {
            return true;
        }
        if let Some(max) = self.node_budget {
            let global = self
                .shared_nodes
                .map(|n| n.load(Ordering::Relaxed))
                .unwrap_or(self.nodes);
            if global > max {
                self.budget_hit = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() > deadline {
                self.budget_hit = true;
                return true;
            }
        }
        if let Some(stop) = self.stop {
            if self.nodes.is_multiple_of(256) && stop.load(Ordering::Relaxed) {
                self.budget_hit = true; // treated as an external cutoff
                return true;
            }
        }
        false
    }

    fn count_node(&mut self) {
        self.nodes += 1;
        if let Some(n) = self.shared_nodes {
            n.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Writes `e := c` into the state and records the unit-rule fallout.
    /// Edges whose forbidden mask changed are pushed to `recheck` so forced
    /// moves are derived from the state at commit time, never from a stale
    /// snapshot (the distinct-color cap may grow between enqueue and pop).
    fn place(&mut self, e: usize, c: u8, trail: &mut Trail, recheck: &mut Vec<u32>) -> u32 {
        debug_assert_eq!(self.color[e], 0);
        self.count_node();
        self.color[e] = c;
        trail.assigned.push(e as u32);
        if self.used_cnt[(c - 1) as usize] == 0 {
            self.distinct_used += 1;
        }
        self.used_cnt[(c - 1) as usize] += 1;

        let r = self.p.r as usize;
        for ci_ref in &self.p.edge_cliques[e] {
            let ci = *ci_ref as usize;
            self.colored_cnt[ci] += 1;
            let cnt = &mut self.color_cnt[ci * r + (c - 1) as usize];
            *cnt += 1;
            let cnt = *cnt as usize;
            if cnt == self.p.h {
                return ci as u32; // monochromatic clique
            }
            if cnt == self.p.h - 1 && self.colored_cnt[ci] as usize == self.p.h - 1 {
                // all colored edges share c; the one free edge must avoid it
                let free = self.p.cliques[ci]
                    .iter()
                    .copied()
                    .find(|&f| self.color[f as usize] == 0)
                    .expect("exactly one uncolored edge");
                let bit = 1u16 << (c - 1);
                if self.forbidden[free as usize] & bit == 0 {
                    trail.forbids.push((free, self.forbidden[free as usize]));
                    self.forbidden[free as usize] |= bit;
                    recheck.push(free);
                }
            }
        }
        NO_CONFLICT
    }

    /// Assigns `e := c` and runs unit propagation to a fixed point.
    fn assign(&mut self, e: usize, c: u8, trail: &mut Trail) -> u32 {
        let mut recheck = Vec::new();
        let mut conflict = self.place(e, c, trail, &mut recheck);
        while conflict == NO_CONFLICT {
            let f = match recheck.pop() {
                Some(f) => f as usize,
                None => break,
            };
            if self.color[f] != 0 {
                continue;
            }
            let allowed = self.allowed_mask(f);
            if allowed == 0 {
                conflict = 0; // no color left for f on this branch
            } else if allowed.count_ones() == 1 {
                let forced = allowed.trailing_zeros() as u8 + 1;
                conflict = self.place(f, forced, trail, &mut recheck);
            }
        }
        conflict
    }

    fn undo(&mut self, trail: Trail) {
        let r = self.p.r as usize;
        for &e in trail.assigned.iter().rev() {
            let c = self.color[e as usize];
            self.color[e as usize] = 0;
            self.used_cnt[(c - 1) as usize] -= 1;
            for ci_ref in &self.p.edge_cliques[e as usize] {
                let ci = *ci_ref as usize;
                self.colored_cnt[ci] -= 1;
                self.color_cnt[ci * r + (c - 1) as usize] -= 1;
            }
        }
        self.distinct_used = trail.distinct_before;
        for &(e, prev) in trail.forbids.iter().rev() {
            self.forbidden[e as usize] = prev;
        }
    }

    fn next_unassigned(&self, from: usize) -> Option<usize> {
        (from..self.p.m).find(|&e| self.color[e] == 0)
    }

    /// Full search after forcing `prefix` (search-position, color) pairs.
    fn solve(&mut self, prefix: &[(u32, u8)]) -> Outcome {
        let mut trails = Vec::new();
        for &(e, c) in prefix {
            if self.color[e as usize] != 0 {
                if self.color[e as usize] == c {
                    continue;
                }
                for t in trails.into_iter().rev() {
                    self.undo(t);
                }
                return Outcome::Exhausted(self.nodes);
            }
            let mut trail = Trail {
                assigned: Vec::new(),
                forbids: Vec::new(),
                distinct_before: self.distinct_used,
            };
            let conflict = self.assign(e as usize, c, &mut trail);
            trails.push(trail);
            if conflict != NO_CONFLICT {
                for t in trails.into_iter().rev() {
                    self.undo(t);
                }
                return Outcome::Exhausted(self.nodes); // prefix itself is dead
            }
        }
        let out = self.dfs(0);
        let nodes = self.nodes;
        match out {
            Dfs::Found => Outcome::Witness(self.color.clone(), nodes),
            Dfs::Done => {
                for t in trails.into_iter().rev() {
                    self.undo(t);
                }
                if self.budget_hit {
                    Outcome::BudgetExceeded(nodes)
                } else {
                    Outcome::Exhausted(nodes)
                }
            }
        }
    }

    fn dfs(&mut self, cursor: usize) -> Dfs {
        if self.over_budget() {
            return Dfs::Done;
        }
        let e = match self.next_unassigned(cursor) {
            Some(e) => e,
            None => return Dfs::Found,
        };
        let allowed = self.allowed_mask(e);
        let mut rest = allowed;
        while rest != 0 {
            let c = rest.trailing_zeros() as u8 + 1;
            rest &= rest - 1;
            let mut trail = Trail {
                assigned: Vec::new(),
                forbids: Vec::new(),
                distinct_before: self.distinct_used,
            };
            let conflict = self.assign(e, c, &mut trail);
            if conflict == NO_CONFLICT {
                match self.dfs(e + 1) {
                    Dfs::Found => return Dfs::Found,
                    Dfs::Done => {}
                }
                if self.budget_hit {
                    self.undo(trail);
                    return Dfs::Done;
                }
            }
            self.undo(trail);
        }
        Dfs::Done
    }

    /// Collects decision prefixes at depth `depth` for parallel splitting.
    fn split(&mut self, depth: usize, prefix: &mut Vec<(u32, u8)>, out: &mut Vec<Vec<(u32, u8)>>) {
        let e = match self.next_unassigned(0) {
            Some(e) => e,
            None => {
                out.push(prefix.clone());
                return;
            }
        };
        if depth == 0 {
            out.push(prefix.clone());
            return;
        }
        let allowed = self.allowed_mask(e);
        let mut rest = allowed;
        while rest != 0 {
            let c = rest.trailing_zeros() as u8 + 1;
            rest &= rest - 1;
            let mut trail = Trail {
                assigned: Vec::new(),
                forbids: Vec::new(),
                distinct_before: self.distinct_used,
            };
            let conflict = self.assign(e, c, &mut trail);
            if conflict == NO_CONFLICT {
                prefix.push((e as u32, c));
                self.split(depth - 1, prefix, out);
                prefix.pop();
            }
            self.undo(trail);
        }
    }
}

enum Dfs {
    Found,
    Done,
}

fn parallel_solve(problem: &Problem, budget: Budget) -> Outcome {
    use rayon::prelude::*;

    // carve the tree into tasks a few decisions deep
    let split_depth = 6usize.min(problem.m);
    let mut tasks = Vec::new();
    {
        let mut engine = Engine::new(problem, Budget::UNLIMITED, None, None);
        engine.split(split_depth, &mut Vec::new(), &mut tasks);
    }
    if tasks.is_empty() {
        // every prefix died during splitting: the space is exhausted
        return Outcome::Exhausted(0);
    }

    let stop = AtomicBool::new(false);
    let shared_nodes = AtomicU64::new(0);
    let results: Vec<Outcome> = tasks
        .par_iter()
        .map(|prefix| {
            if stop.load(Ordering::Relaxed) {
                return Outcome::Exhausted(0);
            }
            let mut engine = Engine::new(problem, budget, Some(&stop), Some(&shared_nodes));
            let out = engine.solve(prefix);
            if matches!(out, Outcome::Witness(..)) {
                stop.store(true, Ordering::Relaxed);
            }
            out
        })
        .collect();

    let total_nodes = shared_nodes.load(Ordering::Relaxed);
    let mut budget_hit = false;
    let mut witness = None;
    for r in results {
        match r {
            Outcome::Witness(w, _) => {
                witness = Some(w);
                break;
            }
            Outcome::BudgetExceeded(_) => budget_hit = true,
            Outcome::Exhausted(_) => {}
        }
    }
    match witness {
        Some(w) => Outcome::Witness(w, total_nodes),
        None if budget_hit => Outcome::BudgetExceeded(total_nodes),
        None => Outcome::Exhausted(total_nodes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::gnp::sample_gnp;

    /// Brute-force oracle: try all r^m colorings.
    fn arrows_by_enumeration(g: &Graph, k: usize, r: u32) -> bool {
        let m = g.edge_count();
        let total = (r as u64).pow(m as u32);
        for idx in 0..total {
            let c = EdgeColoring::from_index(r, m, idx);
            if is_proper(g, &c, k).unwrap() {
                return false;
            }
        }
        true
    }

    #[test]
    fn k6_arrows_triangles_two_colors() {
        let k6 = Graph::complete(6).unwrap();
        let cert = arrows(&k6, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(cert.verdict, ArrowVerdict::Arrows);
        assert!(cert.stats.exhausted);
        assert!(cert.verify_against(&k6));
        assert!(arrows_by_enumeration(&k6, 3, 2));
    }

    #[test]
    fn k5_does_not_arrow_and_witness_is_two_pentagons() {
        let k5 = Graph::complete(5).unwrap();
        let cert = arrows(&k5, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(cert.verdict, ArrowVerdict::NonArrowing);
        let w = cert.witness.as_ref().unwrap();
        assert!(is_proper(&k5, w, 3).unwrap());
        assert!(cert.verify_against(&k5));
        // every proper 2-coloring of K5 splits into two 5-cycles
        let ones: Vec<(usize, usize)> = k5
            .edges()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| w.color(*i) == 1)
            .map(|(_, e)| e)
            .collect();
        assert_eq!(ones.len(), 5);
        let cyc = Graph::from_edges(5, ones).unwrap();
        assert!((0..5).all(|v| cyc.degree(v) == 2));
        assert!(!arrows_by_enumeration(&k5, 3, 2));
        // deterministic witness starts with color 1 on edge 0
        assert_eq!(w.color(0), 1);
    }

    #[test]
    fn edgeless_graph_never_arrows() {
        let g = Graph::empty(5).unwrap();
        let cert = arrows(&g, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(cert.verdict, ArrowVerdict::NonArrowing);
        assert!(cert.verify_against(&g));
    }

    #[test]
    fn one_color_arrows_iff_clique_exists() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            arrows(&k3, 3, 1, SearchMode::Deterministic, Budget::UNLIMITED).verdict,
            ArrowVerdict::Arrows
        );
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            arrows(&c5, 3, 1, SearchMode::Deterministic, Budget::UNLIMITED).verdict,
            ArrowVerdict::NonArrowing
        );
    }

    #[test]
    fn tiny_budget_reports_indeterminate() {
        let k6 = Graph::complete(6).unwrap();
        let cert = arrows(&k6, 3, 2, SearchMode::Deterministic, Budget::nodes(3));
        assert_eq!(cert.verdict, ArrowVerdict::Indeterminate);
        assert!(!cert.stats.exhausted);
    }

    #[test]
    fn parallel_agrees_with_deterministic() {
        for seed in 0..30u64 {
            let n = 4 + (seed % 4) as usize;
            let g = sample_gnp(n, 0.7, seed).unwrap();
            let det = arrows(&g, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
            let par = arrows(&g, 3, 2, SearchMode::Parallel, Budget::UNLIMITED);
            assert_eq!(det.verdict, par.verdict, "seed {seed}");
            if let Some(w) = &par.witness {
                assert!(is_proper(&g, w, 3).unwrap());
            }
        }
    }

    #[test]
    fn oracle_equivalence_on_random_small_graphs() {
        let mut checked = 0;
        for seed in 0..60u64 {
            let n = 3 + (seed % 5) as usize;
            let g = sample_gnp(n, 0.55, seed).unwrap();
            if g.edge_count() > 14 {
                continue;
            }
            checked += 1;
            let fast = arrows(&g, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
            let slow = arrows_by_enumeration(&g, 3, 2);
            assert_eq!(fast.verdict == ArrowVerdict::Arrows, slow, "seed {seed}");
        }
        assert!(checked > 20);
    }

    /// Brute-force oracle over all r^m colorings.
    fn arrows_by_enumeration_r(g: &Graph, k: usize, r: u32) -> bool {
        let m = g.edge_count();
        let total = (r as u64).pow(m as u32);
        for idx in 0..total {
            let c = EdgeColoring::from_index(r, m, idx);
            if is_proper(g, &c, k).unwrap() {
                return false;
            }
        }
        true
    }

    #[test]
    fn three_color_oracle_equivalence() {
        // the cap-based color-symmetry reduction must stay complete for r=3
        let mut checked = 0;
        for seed in 200..260u64 {
            let n = 4 + (seed % 4) as usize;
            let g = sample_gnp(n, 0.6, seed).unwrap();
            if g.edge_count() > 10 {
                continue;
            }
            checked += 1;
            let fast = arrows(&g, 3, 3, SearchMode::Deterministic, Budget::UNLIMITED);
            let slow = arrows_by_enumeration_r(&g, 3, 3);
            assert_eq!(fast.verdict == ArrowVerdict::Arrows, slow, "seed {seed}");
            if let Some(w) = &fast.witness {
                assert!(is_proper(&g, w, 3).unwrap());
            }
        }
        assert!(checked > 15);
    }

    #[test]
    fn monotone_under_edge_addition() {
        // if G arrows, any supergraph on the same vertex set arrows
        for seed in 100..140u64 {
            let g = sample_gnp(6, 0.8, seed).unwrap();
            let base = arrows(&g, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
            if base.verdict != ArrowVerdict::Arrows {
                continue;
            }
            let mut edges = g.edges();
            for u in 0..6 {
                for v in u + 1..6 {
                    if !g.has_edge(u, v) {
                        edges.push((u, v));
                    }
                }
            }
            let sup = Graph::from_edges(6, edges).unwrap();
            let cert = arrows(&sup, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
            assert_eq!(cert.verdict, ArrowVerdict::Arrows);
        }
    }

    #[test]
    fn witness_survives_color_permutation() {
        let k5 = Graph::complete(5).unwrap();
        let cert = arrows(&k5, 3, 2, SearchMode::Deterministic, Budget::UNLIMITED);
        let w = cert.witness.unwrap();
        let swapped = w.permute_colors(&[2, 1]).unwrap();
        assert!(is_proper(&k5, &swapped, 3).unwrap());
    }

    #[test]
    fn folkman_bundle_cases() {
        // K8 minus a 5-cycle: arrows (K3)_2 and is K6-free
        let removed: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let mut edges = Vec::new();
        for v in 1..8 {
            for u in 0..v {
                if !removed.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)) {
                    edges.push((u, v));
                }
            }
        }
        let graham = Graph::from_edges(8, edges).unwrap();
        let bundle = is_folkman(&graham, 3, 2, 6, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(bundle.folkman, Some(true));
        assert!(!bundle.clique.has_clique);
        assert_eq!(bundle.arrowing.verdict, ArrowVerdict::Arrows);

        let k6 = Graph::complete(6).unwrap();
        let bundle = is_folkman(&k6, 3, 2, 6, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(bundle.folkman, Some(false));
        assert!(bundle.clique.has_clique);

        let c5 = Graph::cycle(5).unwrap();
        let bundle = is_folkman(&c5, 3, 2, 4, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(bundle.folkman, Some(false));
        assert_eq!(bundle.arrowing.verdict, ArrowVerdict::NonArrowing);
    }

    #[test]
    fn three_color_search_matches_enumeration_on_k5() {
        // K5 -> (K3)_3? R(3;3) = 17, so no; the witness must verify.
        let k5 = Graph::complete(5).unwrap();
        let cert = arrows(&k5, 3, 3, SearchMode::Deterministic, Budget::UNLIMITED);
        assert_eq!(cert.verdict, ArrowVerdict::NonArrowing);
        assert!(is_proper(&k5, cert.witness.as_ref().unwrap(), 3).unwrap());
    }

    #[test]
    fn k7_arrows_triangles_and_k5_fragment_does_not() {
        let k7 = Graph::complete(7).unwrap();
        let cert = arrows(&k7, 3, 2, SearchMode::Parallel, Budget::UNLIMITED);
        assert_eq!(cert.verdict, ArrowVerdict::Arrows);
    }
}
