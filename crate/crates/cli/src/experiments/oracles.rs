//! Brute-force oracles, written without the bitset machinery of the search
//! paths they cross-check: plain nested loops and full enumerations only.

use folkman_core::Graph;

/// All k-subsets of `[n]` that are cliques, by nested index loops.
pub fn naive_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut ok = true;
        'pairs: for i in 0..k {
            for j in i + 1..k {
                if !g.has_edge(idx[i], idx[j]) {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            out.push(idx.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Counts proper 2-colorings (no monochromatic `K_k`) by enumerating all
/// `2^m` bit patterns over the edge list.
pub fn count_proper_two_colorings(g: &Graph, k: usize) -> u64 {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 24, "enumeration oracle capped at 24 edges");
    let cliques = naive_cliques(g, k);
    let clique_edge_ids: Vec<Vec<usize>> = cliques
        .iter()
        .map(|verts| {
            let mut ids = Vec::new();
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    let (a, b) = (verts[i].min(verts[j]), verts[i].max(verts[j]));
                    let pos = edges
                        .iter()
                        .position(|&(u, v)| (u, v) == (a, b))
                        .expect("clique edge in edge list");
                    ids.push(pos);
                }
            }
            ids
        })
        .collect();
    let mut proper = 0u64;
    for mask in 0u64..(1u64 << m) {
        let mut mono = false;
        'cl: for ids in &clique_edge_ids {
            let first = (mask >> ids[0]) & 1;
            for &e in &ids[1..] {
                if (mask >> e) & 1 != first {
                    continue 'cl;
                }
            }
            mono = true;
            break;
        }
        if !mono {
            proper += 1;
        }
    }
    proper
}

/// `G -> (K_k)_2` by full enumeration.
pub fn arrows_by_enumeration(g: &Graph, k: usize) -> bool {
    count_proper_two_colorings(g, k) == 0
}
