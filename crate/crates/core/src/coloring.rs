//! Total edge colorings and the monochromatic-clique check that certifies
//! them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    DomainMismatch { got: usize, expected: usize },
    #[error("color {0} outside 1..={1}")]
    ColorOutOfRange(u8, u32),
    #[error("color count must be at least 1")]
    NoColors,
}

/// Assignment of colors `1..=r` to the edges of a graph, stored in canonical
/// (colex) edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    r: u32,
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn new(r: u32, colors: Vec<u8>) -> Result<Self, ColoringError> {
        if r == 0 {
            return Err(ColoringError::NoColors);
        }
        for &c in &colors {
            if c == 0 || c as u32 > r {
                return Err(ColoringError::ColorOutOfRange(c, r));
            }
        }
        Ok(EdgeColoring { r, colors })
    }

    /// All edges of `g` in a single color.
    pub fn constant(g: &Graph, r: u32, color: u8) -> Result<Self, ColoringError> {
        if color == 0 || color as u32 > r {
            return Err(ColoringError::ColorOutOfRange(color, r));
        }
        EdgeColoring::new(r, vec![color; g.edge_count()])
    }

    /// Decodes coloring index `idx` written in base `r`, least significant
    /// digit on edge 0. Covers the whole space as `idx` runs over `r^m`.
    pub fn from_index(r: u32, m: usize, mut idx: u64) -> Self {
        let mut colors = vec![1u8; m];
        for slot in colors.iter_mut() {
            *slot = (idx % r as u64) as u8 + 1;
            idx /= r as u64;
        }
        EdgeColoring { r, colors }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of the edge at canonical position `i`.
    pub fn color(&self, i: usize) -> u8 {
        self.colors[i]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn matches(&self, g: &Graph) -> Result<(), ColoringError> {
        let expected = g.edge_count();
        if self.colors.len() != expected {
            return Err(ColoringError::DomainMismatch {
                got: self.colors.len(),
                expected,
            });
        }
        Ok(())
    }

    /// Applies a color permutation; `perm[c-1]` is the new label of `c`.
    pub fn permute_colors(&self, perm: &[u8]) -> Result<Self, ColoringError> {
        let colors = self
            .colors
            .iter()
            .map(|&c| perm[(c - 1) as usize])
            .collect();
        EdgeColoring::new(self.r, colors)
    }

    /// Relabels colors by first occurrence, so the first edge gets color 1,
    /// the first differently colored edge gets color 2, and so on.
    pub fn canonicalize_labels(&self) -> Self {
        let mut map = vec![0u8; self.r as usize];
        let mut next = 1u8;
        let mut colors = Vec::with_capacity(self.colors.len());
        for &c in &self.colors {
            let slot = &mut map[(c - 1) as usize];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            colors.push(*slot);
        }
        EdgeColoring {
            r: self.r,
            colors,
        }
    }
}

/// A monochromatic clique witness: every edge inside `vertices` has `color`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoClique {
    pub color: u8,
    pub vertices: Vec<usize>,
}

impl MonoClique {
    /// Re-checks the witness against the host and coloring.
    pub fn verify(&self, g: &Graph, c: &EdgeColoring) -> bool {
        if c.matches(g).is_err() {
            return false;
        }
        let pos = edge_positions(g);
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if !g.has_edge(u, v) {
                    return false;
                }
                match pos[Graph::edge_index(u, v)] {
                    Some(p) if c.color(p) == self.color => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Maps canonical pair index to position within the graph's edge list.
pub(crate) fn edge_positions(g: &Graph) -> Vec<Option<usize>> {
    let n = g.n();
    let mut pos = vec![None; n * n.saturating_sub(1) / 2];
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        pos[Graph::edge_index(u, v)] = Some(i);
    }
    pos
}

/// Finds a monochromatic `K_k`, if one exists: the lowest color class with a
/// clique wins, and within it the lexicographically first clique, so the
/// outcome is deterministic. Returns `None` for a proper coloring.
pub fn find_monochromatic_clique(
    g: &Graph,
    c: &EdgeColoring,
    k: usize,
) -> Result<Option<MonoClique>, ColoringError> {
    c.matches(g)?;
    let edges = g.edges();
    for color in 1..=c.r() as u8 {
        let class: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| c.color(*i) == color)
            .map(|(_, &e)| e)
            .collect();
        let sub = Graph::from_edges(g.n(), class).expect("host vertices in range");
        if let Some(w) = sub.find_clique(k) {
            let witness = MonoClique {
                color,
                vertices: w.to_vec(),
            };
            debug_assert!(witness.verify(g, c));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// True when the coloring has no monochromatic `K_k`.
pub fn is_proper(g: &Graph, c: &EdgeColoring, k: usize) -> Result<bool, ColoringError> {
    Ok(find_monochromatic_clique(g, c, k)?.is_none())
}

/// Convenience: the 2-coloring of `K_5` by a 5-cycle (color 1) and its
/// complementary 5-cycle (color 2) — the classic proper pattern.
pub fn two_pentagon_coloring() -> (Graph, EdgeColoring) {
    let g = Graph::complete(5).unwrap();
    let cyc = Graph::cycle(5).unwrap();
    let colors = g
        .edges()
        .into_iter()
        .map(|(u, v)| if cyc.has_edge(u, v) { 1u8 } else { 2u8 })
        .collect();
    let c = EdgeColoring::new(2, colors).unwrap();
    (g, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monochromatic_host_yields_witness() {
        let k6 = Graph::complete(6).unwrap();
        let c = EdgeColoring::constant(&k6, 2, 1).unwrap();
        let w = find_monochromatic_clique(&k6, &c, 3).unwrap().unwrap();
        assert_eq!(w.color, 1);
        assert_eq!(w.vertices.len(), 3);
        assert!(w.verify(&k6, &c));
    }

    #[test]
    fn two_pentagons_have_no_mono_triangle() {
        let (g, c) = two_pentagon_coloring();
        // oracle: scan all 10 triangles of K5 by hand
        let mut mono = 0;
        for a in 0..5 {
            for b in a + 1..5 {
                for d in b + 1..5 {
                    let pos = edge_positions(&g);
                    let c1 = c.color(pos[Graph::edge_index(a, b)].unwrap());
                    let c2 = c.color(pos[Graph::edge_index(a, d)].unwrap());
                    let c3 = c.color(pos[Graph::edge_index(b, d)].unwrap());
                    if c1 == c2 && c2 == c3 {
                        mono += 1;
                    }
                }
            }
        }
        assert_eq!(mono, 0);
        assert!(find_monochromatic_clique(&g, &c, 3).unwrap().is_none());
    }

    #[test]
    fn empty_graph_has_no_witness() {
        let g = Graph::empty(4).unwrap();
        let c = EdgeColoring::new(2, vec![]).unwrap();
        assert!(find_monochromatic_clique(&g, &c, 3).unwrap().is_none());
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let g = Graph::complete(4).unwrap();
        let c = EdgeColoring::new(2, vec![1, 2]).unwrap();
        assert!(matches!(
            find_monochromatic_clique(&g, &c, 3),
            Err(ColoringError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn color_validation() {
        assert!(EdgeColoring::new(2, vec![1, 2, 3]).is_err());
        assert!(EdgeColoring::new(2, vec![0]).is_err());
        assert!(EdgeColoring::new(0, vec![]).is_err());
    }

    #[test]
    fn canonical_labels_start_at_one() {
        let c = EdgeColoring::new(3, vec![2, 2, 3, 1]).unwrap();
        let canon = c.canonicalize_labels();
        assert_eq!(canon.colors(), &[1, 1, 2, 3]);
    }

    #[test]
    fn from_index_covers_base_r() {
        let c = EdgeColoring::from_index(3, 4, 0);
        assert_eq!(c.colors(), &[1, 1, 1, 1]);
        let c = EdgeColoring::from_index(3, 4, 80); // 80 = 2222 in base 3
        assert_eq!(c.colors(), &[3, 3, 3, 3]);
        let c = EdgeColoring::from_index(2, 3, 5); // 101 in base 2
        assert_eq!(c.colors(), &[2, 1, 2]);
    }
}
