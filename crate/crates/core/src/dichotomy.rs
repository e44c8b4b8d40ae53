//! The counting dichotomy for (r+1)-colorings of `K_n`: with
//! `alpha = 1/C(R,k)`, every coloring either has more than
//! `alpha/2 * C(n,k)` monochromatic `K_k` copies in the first `r` colors, or
//! more than `C(n,2)/R^2` edges in color `r+1`. Thresholds are exact integer
//! comparisons; the exhaustive sweep walks a mixed-radix odometer over the
//! full coloring space.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::gnp::CounterRng;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DichotomyError {
    #[error("need n >= R, got n={n}, R={ramsey}")]
    OrderBelowRamsey { n: u64, ramsey: u64 },
    #[error("coloring must use exactly r+1 = {0} colors")]
    WrongColorCount(u32),
    #[error("exhaustive sweep of {total} colorings exceeds the 3^15 cap")]
    SweepTooLarge { total: u128 },
    #[error("need k <= n and k <= R")]
    BadCliqueSize,
    #[error("need at least one ordinary color (r >= 1)")]
    NoOrdinaryColors,
    #[error(transparent)]
    Coloring(#[from] crate::coloring::ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DichotomySide {
    First,
    Second,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyCounts {
    pub mono_count: u64,
    pub last_color_edges: u64,
    pub side: DichotomySide,
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn side_of(mono: u64, last: u64, n: u64, k: u64, ramsey: u64) -> DichotomySide {
    // mono > alpha/2 * C(n,k)  <=>  2 C(R,k) mono > C(n,k)
    let first = 2 * binom(ramsey, k) * mono as u128 > binom(n, k);
    // last > C(n,2)/R^2  <=>  last R^2 > C(n,2)
    let second = last as u128 * (ramsey as u128 * ramsey as u128) > binom(n, 2);
    match (first, second) {
        (true, true) => DichotomySide::Both,
        (true, false) => DichotomySide::First,
        (false, true) => DichotomySide::Second,
        (false, false) => DichotomySide::Neither,
    }
}

/// Exact counts and verdict for one (r+1)-coloring of `K_n`.
pub fn dichotomy_check(
    n: u64,
    k: u64,
    r: u64,
    ramsey: u64,
    c: &EdgeColoring,
) -> Result<DichotomyCounts, DichotomyError> {
    if n < ramsey {
        return Err(DichotomyError::OrderBelowRamsey { n, ramsey });
    }
    if k < 2 || k > n || k > ramsey {
        return Err(DichotomyError::BadCliqueSize);
    }
    if r == 0 {
        return Err(DichotomyError::NoOrdinaryColors);
    }
    if c.r() as u64 != r + 1 {
        return Err(DichotomyError::WrongColorCount((r + 1) as u32));
    }
    let host = Graph::complete(n as usize).expect("n <= 64 for materialized checks");
    c.matches(&host)?;
    let cliques = clique_edge_lists(n as usize, k as usize);
    let mut mono = 0u64;
    for edges in &cliques {
        let first = c.color(edges[0]);
        if first as u64 <= r && edges[1..].iter().all(|&e| c.color(e) == first) {
            mono += 1;
        }
    }
    let last = c
        .colors()
        .iter()
        .filter(|&&col| col as u64 == r + 1)
        .count() as u64;
    Ok(DichotomyCounts {
        mono_count: mono,
        last_color_edges: last,
        side: side_of(mono, last, n, k, ramsey),
    })
}

/// Edge positions (in colex order) of every k-clique of `K_n`.
fn clique_edge_lists(n: usize, k: usize) -> Vec<Vec<usize>> {
    let host = Graph::complete(n).expect("small n");
    host.cliques(k)
        .into_iter()
        .map(|cl| {
            let verts = cl.to_vec();
            let mut es = Vec::with_capacity(k * (k - 1) / 2);
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    es.push(Graph::edge_index(u, v));
                }
            }
            es
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomySweep {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    #[serde(rename = "R")]
    pub ramsey: u64,
    pub colorings_checked: u64,
    pub first_only: u64,
    pub second_only: u64,
    pub both: u64,
    pub neither: u64,
    /// A coloring on neither side, if one was found.
    pub counterexample: Option<Vec<u8>>,
}

impl DichotomySweep {
    pub fn holds(&self) -> bool {
        self.neither == 0
    }
}

/// Checks every (r+1)-coloring of `K_n`; capped at 3^15 colorings, past
/// which only sampling is feasible.
pub fn dichotomy_exhaustive(
    n: u64,
    k: u64,
    r: u64,
    ramsey: u64,
) -> Result<DichotomySweep, DichotomyError> {
    if n < ramsey {
        return Err(DichotomyError::OrderBelowRamsey { n, ramsey });
    }
    if k < 2 || k > n || k > ramsey {
        return Err(DichotomyError::BadCliqueSize);
    }
    if r == 0 {
        return Err(DichotomyError::NoOrdinaryColors);
    }
    let m = (n * (n - 1) / 2) as usize;
    let colors = (r + 1) as u128;
    let total = colors.checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > 14_348_907 {
        return Err(DichotomyError::SweepTooLarge { total });
    }
    let cliques = clique_edge_lists(n as usize, k as usize);
    let first_threshold = binom(n, k); // First <=> 2 C(R,k) mono > this
    let rk_binom = 2 * binom(ramsey, k);
    let second_threshold = binom(n, 2); // Second <=> last R^2 > this
    let r2 = ramsey as u128 * ramsey as u128;

    let mut sweep = DichotomySweep {
        n,
        k,
        r,
        ramsey,
        colorings_checked: 0,
        first_only: 0,
        second_only: 0,
        both: 0,
        neither: 0,
        counterexample: None,
    };

    // odometer over colors 0..r (0-based); digit r is the last color
    let mut digits = vec![0u8; m];
    let last_digit = r as u8;
    let mut last_count: u64 = 0;
    loop {
        let second = last_count as u128 * r2 > second_threshold;
        let mut mono = 0u64;
        for edges in &cliques {
            let first = digits[edges[0]];
            if first != last_digit && edges[1..].iter().all(|&e| digits[e] == first) {
                mono += 1;
            }
        }
        let first = rk_binom * mono as u128 > first_threshold;
        sweep.colorings_checked += 1;
        match (first, second) {
            (true, true) => sweep.both += 1,
            (true, false) => sweep.first_only += 1,
            (false, true) => sweep.second_only += 1,
            (false, false) => {
                sweep.neither += 1;
                if sweep.counterexample.is_none() {
                    sweep.counterexample = Some(digits.iter().map(|&d| d + 1).collect());
                }
            }
        }
        // increment
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(sweep);
            }
            if digits[pos] == last_digit {
                last_count -= 1;
                digits[pos] = 0;
                pos += 1;
            } else {
                digits[pos] += 1;
                if digits[pos] == last_digit {
                    last_count += 1;
                }
                break;
            }
        }
    }
}

/// Seeded random colorings with one-sided reporting: a found counterexample
/// is definitive, absence is only absence.
pub fn dichotomy_sampled(
    n: u64,
    k: u64,
    r: u64,
    ramsey: u64,
    trials: u64,
    seed: u64,
) -> Result<DichotomySweep, DichotomyError> {
    if n < ramsey {
        return Err(DichotomyError::OrderBelowRamsey { n, ramsey });
    }
    if k < 2 || k > n || k > ramsey {
        return Err(DichotomyError::BadCliqueSize);
    }
    if r == 0 {
        return Err(DichotomyError::NoOrdinaryColors);
    }
    let m = (n * (n - 1) / 2) as usize;
    let rng = CounterRng::new(seed);
    let mut sweep = DichotomySweep {
        n,
        k,
        r,
        ramsey,
        colorings_checked: 0,
        first_only: 0,
        second_only: 0,
        both: 0,
        neither: 0,
        counterexample: None,
    };
    for t in 0..trials {
        let sub = CounterRng::new(rng.derive(t));
        let colors: Vec<u8> = (0..m)
            .map(|i| sub.below(i as u64, r + 1) as u8 + 1)
            .collect();
        let c = EdgeColoring::new((r + 1) as u32, colors).expect("colors in range");
        let counts = dichotomy_check(n, k, r, ramsey, &c)?;
        sweep.colorings_checked += 1;
        match counts.side {
            DichotomySide::Both => sweep.both += 1,
            DichotomySide::First => sweep.first_only += 1,
            DichotomySide::Second => sweep.second_only += 1,
            DichotomySide::Neither => {
                sweep.neither += 1;
                if sweep.counterexample.is_none() {
                    sweep.counterexample = Some(c.colors().to_vec());
                }
            }
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_last_color_lands_on_second() {
        let host = Graph::complete(6).unwrap();
        let c = EdgeColoring::constant(&host, 3, 3).unwrap();
        let out = dichotomy_check(6, 3, 2, 6, &c).unwrap();
        assert_eq!(out.last_color_edges, 15);
        assert_eq!(out.mono_count, 0);
        assert_eq!(out.side, DichotomySide::Second);
    }

    #[test]
    fn all_first_color_lands_on_first() {
        let host = Graph::complete(6).unwrap();
        let c = EdgeColoring::constant(&host, 3, 1).unwrap();
        let out = dichotomy_check(6, 3, 2, 6, &c).unwrap();
        assert_eq!(out.mono_count, 20);
        assert_eq!(out.last_color_edges, 0);
        assert_eq!(out.side, DichotomySide::First);
    }

    #[test]
    fn preconditions() {
        let host = Graph::complete(5).unwrap();
        let c = EdgeColoring::constant(&host, 3, 1).unwrap();
        assert!(matches!(
            dichotomy_check(5, 3, 2, 6, &c),
            Err(DichotomyError::OrderBelowRamsey { .. })
        ));
        let host6 = Graph::complete(6).unwrap();
        let c2 = EdgeColoring::constant(&host6, 2, 1).unwrap();
        assert!(matches!(
            dichotomy_check(6, 3, 2, 6, &c2),
            Err(DichotomyError::WrongColorCount(3))
        ));
    }

    #[test]
    fn sweep_cap_is_enforced() {
        assert!(matches!(
            dichotomy_exhaustive(7, 3, 2, 6),
            Err(DichotomyError::SweepTooLarge { .. })
        ));
    }

    #[test]
    fn tiny_exhaustive_sweep_agrees_with_per_coloring_checks() {
        // n=3, k=3, r=2, R=3: 3^3 = 27 colorings of K3
        let sweep = dichotomy_exhaustive(3, 3, 2, 3).unwrap();
        assert_eq!(sweep.colorings_checked, 27);
        let mut neither = 0;
        for idx in 0..27u64 {
            let c = EdgeColoring::from_index(3, 3, idx);
            let counts = dichotomy_check(3, 3, 2, 3, &c).unwrap();
            if counts.side == DichotomySide::Neither {
                neither += 1;
            }
        }
        assert_eq!(sweep.neither, neither);
        assert_eq!(
            sweep.first_only + sweep.second_only + sweep.both + sweep.neither,
            27
        );
    }

    #[test]
    fn sampled_sweep_runs_deterministically() {
        let a = dichotomy_sampled(6, 3, 2, 6, 200, 9).unwrap();
        let b = dichotomy_sampled(6, 3, 2, 6, 200, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.colorings_checked, 200);
        assert_eq!(a.neither, 0);
    }
}
