//! (rho, d)-density checks, canonical sequences, and the construction
//! parameters for the relaxed Folkman bound.
//!
//! A graph is (rho, d)-dense when every induced subgraph on `m >= rho n`
//! vertices has at least `d m^2 / 2` edges; an averaging argument reduces the
//! check to `m = ceil(rho n)` exactly. Thresholds are exact rational
//! comparisons, so boundary cases like `d = 2/9` come out right.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{EdgeColoring, MonoClique};
use crate::gnp::CounterRng;
use crate::graph::{Graph, VertexSet};
use crate::interval::{Interval, IntervalError, LogInterval};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("fraction must lie in (0, 1], got {0}/{1}")]
    BadFraction(u64, u64),
    #[error("exhaustive mode over {subsets} subsets exceeds the 10^7 budget")]
    BudgetExceeded { subsets: u128 },
    #[error("coloring must use exactly 2 colors")]
    NotTwoColors,
    #[error("sequence length must be {expected} = 2k-2, got {got}")]
    BadSequenceLength { expected: usize, got: usize },
    #[error("not a canonical sequence: {0}")]
    MalformedSequence(String),
    #[error("alpha must lie strictly inside (0, 1/4)")]
    BadAlpha,
    #[error(transparent)]
    Coloring(#[from] crate::coloring::ColoringError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Exact nonnegative rational, kept unreduced (comparisons cross-multiply).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self, DensityError> {
        if den == 0 || num == 0 || num > den {
            return Err(DensityError::BadFraction(num, den));
        }
        Ok(Fraction { num, den })
    }

    /// Parses `a/b` or a plain decimal like `0.45`.
    pub fn parse(text: &str) -> Result<Self, DensityError> {
        let bad = || DensityError::BadFraction(0, 0);
        if let Some((a, b)) = text.split_once('/') {
            let num = a.trim().parse().map_err(|_| bad())?;
            let den = b.trim().parse().map_err(|_| bad())?;
            return Fraction::new(num, den);
        }
        if let Some((int, frac)) = text.split_once('.') {
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let digits = frac.len() as u32;
            if digits > 18 {
                return Err(bad());
            }
            let frac_val: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let den = 10u64.pow(digits.max(1));
            return Fraction::new(int * den + frac_val, den);
        }
        let num: u64 = text.trim().parse().map_err(|_| bad())?;
        Fraction::new(num, 1)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `ceil(self * n)` exactly.
    pub fn ceil_mul(&self, n: u64) -> u64 {
        ((self.num as u128 * n as u128).div_ceil(self.den as u128)) as u64
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityParams {
    pub rho: Fraction,
    pub d: Fraction,
}

impl DensityParams {
    pub fn subset_size(&self, n: usize) -> usize {
        self.rho.ceil_mul(n as u64) as usize
    }
}

#[derive(Debug, Clone, Copy)]
pub enum DensityMode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

/// Exhaustive answers are exact; sampled answers are one-sided (a found
/// violation is definitive, absence only means none was seen).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DensityOutcome {
    Dense,
    NotDense { witness: Vec<usize>, edges: u64 },
    NoViolationFound { trials: u64 },
}

impl DensityOutcome {
    /// No violation observed (exhaustively or in the sample).
    pub fn holds(&self) -> bool {
        !matches!(self, DensityOutcome::NotDense { .. })
    }
}

fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// `e >= d m^2 / 2`, exactly.
fn meets_density(edges: u64, m: u64, d: Fraction) -> bool {
    2 * edges as u128 * d.den as u128 >= d.num as u128 * (m as u128 * m as u128)
}

/// Decides whether `g` is (rho, d)-dense, checking only `m = ceil(rho n)`
/// subsets (the reduction to the smallest admissible size is exact).
pub fn is_rho_d_dense(
    g: &Graph,
    dp: &DensityParams,
    mode: DensityMode,
) -> Result<DensityOutcome, DensityError> {
    let n = g.n();
    let m = dp.subset_size(n);
    if m == 0 || m > n {
        // vacuous: no subset of the required size
        return Ok(DensityOutcome::Dense);
    }
    match mode {
        DensityMode::Exhaustive => {
            let subsets = binom_u128(n as u64, m as u64);
            if subsets > 10_000_000 {
                return Err(DensityError::BudgetExceeded { subsets });
            }
            let mut idx: Vec<usize> = (0..m).collect();
            loop {
                let set = VertexSet::from_iter(idx.iter().copied());
                let e = g.edges_within(&set) as u64;
                if !meets_density(e, m as u64, dp.d) {
                    return Ok(DensityOutcome::NotDense {
                        witness: idx,
                        edges: e,
                    });
                }
                // next m-combination of [n]
                let mut i = m;
                loop {
                    if i == 0 {
                        return Ok(DensityOutcome::Dense);
                    }
                    i -= 1;
                    if idx[i] != i + n - m {
                        break;
                    }
                }
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        DensityMode::Sampled { seed, trials } => {
            let rng = CounterRng::new(seed);
            for t in 0..trials {
                let set = sample_subset(&rng, t, n, m);
                let e = g.edges_within(&set) as u64;
                if !meets_density(e, m as u64, dp.d) {
                    return Ok(DensityOutcome::NotDense {
                        witness: set.to_vec(),
                        edges: e,
                    });
                }
            }
            Ok(DensityOutcome::NoViolationFound { trials })
        }
    }
}

/// Uniform m-subset via a partial Fisher-Yates walk on derived randomness.
fn sample_subset(rng: &CounterRng, trial: u64, n: usize, m: usize) -> VertexSet {
    let sub = CounterRng::new(rng.derive(trial));
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = i + sub.below(i as u64, (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    VertexSet::from_iter(pool[..m].iter().copied())
}

/// Ordered vertices whose forward edges are monochromatic per position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalSequence {
    pub vertices: Vec<usize>,
    /// `forward_colors[i]` colors all edges from `vertices[i]` to later ones.
    pub forward_colors: Vec<u8>,
}

impl CanonicalSequence {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-checks the defining invariant against the host coloring.
    pub fn verify(&self, g: &Graph, c: &EdgeColoring) -> bool {
        if c.matches(g).is_err() {
            return false;
        }
        if self.forward_colors.len() + 1 != self.vertices.len().max(1) {
            return false;
        }
        let pos = crate::coloring::edge_positions(g);
        for (i, &u) in self.vertices.iter().enumerate() {
            if i + 1 == self.vertices.len() {
                break;
            }
            for &v in &self.vertices[i + 1..] {
                if !g.has_edge(u, v) {
                    return false;
                }
                match pos[Graph::edge_index(u, v)] {
                    Some(p) if c.color(p) == self.forward_colors[i] => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Per-level diagnostics: what the greedy step saw and which of the
/// proof-regime guarantees actually held there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub set_size: usize,
    pub chosen: usize,
    pub degree: usize,
    pub majority: usize,
    /// `deg(u) >= d * |S|`
    pub degree_guarantee: bool,
    /// `|M_u| >= d * |S| / 2`
    pub majority_guarantee: bool,
    /// `|S| >= (2/d)^(remaining - 2)`
    pub size_guarantee: bool,
}

/// Outcome of the greedy construction. Guarantee breaches are reported, not
/// fatal; the construction only stops when no forward step exists at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalRun {
    pub sequence: Option<CanonicalSequence>,
    pub levels: Vec<LevelReport>,
    /// Level at which the degree/majority guarantee broke fatally (the
    /// current vertex had no forward edge to extend with).
    pub stuck_at: Option<usize>,
}

/// Greedy canonical-sequence construction: at each level pick the maximum
/// degree vertex (lowest index on ties) and keep its majority-color
/// neighborhood (ties toward color 1). The recursion hypotheses are checked
/// at runtime and reported per level rather than assumed.
pub fn canonical_sequence(
    g: &Graph,
    c: &EdgeColoring,
    ell: usize,
    d: Fraction,
) -> Result<CanonicalRun, DensityError> {
    c.matches(g)?;
    if c.r() != 2 {
        return Err(DensityError::NotTwoColors);
    }
    let pos = crate::coloring::edge_positions(g);
    let color_of = |u: usize, v: usize| -> u8 { c.color(pos[Graph::edge_index(u, v)].unwrap()) };

    let mut levels = Vec::new();
    let mut vertices = Vec::new();
    let mut forward_colors = Vec::new();
    let mut current: Vec<usize> = (0..g.n()).collect();

    for level in 1..=ell {
        if current.is_empty() {
            return Ok(CanonicalRun {
                sequence: None,
                levels,
                stuck_at: Some(level),
            });
        }
        // maximum degree inside the current set, lowest index on ties
        let set = VertexSet::from_iter(current.iter().copied());
        let (&u, deg) = current
            .iter()
            .map(|v| (v, (g.neighbors(*v) & set.mask()).count_ones() as usize))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(a.0)))
            .expect("nonempty");

        if level == ell {
            levels.push(LevelReport {
                level,
                set_size: current.len(),
                chosen: u,
                degree: deg,
                majority: 0,
                degree_guarantee: true,
                majority_guarantee: true,
                size_guarantee: size_guarantee(current.len(), ell - level, d),
            });
            vertices.push(u);
            break;
        }

        let mut classes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for &w in &current {
            if w != u && g.has_edge(u, w) {
                classes[(color_of(u, w) - 1) as usize].push(w);
            }
        }
        // majority color, ties toward color 1
        let pick = usize::from(classes[1].len() > classes[0].len());
        let majority = classes[pick].len();
        let m = current.len() as u128;
        levels.push(LevelReport {
            level,
            set_size: current.len(),
            chosen: u,
            degree: deg,
            majority,
            degree_guarantee: deg as u128 * d.den as u128 >= d.num as u128 * m,
            majority_guarantee: 2 * majority as u128 * d.den as u128 >= d.num as u128 * m,
            size_guarantee: size_guarantee(current.len(), ell - level, d),
        });
        if majority == 0 {
            return Ok(CanonicalRun {
                sequence: None,
                levels,
                stuck_at: Some(level),
            });
        }
        vertices.push(u);
        forward_colors.push(pick as u8 + 1);
        current = classes[pick].clone();
    }

    let seq = CanonicalSequence {
        vertices,
        forward_colors,
    };
    debug_assert!(seq.verify(g, c));
    Ok(CanonicalRun {
        sequence: Some(seq),
        levels,
        stuck_at: None,
    })
}

/// Vertex-count hypothesis at a level with `rem_after` picks still to come:
/// `|S| >= (2/d)^(rem_after - 1)`, compared exactly as
/// `|S| * num^e >= (2 den)^e`.
fn size_guarantee(set_size: usize, rem_after: usize, d: Fraction) -> bool {
    let e = rem_after.saturating_sub(1) as u32;
    match (
        (d.num as u128).checked_pow(e),
        (2 * d.den as u128).checked_pow(e),
    ) {
        (Some(np), Some(dp)) => match (set_size as u128).checked_mul(np) {
            Some(lhs) => lhs >= dp,
            None => true,
        },
        // threshold overflowed u128: unattainable for any 64-vertex host
        _ => false,
    }
}

/// Pigeonhole step: a canonical sequence of length `2k - 2` contains a
/// monochromatic `K_k` — some `k - 1` of the first `2k - 3` positions share
/// a forward color; those vertices plus the last one form the clique.
pub fn mono_clique_from_canonical(
    g: &Graph,
    c: &EdgeColoring,
    seq: &CanonicalSequence,
    k: usize,
) -> Result<MonoClique, DensityError> {
    let expected = 2 * k - 2;
    if seq.len() != expected {
        return Err(DensityError::BadSequenceLength {
            expected,
            got: seq.len(),
        });
    }
    if !seq.verify(g, c) {
        return Err(DensityError::MalformedSequence(
            "forward-color invariant does not hold".into(),
        ));
    }
    for color in 1..=2u8 {
        let positions: Vec<usize> = (0..2 * k - 3)
            .filter(|&i| seq.forward_colors[i] == color)
            .collect();
        if positions.len() >= k - 1 {
            let mut vertices: Vec<usize> = positions[..k - 1]
                .iter()
                .map(|&i| seq.vertices[i])
                .collect();
            vertices.push(seq.vertices[expected - 1]);
            let w = MonoClique { color, vertices };
            if !w.verify(g, c) {
                return Err(DensityError::MalformedSequence(
                    "pigeonhole clique failed verification".into(),
                ));
            }
            return Ok(w);
        }
    }
    Err(DensityError::MalformedSequence(
        "pigeonhole impossible: fewer than k-1 repeats in 2k-3 slots".into(),
    ))
}

/// Construction parameters for the relaxed bound at a given `alpha`:
/// order `n = 2^(4k/(1-4 alpha))`, constant edge probability
/// `p = 2 n^(-(7+4 alpha)/(16 k)) = 2^(-(20 alpha + 3)/(4(1-4 alpha)))`,
/// the expected count of l-cliques, and the Chernoff tail for density.
#[derive(Debug, Clone)]
pub struct KlConstruction {
    pub k: u64,
    pub alpha: Fraction,
    pub n: LogInterval,
    /// Constant in `n` once `alpha` and `k` are fixed.
    pub p: LogInterval,
}

pub fn kl_construction_params(k: u64, alpha: Fraction) -> Result<KlConstruction, DensityError> {
    // 0 < alpha < 1/4
    if 4 * alpha.num >= alpha.den {
        return Err(DensityError::BadAlpha);
    }
    // exponent 4k/(1 - 4 alpha) = 4 k den / (den - 4 num)
    let den_gap = alpha.den - 4 * alpha.num;
    let n_exp = Interval::from_u64(4 * k * alpha.den).mul_ratio(1, den_gap);
    let n = LogInterval::from_log2(n_exp);
    // p = 2 * n^(-(7 + 4 alpha)/(16 k)); (7 + 4 alpha) = (7 den + 4 num)/den
    let p = LogInterval::from_u64(2).mul(&n.pow_ratio(
        -((7 * alpha.den + 4 * alpha.num) as i64),
        16 * k * alpha.den,
    )?);
    Ok(KlConstruction { k, alpha, n, p })
}

impl KlConstruction {
    /// The closed form `2^(-(20 alpha + 3)/(4 (1 - 4 alpha)))` for `p`, kept
    /// as an independent route for cross-checking the simplification.
    pub fn p_closed_form(&self) -> LogInterval {
        let num = 20 * self.alpha.num + 3 * self.alpha.den;
        let den = 4 * (self.alpha.den - 4 * self.alpha.num);
        let exp = Interval::from_u64(num).mul_ratio(-1, den);
        LogInterval::from_log2(exp)
    }

    /// Upper bound `((e n / l) p^((l-1)/2))^l` for the expected number of
    /// l-cliques.
    pub fn expected_cliques(&self, l: u64) -> Result<LogInterval, DensityError> {
        let e = LogInterval::from_f64(std::f64::consts::E)?;
        let inner = e
            .mul(&self.n)
            .div(&LogInterval::from_u64(l))?
            .mul(&self.p.pow_ratio((l - 1) as i64, 2)?);
        Ok(inner.powi(l as i64)?)
    }

    /// Chernoff tail `exp(-eps^2 p t^2 / 24)` for a t-set spanning too few
    /// edges.
    pub fn chernoff_tail(&self, t: u64, eps: f64) -> Result<LogInterval, DensityError> {
        let exponent = LogInterval::from_f64(eps * eps)?
            .mul(&self.p)
            .mul(&LogInterval::from_u64(t).powi(2)?)
            .div(&LogInterval::from_u64(24))?;
        Ok(exponent.exp_neg())
    }
}
