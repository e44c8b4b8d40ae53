//! Parameter derivation and certified verification of the inequality chain
//! that yields exponential Folkman-number bounds.
//!
//! Everything is interval arithmetic in log2 scale: `R` enters as a
//! black-box quantity (a Skolem-type upper bound, a product-rule lower
//! bound, or a known small value), the order threshold `k^(400 k^4) R^(40 k^2)`
//! and the coefficients `b, C, C0, tau, eps, alpha, p` are derived from it,
//! and [`check_chain`] certifies each inequality the argument needs, one
//! report entry per inequality with a log2 margin. `Indeterminate` is a
//! first-class verdict: the checker never guesses when enclosures overlap.

// `!(a > b)` rejects NaN endpoints as failures; see interval.rs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{codegree_majorant, ell, HypergraphError};
use crate::interval::{Interval, IntervalError, LogInterval, Verdict};

/// Product-rule recursion cap; past this the bound is astronomically far
/// from anything the rest of the toolkit can use anyway.
pub const MAX_PRODUCT_COLORS: u64 = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("need k >= 3 and r >= 2, got k={k}, r={r}")]
    BadArity { k: u64, r: u64 },
    #[error("R must be certified at least 2r+1 = {min}")]
    RamseyTooSmall { min: u64 },
    #[error("missing product-rule base value for {0} colors")]
    MissingBase(u64),
    #[error("color count {0} exceeds the product-rule cap {MAX_PRODUCT_COLORS}")]
    TooManyColors(u64),
    #[error("edge probability cannot be certified <= 1/2")]
    EdgeProbabilityTooLarge,
    #[error("order must be certified > 1")]
    OrderTooSmall,
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// `r^(r k)` in log scale — the classical upper bound for the r-color
/// Ramsey number of `K_k`.
pub fn ramsey_upper_skolem(k: u64, r: u64) -> LogInterval {
    LogInterval::from_u64(r)
        .powi((r * k) as i64)
        .expect("r >= 1")
}

/// Best lower bound derivable from trusted base values by iterating
/// `R(k; s+t) >= (R(k;s) - 1)(R(k;t) - 1) + 1` over splits.
///
/// `base` maps a color count to a trusted lower bound (for example
/// `R(3;2) >= 6`). The recursion is exact integer arithmetic.
pub fn ramsey_lower_product(
    _k: u64,
    r: u64,
    base: &BTreeMap<u64, u64>,
) -> Result<LogInterval, BoundsError> {
    if r > MAX_PRODUCT_COLORS {
        return Err(BoundsError::TooManyColors(r));
    }
    let mut best: BTreeMap<u64, BigUint> = BTreeMap::new();
    for t in 2..=r {
        let mut cur: Option<BigUint> = base.get(&t).map(|&v| BigUint::from(v));
        for s in 2..=t / 2 {
            let (Some(a), Some(b)) = (best.get(&s), best.get(&(t - s))) else {
                continue;
            };
            let one = BigUint::from(1u32);
            if *a <= one || *b <= one {
                continue;
            }
            let candidate = (a - &one) * (b - &one) + &one;
            if cur.as_ref().is_none_or(|c| candidate > *c) {
                cur = Some(candidate);
            }
        }
        if let Some(v) = cur {
            best.insert(t, v);
        }
    }
    let value = best.get(&r).ok_or(BoundsError::MissingBase(r))?;
    Ok(biguint_to_loginterval(value))
}

/// Certified log2 enclosure of a big natural number.
pub fn biguint_to_loginterval(x: &BigUint) -> LogInterval {
    let bits = x.bits();
    if bits == 0 {
        return LogInterval::zero();
    }
    if bits <= 64 {
        let digits = x.to_u64_digits();
        return LogInterval::from_u64(digits[0]);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let m = top.to_u64_digits()[0];
    let lo = Interval::from_u64(m)
        .log2()
        .expect("top word nonzero")
        .add(&Interval::point(shift as f64));
    let hi = Interval::from_u64(m + 1)
        .log2()
        .expect("positive")
        .add(&Interval::point(shift as f64));
    LogInterval::from_log2(Interval::new(lo.lo(), hi.hi()).expect("ordered"))
}

/// The order threshold `k^(400 k^4) * R^(40 k^2)`.
pub fn threshold_order(k: u64, ramsey: &LogInterval) -> LogInterval {
    let k4 = (400 * k * k * k * k) as i64;
    let k2 = (40 * k * k) as i64;
    LogInterval::from_u64(k)
        .powi(k4)
        .expect("k >= 1")
        .mul(&ramsey.powi(k2).expect("R > 0"))
}

/// The full constant set tied together by its defining containments:
/// `b = 1/(2R^2)`, `C = 2^(5 sqrt(log n log k)) R^16`, `p = C n^(-2/(k+1))`,
/// `C0 = 2^(4 sqrt(log n)) R^(10/k)`, `tau = C0 n^(-2/(k+1))`,
/// `alpha = 1/C(R,k)`, `eps = alpha/(2r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub k: u64,
    pub r: u64,
    pub ramsey: LogInterval,
    pub n: LogInterval,
    pub b: LogInterval,
    pub c: LogInterval,
    pub c0: LogInterval,
    pub tau: LogInterval,
    pub epsilon: LogInterval,
    pub alpha: LogInterval,
    pub p: LogInterval,
}

/// Derives the constant set; `n` defaults to [`threshold_order`].
pub fn derive_params(
    k: u64,
    r: u64,
    ramsey: LogInterval,
    n: Option<LogInterval>,
) -> Result<ParamSet, BoundsError> {
    if k < 3 || r < 2 {
        return Err(BoundsError::BadArity { k, r });
    }
    // R(k;r) > 2r, witnessed by a factorization of K_{2r}; the comparison is
    // strict so an exactly-integer R = 2r+1 certifies cleanly
    let min = 2 * r + 1;
    if !(ramsey.lo() > LogInterval::from_u64(2 * r).hi()) {
        return Err(BoundsError::RamseyTooSmall { min });
    }
    let n = n.unwrap_or_else(|| threshold_order(k, &ramsey));
    let log_n = n.log2_interval();
    if !(log_n.lo() > 0.0) {
        return Err(BoundsError::OrderTooSmall);
    }
    let log_k = Interval::from_u64(k).log2()?;

    let c_exp = log_n.mul(&log_k).sqrt()?.mul_ratio(5, 1);
    let c = LogInterval::from_log2(c_exp).mul(&ramsey.powi(16)?);
    let c0_exp = log_n.sqrt()?.mul_ratio(4, 1);
    let c0 = LogInterval::from_log2(c0_exp).mul(&ramsey.pow_ratio(10, k)?);
    let p = c.mul(&n.pow_ratio(-2, k + 1)?);
    let tau = c0.mul(&n.pow_ratio(-2, k + 1)?);
    let alpha = ramsey.binomial(k)?.recip()?;
    let epsilon = alpha.div(&LogInterval::from_u64(2 * r))?;
    let b = LogInterval::from_u64(2).mul(&ramsey.powi(2)?).recip()?;
    Ok(ParamSet {
        k,
        r,
        ramsey,
        n,
        b,
        c,
        c0,
        tau,
        epsilon,
        alpha,
        p,
    })
}

/// One verified inequality, normalized to `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainItem {
    pub id: String,
    pub lhs_log2: [f64; 2],
    pub rhs_log2: [f64; 2],
    pub verdict: Verdict,
    pub margin: f64,
}

impl ChainItem {
    fn from_pair(id: &str, lhs: &LogInterval, rhs: &LogInterval) -> ChainItem {
        let (verdict, margin) = lhs.certify_le(rhs);
        ChainItem {
            id: id.to_string(),
            lhs_log2: [lhs.lo(), lhs.hi()],
            rhs_log2: [rhs.lo(), rhs.hi()],
            verdict,
            margin,
        }
    }

    fn indeterminate(id: &str, why: &str) -> ChainItem {
        ChainItem {
            id: format!("{id} ({why})"),
            lhs_log2: [f64::NEG_INFINITY, f64::INFINITY],
            rhs_log2: [f64::NEG_INFINITY, f64::INFINITY],
            verdict: Verdict::Indeterminate,
            margin: f64::NEG_INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub k: u64,
    pub r: u64,
    #[serde(rename = "log2_R")]
    pub log2_ramsey: f64,
    pub log2_n: f64,
    pub items: Vec<ChainItem>,
}

impl ChainReport {
    pub fn all_certified_true(&self) -> bool {
        self.items.iter().all(|i| i.verdict == Verdict::CertifiedTrue)
    }

    pub fn any_certified_false(&self) -> bool {
        self.items.iter().any(|i| i.verdict == Verdict::CertifiedFalse)
    }

    pub fn item(&self, id: &str) -> Option<&ChainItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

/// Of two sub-inequalities, keeps the one with the smaller margin and ands
/// the verdicts, so a conjunction reports its weakest link.
fn conjoin(id: &str, parts: Vec<ChainItem>) -> ChainItem {
    let mut verdict = Verdict::CertifiedTrue;
    let mut worst: Option<ChainItem> = None;
    for p in parts {
        verdict = verdict.and(p.verdict);
        let replace = match &worst {
            None => true,
            Some(w) => p.margin < w.margin,
        };
        if replace {
            worst = Some(p);
        }
    }
    let w = worst.expect("at least one part");
    ChainItem {
        id: id.to_string(),
        verdict,
        ..w
    }
}

/// Certifies the whole inequality chain at the given parameters.
pub fn check_chain(ps: &ParamSet) -> ChainReport {
    let k = ps.k;
    let mut items = Vec::with_capacity(8);

    // (i) n >= (2C)^((k+1)/2), equivalently p <= 1/2
    items.push(match two_c_power(ps) {
        Ok(lhs) => ChainItem::from_pair("p12", &lhs, &ps.n),
        Err(_) => ChainItem::indeterminate("p12", "domain"),
    });

    // (ii) n >= (3/b)^((k+1)/(k-1)) C^(C(k+2,2))
    items.push(match final_rhs(ps) {
        Ok(lhs) => ChainItem::from_pair("final", &lhs, &ps.n),
        Err(_) => ChainItem::indeterminate("final", "domain"),
    });

    // (iii) n >= 2^(10 k^2 sqrt(log n log k)) R^(20 k^2)
    items.push(match strong_rhs(ps) {
        Ok(lhs) => ChainItem::from_pair("strong", &lhs, &ps.n),
        Err(_) => ChainItem::indeterminate("strong", "domain"),
    });

    // (iv) tau <= (k^2!)^(-2)
    let fact_k2 = LogInterval::factorial(k * k);
    items.push(match fact_k2.powi(-2) {
        Ok(rhs) => ChainItem::from_pair("tau-bound", &ps.tau, &rhs),
        Err(_) => ChainItem::indeterminate("tau-bound", "domain"),
    });

    // (v) delta(n, k, tau) <= eps / (k^2!)
    items.push(
        match (codegree_majorant(&ps.n, k, &ps.tau), ps.epsilon.div(&fact_k2)) {
            (Ok(lhs), Ok(rhs)) => ChainItem::from_pair("delta-eps", &lhs, &rhs),
            _ => ChainItem::indeterminate("delta-eps", "domain"),
        },
    );

    // (vi) per-j floors for tau^(j-1) n^(ell_j - 2), plus the C0 floor
    items.push(taucheck_item(ps));

    // (vii) container cost dominance and its sufficient inequality
    items.push(toshow_item(ps));

    // (viii) (b/3) C n^(1 + (k-1)/(k+1)) >= C^(C(k+1,2)) n
    items.push(match bp_sides(ps) {
        Ok((lhs, rhs)) => ChainItem::from_pair("bp", &lhs, &rhs),
        Err(_) => ChainItem::indeterminate("bp", "domain"),
    });

    ChainReport {
        k,
        r: ps.r,
        log2_ramsey: ps.ramsey.approx_log2(),
        log2_n: ps.n.approx_log2(),
        items,
    }
}

fn two_c_power(ps: &ParamSet) -> Result<LogInterval, BoundsError> {
    Ok(LogInterval::from_u64(2)
        .mul(&ps.c)
        .pow_ratio((ps.k + 1) as i64, 2)?)
}

fn final_rhs(ps: &ParamSet) -> Result<LogInterval, BoundsError> {
    let k = ps.k;
    let three_over_b = LogInterval::from_u64(3).div(&ps.b)?;
    let binom_k2 = ((k + 2) * (k + 1) / 2) as i64;
    Ok(three_over_b
        .pow_ratio((k + 1) as i64, k - 1)?
        .mul(&ps.c.powi(binom_k2)?))
}

fn strong_rhs(ps: &ParamSet) -> Result<LogInterval, BoundsError> {
    let k = ps.k;
    let log_n = ps.n.log2_interval();
    let log_k = Interval::from_u64(k).log2()?;
    let exp = log_n
        .mul(&log_k)
        .sqrt()?
        .mul_ratio((10 * k * k) as i64, 1);
    Ok(LogInterval::from_log2(exp).mul(&ps.ramsey.powi((20 * k * k) as i64)?))
}

fn taucheck_item(ps: &ParamSet) -> ChainItem {
    let k = ps.k;
    let mut parts = Vec::new();
    let floor = LogInterval::pow2_int((16 * k * k * k * k) as i64)
        .mul(&match ps.ramsey.powi((2 * k) as i64) {
            Ok(v) => v,
            Err(_) => return ChainItem::indeterminate("taucheck", "domain"),
        });
    for j in 2..=k * (k - 1) / 2 {
        let lhs_j = match ps
            .tau
            .powi((j - 1) as i64)
            .and_then(|t| Ok(t.mul(&ps.n.powi((ell(j) - 2) as i64)?)))
        {
            Ok(v) => v,
            Err(_) => return ChainItem::indeterminate("taucheck", "domain"),
        };
        parts.push(ChainItem::from_pair(&format!("taucheck[j={j}]"), &floor, &lhs_j));
    }
    // C0 >= 2^(80 k^2) R^(10/k)
    let c0_floor = LogInterval::pow2_int((80 * k * k) as i64).mul(
        &match ps.ramsey.pow_ratio(10, k) {
            Ok(v) => v,
            Err(_) => return ChainItem::indeterminate("taucheck", "domain"),
        },
    );
    parts.push(ChainItem::from_pair("taucheck[c0]", &c0_floor, &ps.c0));
    conjoin("taucheck", parts)
}

fn toshow_item(ps: &ParamSet) -> ChainItem {
    let k = ps.k;
    let r = ps.r;
    let fact_2k2 = LogInterval::factorial(2 * k * k);
    let build = || -> Result<Vec<ChainItem>, BoundsError> {
        let log_inv_eps = ps.epsilon.recip()?.log2_positive()?;
        let log_inv_tau = ps.tau.recip()?.log2_positive()?;
        let lhs = LogInterval::from_u64(r)
            .mul(&fact_2k2)
            .mul(&log_inv_eps)
            .mul(&ps.c0)
            .mul(&log_inv_tau);
        let rhs = ps.c.mul(&ps.b); // C/(2R^2)
        let toshow = ChainItem::from_pair("toshow[direct]", &lhs, &rhs);

        let log_r = ps.ramsey.log2_positive()?;
        let log_n = ps.n.log2_positive()?;
        let lhs2 = LogInterval::from_u64(2)
            .mul(&ps.ramsey.powi(3)?)
            .mul(&log_r)
            .mul(&LogInterval::from_u64(2 * k).powi((4 * k * k) as i64)?)
            .mul(&log_n);
        let rhs2 = ps.c.div(&ps.c0)?;
        let last = ChainItem::from_pair("toshow[last]", &lhs2, &rhs2);
        Ok(vec![toshow, last])
    };
    match build() {
        Ok(parts) => conjoin("toshow", parts),
        Err(_) => ChainItem::indeterminate("toshow", "domain"),
    }
}

fn bp_sides(ps: &ParamSet) -> Result<(LogInterval, LogInterval), BoundsError> {
    let k = ps.k;
    let binom_k1 = ((k + 1) * k / 2) as i64;
    let lhs = ps.c.powi(binom_k1)?.mul(&ps.n);
    let rhs = ps
        .b
        .div(&LogInterval::from_u64(3))?
        .mul(&ps.c)
        .mul(&ps.n.pow_ratio((2 * k) as i64, k + 1)?);
    Ok((lhs, rhs))
}

/// Lower bound `exp(-C^(C(k+1,2)) n)` for the probability that `G(n, p)`
/// has no `K_(k+1)`, valid when `p = C n^(-2/(k+1)) <= 1/2` (checked).
pub fn fkg_lower_bound(
    n: &LogInterval,
    k: u64,
    c: &LogInterval,
) -> Result<LogInterval, BoundsError> {
    let p = c.mul(&n.pow_ratio(-2, k + 1)?);
    let half = LogInterval::pow2_int(-1);
    if p.certify_le(&half).0 != Verdict::CertifiedTrue {
        return Err(BoundsError::EdgeProbabilityTooLarge);
    }
    let binom = ((k + 1) * k / 2) as i64;
    let exponent = c.powi(binom)?.mul(n);
    Ok(exponent.exp_neg())
}

/// Upper bound on `ln |C|` for the clique-specific container collection:
/// `(2k^2)! log2(1/eps) tau log2(1/tau) C(n, 2)`.
pub fn container_count_bound(
    k: u64,
    eps: &LogInterval,
    tau: &LogInterval,
    n: &LogInterval,
) -> Result<LogInterval, BoundsError> {
    let half = LogInterval::pow2_int(-1);
    if eps.is_zero() || eps.certify_le(&half).0 != Verdict::CertifiedTrue {
        return Err(BoundsError::Domain("eps must satisfy 0 < eps < 1/2".into()));
    }
    if tau.is_zero() || tau.certify_le(&LogInterval::one()).0 != Verdict::CertifiedTrue {
        return Err(BoundsError::Domain("tau must satisfy 0 < tau < 1".into()));
    }
    let log_inv_eps = eps.recip()?.log2_positive()?;
    let log_inv_tau = tau.recip()?.log2_positive()?;
    Ok(LogInterval::factorial(2 * k * k)
        .mul(&log_inv_eps)
        .mul(tau)
        .mul(&log_inv_tau)
        .mul(&n.binomial(2)?))
}

/// The r-th power form: upper bound on `ln |C|^r`.
pub fn container_count_bound_pow_r(
    k: u64,
    r: u64,
    eps: &LogInterval,
    tau: &LogInterval,
    n: &LogInterval,
) -> Result<LogInterval, BoundsError> {
    Ok(LogInterval::from_u64(r).mul(&container_count_bound(k, eps, tau, n)?))
}

/// Generic-uniformity form with `c = 800 (h!)^3 h`, over a plain vertex
/// count rather than `C(n,2)`.
pub fn container_count_bound_generic(
    h: u64,
    eps: &LogInterval,
    tau: &LogInterval,
    vertices: &LogInterval,
) -> Result<LogInterval, BoundsError> {
    let log_inv_eps = eps.recip()?.log2_positive()?;
    let log_inv_tau = tau.recip()?.log2_positive()?;
    let c = LogInterval::from_u64(800)
        .mul(&LogInterval::factorial(h).powi(3)?)
        .mul(&LogInterval::from_u64(h));
    Ok(c.mul(&log_inv_eps).mul(tau).mul(&log_inv_tau).mul(vertices))
}

/// The union-bound value `|C|^r exp(-p C(n,2) / R^2)` and whether it is
/// dominated by `exp(-b p C(n,2))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonRamseyBound {
    /// Certified log2 enclosure of the union bound (saturating for
    /// astronomically small values).
    pub log2_bound: [f64; 2],
    /// Verdict for `|C|^r exp(-p C(n,2)/R^2) <= exp(-b p C(n,2))`.
    pub dominated: Verdict,
    pub margin: f64,
}

/// Computes the union bound with `ln |C|^r` taken from
/// [`container_count_bound_pow_r`].
pub fn nonramsey_probability_bound(ps: &ParamSet) -> Result<NonRamseyBound, BoundsError> {
    let ln_cr = container_count_bound_pow_r(ps.k, ps.r, &ps.epsilon, &ps.tau, &ps.n)?;
    nonramsey_probability_bound_given_containers(ps, &ln_cr)
}

/// Same, but with the container term supplied (zero means `|C| = 1`).
pub fn nonramsey_probability_bound_given_containers(
    ps: &ParamSet,
    ln_containers_pow_r: &LogInterval,
) -> Result<NonRamseyBound, BoundsError> {
    let pe = ps.p.mul(&ps.n.binomial(2)?);
    let decay = pe.div(&ps.ramsey.powi(2)?)?; // p C(n,2) / R^2
    let required = ps.b.mul(&pe); // b p C(n,2)

    // bound <= exp(-required)  <=>  ln|C|^r + required <= decay
    let (dominated, margin) = ln_containers_pow_r.add(&required).certify_le(&decay);

    let log2_bound = match decay.sub_positive(ln_containers_pow_r) {
        Ok(diff) => {
            let e = diff.exp_neg();
            [e.lo(), e.hi()]
        }
        // exponent sign not certified: only the trivial enclosure remains
        Err(_) => [f64::NEG_INFINITY, f64::INFINITY],
    };
    Ok(NonRamseyBound {
        log2_bound,
        dominated,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enclose(v: &LogInterval, expected_log2: f64, tol: f64) {
        assert!(
            v.lo() - tol <= expected_log2 && expected_log2 <= v.hi() + tol,
            "expected log2 {} not in [{}, {}]",
            expected_log2,
            v.lo(),
            v.hi()
        );
    }

    #[test]
    fn skolem_values() {
        enclose(&ramsey_upper_skolem(3, 2), 6.0, 0.0);
        enclose(&ramsey_upper_skolem(3, 3), 9.0 * 3f64.log2(), 1e-12);
        enclose(&ramsey_upper_skolem(4, 2), 8.0, 0.0);
    }

    #[test]
    fn product_rule_values() {
        let base: BTreeMap<u64, u64> = [(2, 6)].into();
        let r4 = ramsey_lower_product(3, 4, &base).unwrap();
        enclose(&r4, 26f64.log2(), 1e-12);
        let r2 = ramsey_lower_product(3, 2, &base).unwrap();
        enclose(&r2, 6f64.log2(), 1e-12);
        assert!(matches!(
            ramsey_lower_product(3, 3, &base),
            Err(BoundsError::MissingBase(3))
        ));
        let base2: BTreeMap<u64, u64> = [(2, 6), (3, 17)].into();
        let r5 = ramsey_lower_product(3, 5, &base2).unwrap();
        // best split of 5 is 2+3: (6-1)(17-1)+1 = 81
        enclose(&r5, 81f64.log2(), 1e-12);
    }

    #[test]
    fn biguint_conversion_handles_big_values() {
        let x = BigUint::from(3u32).pow(500);
        let li = biguint_to_loginterval(&x);
        let expected = 500.0 * 3f64.log2();
        enclose(&li, expected, 1e-6);
        assert!(li.width_log2() < 1e-6);
    }

    #[test]
    fn derived_small_constants() {
        let ps = derive_params(3, 2, LogInterval::from_u64(6), None).unwrap();
        enclose(&ps.alpha, (1f64 / 20.0).log2(), 1e-9);
        enclose(&ps.epsilon, (1f64 / 80.0).log2(), 1e-9);
        enclose(&ps.b, (1f64 / 72.0).log2(), 1e-9);
    }

    #[test]
    fn threshold_order_magnitude() {
        let ps = derive_params(3, 2, LogInterval::from_u64(6), None).unwrap();
        // 400*81*log2(3) + 360*log2(6) = 52283.37...
        let mid = ps.n.approx_log2();
        assert!((mid - 52283.4).abs() <= 1.0, "log2 n = {mid}");
        assert!(ps.n.width_log2() < 1e-6);
        let c_mid = ps.c.approx_log2();
        assert!((c_mid - 1480.7).abs() <= 1.0, "log2 C = {c_mid}");
    }

    #[test]
    fn rejects_small_ramsey_value() {
        assert!(matches!(
            derive_params(3, 3, LogInterval::from_u64(6), None),
            Err(BoundsError::RamseyTooSmall { min: 7 })
        ));
        assert!(derive_params(3, 2, LogInterval::from_u64(5), None).is_ok());
        assert!(derive_params(2, 2, LogInterval::from_u64(6), None).is_err());
    }

    #[test]
    fn chain_all_true_at_threshold() {
        let ps = derive_params(3, 2, LogInterval::from_u64(6), None).unwrap();
        let report = check_chain(&ps);
        assert_eq!(report.items.len(), 8);
        for item in &report.items {
            assert_eq!(
                item.verdict,
                Verdict::CertifiedTrue,
                "item {} failed: margin {}",
                item.id,
                item.margin
            );
            assert!(item.margin > 0.0);
        }
    }

    #[test]
    fn chain_fails_for_tiny_order() {
        let ps = derive_params(
            3,
            2,
            LogInterval::from_u64(6),
            Some(LogInterval::pow2_int(100)),
        )
        .unwrap();
        let report = check_chain(&ps);
        let strong = report.item("strong").unwrap();
        assert_eq!(strong.verdict, Verdict::CertifiedFalse);
    }

    #[test]
    fn chain_grid_subset() {
        for k in [3u64, 4] {
            for r in [2u64, 3] {
                let ps = derive_params(k, r, ramsey_upper_skolem(k, r), None).unwrap();
                let report = check_chain(&ps);
                assert!(
                    report.all_certified_true(),
                    "k={k} r={r}: {:?}",
                    report
                        .items
                        .iter()
                        .filter(|i| i.verdict != Verdict::CertifiedTrue)
                        .collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn monotone_items_survive_doubling_n() {
        let base = derive_params(3, 2, LogInterval::from_u64(6), None).unwrap();
        let doubled = derive_params(
            3,
            2,
            LogInterval::from_u64(6),
            Some(base.n.mul(&LogInterval::from_u64(2))),
        )
        .unwrap();
        let report = check_chain(&doubled);
        for id in ["p12", "final", "strong"] {
            assert_eq!(
                report.item(id).unwrap().verdict,
                Verdict::CertifiedTrue,
                "{id}"
            );
        }
    }

    #[test]
    fn fkg_bound_values() {
        // k=3, n=10, C=0.5: p = 0.5/sqrt(10) <= 1/2; exp(-0.5^6 * 10)
        let b = fkg_lower_bound(
            &LogInterval::from_u64(10),
            3,
            &LogInterval::from_f64(0.5).unwrap(),
        )
        .unwrap();
        enclose(&b, (-(0.5f64.powi(6)) * 10.0).exp().log2(), 1e-9);

        // k=3, n=40, C = 0.1*sqrt(40): bound ~ 0.0773
        let c = LogInterval::from_f64(0.1 * 40f64.sqrt()).unwrap();
        let b = fkg_lower_bound(&LogInterval::from_u64(40), 3, &c).unwrap();
        let expected = (-(0.1 * 40f64.sqrt()).powi(6) * 40.0).exp();
        enclose(&b, expected.log2(), 1e-6);
        assert!((expected - 0.078).abs() < 1e-3);

        // C -> 0 drives the bound toward 1 from below
        let small = fkg_lower_bound(
            &LogInterval::from_u64(10),
            3,
            &LogInterval::from_f64(1e-10).unwrap(),
        )
        .unwrap();
        assert!(small.hi() <= 0.0);
        assert!(small.lo() >= -1e-50);
    }

    #[test]
    fn fkg_precondition_is_checked() {
        assert!(matches!(
            fkg_lower_bound(
                &LogInterval::from_u64(10),
                3,
                &LogInterval::from_u64(10)
            ),
            Err(BoundsError::EdgeProbabilityTooLarge)
        ));
    }

    #[test]
    fn container_bound_hand_value() {
        let eps = LogInterval::from_ratio(1, 80).unwrap();
        let tau = LogInterval::from_f64(1e-3).unwrap();
        let n = LogInterval::pow2_int(20);
        let v = container_count_bound(3, &eps, &tau, &n).unwrap();
        let binom: f64 = (1u64 << 20) as f64 * ((1u64 << 20) - 1) as f64 / 2.0;
        let expected = 6402373705728000f64.log2()
            + 80f64.log2().log2()
            + 1e-3f64.log2()
            + 1000f64.log2().log2()
            + binom.log2();
        enclose(&v, expected, 1e-6);
    }

    #[test]
    fn container_bound_vanishes_with_tau() {
        let eps = LogInterval::from_ratio(1, 80).unwrap();
        let n = LogInterval::pow2_int(20);
        let mut prev: Option<LogInterval> = None;
        for t in [1e-3, 1e-6, 1e-9, 1e-12] {
            let v =
                container_count_bound(3, &eps, &LogInterval::from_f64(t).unwrap(), &n).unwrap();
            if let Some(p) = prev {
                assert_eq!(v.certify_le(&p).0, Verdict::CertifiedTrue);
            }
            prev = Some(v);
        }
    }

    #[test]
    fn container_bound_domain_checks() {
        let n = LogInterval::pow2_int(20);
        let tau = LogInterval::from_f64(1e-3).unwrap();
        assert!(container_count_bound(3, &LogInterval::one(), &tau, &n).is_err());
        assert!(
            container_count_bound(3, &LogInterval::from_ratio(1, 80).unwrap(), &LogInterval::from_u64(2), &n)
                .is_err()
        );
    }

    #[test]
    fn generic_container_constant() {
        let eps = LogInterval::from_ratio(1, 80).unwrap();
        let tau = LogInterval::from_f64(1e-3).unwrap();
        let verts = LogInterval::pow2_int(20);
        let v = container_count_bound_generic(3, &eps, &tau, &verts).unwrap();
        // c = 800 * 6^3 * 3 = 518400
        let expected = 518400f64.log2()
            + 80f64.log2().log2()
            + 1e-3f64.log2()
            + 1000f64.log2().log2()
            + 20.0;
        enclose(&v, expected, 1e-6);
    }

    #[test]
    fn nonramsey_bound_dominated_at_threshold() {
        let ps = derive_params(3, 2, LogInterval::from_u64(6), None).unwrap();
        let nb = nonramsey_probability_bound(&ps).unwrap();
        assert_eq!(nb.dominated, Verdict::CertifiedTrue);
        assert!(nb.margin > 0.0);
        // the bound itself is astronomically small
        assert!(nb.log2_bound[1] <= -1e300);
    }

    #[test]
    fn nonramsey_bound_with_trivial_containers() {
        // |C| = 1: bound must be exactly exp(-p C(n,2) / R^2)
        let ps = derive_params(3, 2, LogInterval::from_u64(6), Some(LogInterval::pow2_int(8)))
            .unwrap();
        let nb =
            nonramsey_probability_bound_given_containers(&ps, &LogInterval::zero()).unwrap();
        let pe = ps.p.mul(&ps.n.binomial(2).unwrap());
        let decay = pe.div(&ps.ramsey.powi(2).unwrap()).unwrap();
        let direct = decay.exp_neg();
        assert!((nb.log2_bound[0] - direct.lo()).abs() < 1e-9);
        assert!((nb.log2_bound[1] - direct.hi()).abs() < 1e-9);
    }

    #[test]
    fn nonramsey_exponent_scales_with_ramsey_squared() {
        let ps = derive_params(3, 2, LogInterval::from_u64(6), Some(LogInterval::pow2_int(40)))
            .unwrap();
        let mut doubled = ps.clone();
        doubled.ramsey = ps.ramsey.mul(&LogInterval::from_u64(2));
        let exponent = |p: &ParamSet| {
            p.p.mul(&p.n.binomial(2).unwrap())
                .div(&p.ramsey.powi(2).unwrap())
                .unwrap()
        };
        let shift = exponent(&ps).approx_log2() - exponent(&doubled).approx_log2();
        assert!((shift - 2.0).abs() < 1e-9, "shift {shift}");
    }
}
