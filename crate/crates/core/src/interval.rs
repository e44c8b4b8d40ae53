//! Certified interval arithmetic for positive reals tracked in log2 scale.
//!
//! Quantities such as `k^(400*k^4)` overflow every fixed-width float, so a
//! positive real `x` is stored as an enclosure of `log2(x)`. Every operation
//! rounds the lower endpoint down and the upper endpoint up, so the exact
//! result always stays inside the returned interval. Comparison verdicts are
//! issued only when the enclosures are disjoint; otherwise the answer is
//! [`Verdict::Indeterminate`] rather than a guess.
//!
//! Endpoints are `f64`. Hardware `+ - * / sqrt` are correctly rounded, so one
//! ulp of outward slop per operation suffices. For `log2`/`ln`/`exp2`/`exp`
//! we assume the platform libm stays within a few ulps of the exact result
//! and widen by [`LIBM_SLOP`] ulps, which is far more than any mainstream
//! libm needs. `f64::next_down`/`next_up` saturate overflow toward the finite
//! side, which is exactly the sound direction for directed rounding.

// Negated comparisons like `!(x > 0.0)` are deliberate: they treat NaN as
// a failed precondition, which is the sound direction for a checker.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Ulps of outward slop for correctly rounded hardware ops.
const ARITH_SLOP: u32 = 1;
/// Ulps of outward slop for libm transcendentals.
const LIBM_SLOP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("logarithm of a value that may be zero or negative")]
    LogDomain,
    #[error("square root of a possibly negative interval")]
    SqrtDomain,
    #[error("division by a value that may be zero")]
    DivByZero,
    #[error("subtraction cannot certify a positive result")]
    NonPositiveDifference,
    #[error("binomial lower index {k} exceeds certified range of the upper argument")]
    BinomialDomain { k: u64 },
    #[error("value must be positive, got {0}")]
    NonPositive(f64),
    #[error("malformed endpoints: lo {lo} > hi {hi}")]
    Malformed { lo: f64, hi: f64 },
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedTrue,
    CertifiedFalse,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::CertifiedTrue
    }

    /// Conjunction: false dominates, then indeterminate.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (CertifiedFalse, _) | (_, CertifiedFalse) => CertifiedFalse,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => CertifiedTrue,
        }
    }
}

fn step_down(x: f64, ulps: u32) -> f64 {
    debug_assert!(!x.is_nan());
    let mut y = x;
    for _ in 0..ulps {
        y = y.next_down();
    }
    y
}

fn step_up(x: f64, ulps: u32) -> f64 {
    debug_assert!(!x.is_nan());
    let mut y = x;
    for _ in 0..ulps {
        y = y.next_up();
    }
    y
}

/// TwoSum residual: zero iff the rounded sum is exact.
#[inline]
fn sum_is_exact(a: f64, b: f64, s: f64) -> bool {
    if !s.is_finite() {
        return false;
    }
    let bb = s - a;
    (a - (s - bb)) + (b - bb) == 0.0
}

/// FMA residual: zero iff the rounded product is exact.
#[inline]
fn mul_is_exact(a: f64, b: f64, p: f64) -> bool {
    p.is_finite() && a.mul_add(b, -p) == 0.0
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    assert!(!s.is_nan(), "interval endpoints produced NaN in addition");
    if s.is_infinite() && a.is_finite() && b.is_finite() {
        // overflow: saturate toward the finite side
        return if s > 0.0 { f64::MAX } else { f64::NEG_INFINITY };
    }
    if sum_is_exact(a, b, s) {
        return s;
    }
    step_down(s, ARITH_SLOP)
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    assert!(!s.is_nan(), "interval endpoints produced NaN in addition");
    if s.is_infinite() && a.is_finite() && b.is_finite() {
        return if s > 0.0 { f64::INFINITY } else { -f64::MAX };
    }
    if sum_is_exact(a, b, s) {
        return s;
    }
    step_up(s, ARITH_SLOP)
}

fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    assert!(!p.is_nan(), "interval endpoints produced NaN in multiplication");
    if p.is_infinite() && a.is_finite() && b.is_finite() {
        return if p > 0.0 { f64::MAX } else { f64::NEG_INFINITY };
    }
    if mul_is_exact(a, b, p) {
        return p;
    }
    step_down(p, ARITH_SLOP)
}

fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    assert!(!p.is_nan(), "interval endpoints produced NaN in multiplication");
    if p.is_infinite() && a.is_finite() && b.is_finite() {
        return if p > 0.0 { f64::INFINITY } else { -f64::MAX };
    }
    if mul_is_exact(a, b, p) {
        return p;
    }
    step_up(p, ARITH_SLOP)
}

fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    let q = a / b;
    if q.is_finite() && q.mul_add(b, -a) == 0.0 {
        return q;
    }
    step_down(q, ARITH_SLOP)
}

fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    let q = a / b;
    if q.is_finite() && q.mul_add(b, -a) == 0.0 {
        return q;
    }
    step_up(q, ARITH_SLOP)
}

fn log2_down(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    step_down(x.log2(), LIBM_SLOP)
}

fn log2_up(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x.is_infinite() {
        return f64::INFINITY;
    }
    step_up(x.log2(), LIBM_SLOP)
}

fn exp2_down(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    step_down(x.exp2(), LIBM_SLOP).max(0.0)
}

fn exp2_up(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    step_up(x.exp2(), LIBM_SLOP)
}

/// A plain certified enclosure of a real number (any sign).
///
/// Used for exponent-level quantities such as `log2 n` and for expressions
/// like `5 * sqrt(log n * log k)` that later become exponents of two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::Malformed { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`; `x` is taken as exact.
    pub fn point(x: f64) -> Self {
        debug_assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    /// Encloses the integer `x` exactly when it fits in the 53-bit mantissa,
    /// and by one ulp on each side otherwise.
    pub fn from_u64(x: u64) -> Self {
        let f = x as f64;
        if f as u64 == x && x < (1u64 << 53) {
            Interval::point(f)
        } else {
            Interval {
                lo: f.next_down(),
                hi: f.next_up(),
            }
        }
    }

    pub fn from_u128(x: u128) -> Self {
        let f = x as f64;
        if x < (1u128 << 53) {
            Interval::point(f)
        } else {
            Interval {
                lo: f.next_down(),
                hi: f.next_up(),
            }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, o.lo),
            hi: add_up(self.hi, o.hi),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let cands = [
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in cands {
            lo = lo.min(mul_down(a, b));
            hi = hi.max(mul_up(a, b));
        }
        Interval { lo, hi }
    }

    /// Multiplies by the exact rational `num/den`.
    pub fn mul_ratio(&self, num: i64, den: u64) -> Interval {
        debug_assert!(den > 0);
        let n = Interval::point(num as f64); // i64 with |num| < 2^53 in all call sites
        let prod = self.mul(&n);
        Interval {
            lo: div_down(prod.lo.min(prod.hi), den as f64),
            hi: div_up(prod.hi.max(prod.lo), den as f64),
        }
    }

    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::SqrtDomain);
        }
        // hardware sqrt is correctly rounded
        Ok(Interval {
            lo: step_down(self.lo.sqrt(), ARITH_SLOP).max(0.0),
            hi: step_up(self.hi.sqrt(), ARITH_SLOP),
        })
    }

    pub fn log2(&self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::LogDomain);
        }
        Ok(Interval {
            lo: log2_down(self.lo),
            hi: log2_up(self.hi),
        })
    }
}

/// A certified enclosure of a nonnegative extended real in log2 scale.
///
/// `x` with `2^lo <= x <= 2^hi`; `[-inf, -inf]` encodes exact zero and
/// `[+inf, +inf]` encodes positive infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogInterval {
    log2: Interval,
}

impl LogInterval {
    pub const fn zero() -> Self {
        LogInterval {
            log2: Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::NEG_INFINITY,
            },
        }
    }

    pub const fn infinity() -> Self {
        LogInterval {
            log2: Interval {
                lo: f64::INFINITY,
                hi: f64::INFINITY,
            },
        }
    }

    pub fn one() -> Self {
        LogInterval::pow2_int(0)
    }

    /// Exactly `2^e` for an integer exponent.
    pub fn pow2_int(e: i64) -> Self {
        LogInterval {
            log2: Interval::point(e as f64),
        }
    }

    /// A positive real known to have `log2` inside `e`.
    pub fn from_log2(e: Interval) -> Self {
        LogInterval { log2: e }
    }

    pub fn from_u64(x: u64) -> Self {
        if x == 0 {
            return LogInterval::zero();
        }
        if x.is_power_of_two() {
            return LogInterval::pow2_int(x.trailing_zeros() as i64);
        }
        let v = Interval::from_u64(x);
        LogInterval {
            log2: v.log2().expect("positive by construction"),
        }
    }

    pub fn from_u128(x: u128) -> Self {
        if x == 0 {
            return LogInterval::zero();
        }
        let v = Interval::from_u128(x);
        LogInterval {
            log2: v.log2().expect("positive by construction"),
        }
    }

    pub fn from_f64(x: f64) -> Result<Self, IntervalError> {
        if x == 0.0 {
            return Ok(LogInterval::zero());
        }
        if !(x > 0.0) || x.is_nan() {
            return Err(IntervalError::NonPositive(x));
        }
        if x.is_infinite() {
            return Ok(LogInterval::infinity());
        }
        Ok(LogInterval {
            log2: Interval {
                lo: log2_down(x),
                hi: log2_up(x),
            },
        })
    }

    /// Exact rational `num/den`, both positive.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self, IntervalError> {
        if den == 0 {
            return Err(IntervalError::DivByZero);
        }
        if num == 0 {
            return Ok(LogInterval::zero());
        }
        LogInterval::from_u64(num).div(&LogInterval::from_u64(den))
    }

    pub fn is_zero(&self) -> bool {
        self.log2.hi == f64::NEG_INFINITY
    }

    pub fn is_infinite(&self) -> bool {
        self.log2.lo == f64::INFINITY
    }

    /// Lower endpoint of `log2 x`.
    pub fn lo(&self) -> f64 {
        self.log2.lo
    }

    /// Upper endpoint of `log2 x`.
    pub fn hi(&self) -> f64 {
        self.log2.hi
    }

    pub fn log2_interval(&self) -> Interval {
        self.log2
    }

    /// Midpoint of the log2 enclosure, for reporting only.
    pub fn approx_log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        if self.is_infinite() {
            return f64::INFINITY;
        }
        if self.log2.lo == f64::NEG_INFINITY {
            return self.log2.hi;
        }
        0.5 * (self.log2.lo + self.log2.hi)
    }

    pub fn width_log2(&self) -> f64 {
        self.log2.width()
    }

    pub fn mul(&self, o: &LogInterval) -> LogInterval {
        if self.is_zero() || o.is_zero() {
            assert!(
                !self.is_infinite() && !o.is_infinite(),
                "zero times infinity is undefined"
            );
            return LogInterval::zero();
        }
        LogInterval {
            log2: self.log2.add(&o.log2),
        }
    }

    pub fn div(&self, o: &LogInterval) -> Result<LogInterval, IntervalError> {
        if o.is_zero() {
            return Err(IntervalError::DivByZero);
        }
        if self.is_zero() {
            return Ok(LogInterval::zero());
        }
        Ok(LogInterval {
            log2: self.log2.sub(&o.log2),
        })
    }

    pub fn recip(&self) -> Result<LogInterval, IntervalError> {
        LogInterval::one().div(self)
    }

    /// Sum of positive reals via the stable log-sum form.
    pub fn add(&self, o: &LogInterval) -> LogInterval {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        if self.is_infinite() || o.is_infinite() {
            return LogInterval::infinity();
        }
        LogInterval {
            log2: Interval {
                lo: logsum_down(self.log2.lo, o.log2.lo),
                hi: logsum_up(self.log2.hi, o.log2.hi),
            },
        }
    }

    /// `self - o`, defined only when the difference is certified positive.
    pub fn sub_positive(&self, o: &LogInterval) -> Result<LogInterval, IntervalError> {
        if o.is_zero() {
            return Ok(*self);
        }
        if !(o.hi() < self.lo()) {
            return Err(IntervalError::NonPositiveDifference);
        }
        Ok(LogInterval {
            log2: Interval {
                lo: logdiff_down(self.log2.lo, o.log2.hi),
                hi: logdiff_up(self.log2.hi, o.log2.lo),
            },
        })
    }

    pub fn powi(&self, e: i64) -> Result<LogInterval, IntervalError> {
        self.pow_ratio(e, 1)
    }

    /// Raises to the exact rational power `num/den`.
    pub fn pow_ratio(&self, num: i64, den: u64) -> Result<LogInterval, IntervalError> {
        debug_assert!(den > 0);
        if self.is_zero() {
            return match num.signum() {
                1 => Ok(LogInterval::zero()),
                0 => Ok(LogInterval::one()),
                _ => Err(IntervalError::DivByZero),
            };
        }
        if num == 0 {
            return Ok(LogInterval::one());
        }
        Ok(LogInterval {
            log2: self.log2.mul_ratio(num, den),
        })
    }

    pub fn sqrt(&self) -> LogInterval {
        if self.is_zero() {
            return LogInterval::zero();
        }
        LogInterval {
            log2: self.log2.mul_ratio(1, 2),
        }
    }

    /// `n!` as a certified product of logs. Exact zero and one map to 1.
    pub fn factorial(n: u64) -> LogInterval {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for i in 2..=n {
            let l = Interval::from_u64(i).log2().expect("i >= 2");
            lo = add_down(lo, l.lo);
            hi = add_up(hi, l.hi);
        }
        LogInterval {
            log2: Interval { lo, hi },
        }
    }

    /// Binomial coefficient `C(x, k)` via the falling factorial; requires the
    /// upper argument certified greater than `k - 1`.
    pub fn binomial(&self, k: u64) -> Result<LogInterval, IntervalError> {
        if k == 0 {
            return Ok(LogInterval::one());
        }
        let mut prod = *self;
        for i in 1..k {
            let next = prod.mul(
                &self
                    .sub_positive(&LogInterval::from_u64(i))
                    .map_err(|_| IntervalError::BinomialDomain { k })?,
            );
            prod = next;
        }
        prod.div(&LogInterval::factorial(k))
    }

    /// `log2(x)` as a positive real; requires `x` certified greater than one.
    pub fn log2_positive(&self) -> Result<LogInterval, IntervalError> {
        if !(self.log2.lo > 0.0) {
            return Err(IntervalError::LogDomain);
        }
        Ok(LogInterval {
            log2: self.log2.log2()?,
        })
    }

    /// `2^x` for the represented value `x`; saturates for astronomically
    /// large `x` (the upper endpoint becomes unbounded).
    pub fn exp2(&self) -> LogInterval {
        if self.is_zero() {
            return LogInterval::one();
        }
        if self.is_infinite() {
            return LogInterval::infinity();
        }
        LogInterval {
            log2: Interval {
                lo: exp2_down(self.log2.lo),
                hi: exp2_up(self.log2.hi),
            },
        }
    }

    /// `2^-x`, the binary analogue of [`LogInterval::exp_neg`].
    pub fn exp2_neg(&self) -> LogInterval {
        if self.is_zero() {
            return LogInterval::one();
        }
        if self.is_infinite() {
            return LogInterval::zero();
        }
        let xlin_lo = exp2_down(self.log2.lo);
        let xlin_hi = exp2_up(self.log2.hi);
        let lo = if xlin_hi.is_infinite() {
            f64::NEG_INFINITY
        } else {
            -xlin_hi
        };
        LogInterval {
            log2: Interval { lo, hi: -xlin_lo },
        }
    }

    /// `exp(-x)`: the natural exponential of the negated value.
    ///
    /// For astronomically large `x` the result saturates to an interval of
    /// the form `[0, 2^-1.79e308]`, which is still a sound enclosure.
    pub fn exp_neg(&self) -> LogInterval {
        if self.is_zero() {
            return LogInterval::one();
        }
        if self.is_infinite() {
            return LogInterval::zero();
        }
        // linear-scale bounds of x, saturating at f64::MAX
        let xlin_lo = exp2_down(self.log2.lo);
        let xlin_hi = exp2_up(self.log2.hi);
        let log2e_lo = step_down(std::f64::consts::LOG2_E, 1);
        let log2e_hi = step_up(std::f64::consts::LOG2_E, 1);
        let lo = if xlin_hi.is_infinite() {
            f64::NEG_INFINITY
        } else {
            -mul_up(xlin_hi, log2e_hi)
        };
        let hi = -mul_down(xlin_lo, log2e_lo);
        LogInterval {
            log2: Interval { lo, hi },
        }
    }

    /// Certifies `self <= o` when the enclosures are disjoint.
    ///
    /// The returned margin is in log2 units: positive for a certified
    /// verdict, and the (negative) overlap width when indeterminate.
    pub fn certify_le(&self, o: &LogInterval) -> (Verdict, f64) {
        if self.hi() <= o.lo() {
            (Verdict::CertifiedTrue, o.lo() - self.hi())
        } else if self.lo() > o.hi() {
            (Verdict::CertifiedFalse, self.lo() - o.hi())
        } else {
            (Verdict::Indeterminate, o.lo() - self.hi())
        }
    }

    /// Widens the enclosure by `pad` log2 units on both sides (testing aid).
    pub fn widened(&self, pad: f64) -> LogInterval {
        if self.is_zero() || self.is_infinite() {
            return *self;
        }
        LogInterval {
            log2: Interval {
                lo: self.log2.lo - pad,
                hi: self.log2.hi + pad,
            },
        }
    }
}

/// Lower bound for `log2(2^a + 2^b)`.
fn logsum_down(a: f64, b: f64) -> f64 {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if small == f64::NEG_INFINITY {
        return big;
    }
    if big == f64::INFINITY {
        return f64::INFINITY;
    }
    let d = step_down(small - big, ARITH_SLOP); // d <= 0
    let t = exp2_down(d);
    add_down(big, log2_down(1.0 + t.min(1.0)).max(0.0))
}

/// Upper bound for `log2(2^a + 2^b)`.
fn logsum_up(a: f64, b: f64) -> f64 {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if small == f64::NEG_INFINITY {
        return big;
    }
    if big == f64::INFINITY {
        return f64::INFINITY;
    }
    let d = step_up(small - big, ARITH_SLOP).min(0.0);
    let t = exp2_up(d).min(1.0);
    add_up(big, log2_up(1.0 + t))
}

/// Lower bound for `log2(2^a - 2^b)`, caller guarantees `b < a`.
fn logdiff_down(a: f64, b: f64) -> f64 {
    debug_assert!(b < a);
    if b == f64::NEG_INFINITY {
        return a;
    }
    let d = step_up(b - a, ARITH_SLOP); // d < 0, rounded toward zero = larger subtrahend
    let t = exp2_up(d);
    if t >= 1.0 {
        return f64::NEG_INFINITY; // cannot certify anything better than "positive"
    }
    add_down(a, log2_down(1.0 - t))
}

/// Upper bound for `log2(2^a - 2^b)`, caller guarantees `b < a`.
fn logdiff_up(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    let d = step_down(b - a, ARITH_SLOP);
    let t = exp2_down(d).min(1.0 - f64::EPSILON);
    add_up(a, log2_up(1.0 - t).min(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_encloses(li: &LogInterval, log2_expected: f64, tol: f64) {
        assert!(
            li.lo() - tol <= log2_expected && log2_expected <= li.hi() + tol,
            "expected log2 {} outside [{}, {}]",
            log2_expected,
            li.lo(),
            li.hi()
        );
    }

    #[test]
    fn mul_of_exact_powers_is_exact() {
        let a = LogInterval::pow2_int(10);
        let b = LogInterval::pow2_int(20);
        let p = a.mul(&b);
        assert_eq!(p.lo(), 30.0);
        assert_eq!(p.hi(), 30.0);
    }

    #[test]
    fn binomial_small_case_is_tight() {
        let six = LogInterval::from_u64(6);
        let b = six.binomial(3).unwrap();
        assert_encloses(&b, 20f64.log2(), 0.0);
        assert!(b.width_log2() <= 1e-9, "width {}", b.width_log2());
    }

    #[test]
    fn pow_of_three_matches_expected_magnitude() {
        // 3^32400 in log2 scale
        let three = LogInterval::from_u64(3);
        let p = three.powi(400 * 81).unwrap();
        assert!(p.lo() >= 51352.0 && p.hi() <= 51354.0, "{:?}", p);
    }

    #[test]
    fn addition_of_disparate_magnitudes() {
        let big = LogInterval::pow2_int(100);
        let small = LogInterval::pow2_int(-100);
        let s = big.add(&small);
        assert!(s.lo() >= 100.0);
        assert!(s.hi() <= 100.0 + 1e-12);

        let a = LogInterval::from_u64(3);
        let b = LogInterval::from_u64(5);
        assert_encloses(&a.add(&b), 3f64.log2(), f64::INFINITY); // sanity: no panic
        assert_encloses(&a.add(&b), 8f64.log2(), 1e-12);
    }

    #[test]
    fn zero_and_infinity_special_cases() {
        let z = LogInterval::zero();
        let x = LogInterval::from_u64(7);
        assert!(z.is_zero());
        assert_eq!(z.mul(&x).is_zero(), true);
        assert_encloses(&z.add(&x), 7f64.log2(), 1e-12);
        assert!(x.div(&z).is_err());
        assert!(LogInterval::infinity().is_infinite());
        assert!(z.exp_neg().lo() == 0.0 && z.exp_neg().hi() == 0.0);
    }

    #[test]
    fn exp2_and_its_negation() {
        // 2^8 = 256 for the point value 8
        let x = LogInterval::from_u64(8);
        let e = x.exp2();
        assert_encloses(&e, 8.0, 1e-9);
        let n = x.exp2_neg();
        assert_encloses(&n, -8.0, 1e-9);
        // saturation: 2^(2^70000) is unbounded above but still certified huge
        let big = LogInterval::pow2_int(70000).exp2();
        assert!(big.lo() >= f64::MAX / 2.0);
        assert_eq!(big.hi(), f64::INFINITY);
        assert!(!big.is_infinite());
    }

    #[test]
    fn exp_neg_small_value() {
        // exp(-0.15625) = 0.85534...
        let y = LogInterval::from_f64(0.15625).unwrap();
        let e = y.exp_neg();
        assert_encloses(&e, 0.8553453273074425f64.log2(), 1e-9);
    }

    #[test]
    fn exp_neg_saturates_for_huge_exponent() {
        let y = LogInterval::pow2_int(70000);
        let e = y.exp_neg();
        assert_eq!(e.lo(), f64::NEG_INFINITY);
        assert!(e.hi() <= -f64::MAX / 2.0, "hi {}", e.hi());
        assert!(!e.is_zero());
    }

    #[test]
    fn factorial_matches_exact_values() {
        assert_encloses(&LogInterval::factorial(0), 0.0, 0.0);
        assert_encloses(&LogInterval::factorial(5), 120f64.log2(), 1e-12);
        assert_encloses(&LogInterval::factorial(9), 362880f64.log2(), 1e-12);
        // 18! = 6402373705728000
        assert_encloses(&LogInterval::factorial(18), 6402373705728000f64.log2(), 1e-11);
    }

    #[test]
    fn sub_positive_requires_certified_gap() {
        let a = LogInterval::from_u64(10);
        let b = LogInterval::from_u64(3);
        let d = a.sub_positive(&b).unwrap();
        assert_encloses(&d, 7f64.log2(), 1e-11);
        assert!(b.sub_positive(&a).is_err());
        let overlapping = LogInterval::from_log2(Interval::new(3.0, 3.5).unwrap());
        assert!(overlapping.sub_positive(&overlapping).is_err());
    }

    #[test]
    fn certify_le_verdicts() {
        let a = LogInterval::from_u64(8);
        let b = LogInterval::from_u64(9);
        let (v, m) = a.certify_le(&b);
        assert_eq!(v, Verdict::CertifiedTrue);
        assert!(m > 0.0);
        let (v, _) = b.certify_le(&a);
        assert_eq!(v, Verdict::CertifiedFalse);
        let wide = LogInterval::from_log2(Interval::new(2.9, 3.4).unwrap());
        let (v, _) = wide.certify_le(&LogInterval::from_u64(8));
        assert_eq!(v, Verdict::Indeterminate);
    }

    #[test]
    fn log2_positive_of_reciprocal() {
        // tau = 2^-100, log2(1/tau) = 100
        let tau = LogInterval::pow2_int(-100);
        let inv = tau.recip().unwrap();
        let l = inv.log2_positive().unwrap();
        assert_encloses(&l, 100f64.log2(), 1e-12);
    }

    proptest! {
        #[test]
        fn product_contains_exact_value(a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let x = LogInterval::from_u64(a);
            let y = LogInterval::from_u64(b);
            let p = x.mul(&y);
            let exact = (a as f64).log2() + (b as f64).log2();
            prop_assert!(p.lo() <= exact + 1e-9 && exact - 1e-9 <= p.hi());
        }

        #[test]
        fn sum_contains_exact_value(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000) {
            let s = LogInterval::from_u64(a).add(&LogInterval::from_u64(b));
            let exact = ((a as u128 + b as u128) as f64).log2();
            prop_assert!(s.lo() <= exact && exact <= s.hi());
        }

        #[test]
        fn widening_never_flips_a_certified_verdict(
            a in 1u64..1_000_000, b in 1u64..1_000_000, pad in 0.0f64..2.0
        ) {
            let x = LogInterval::from_u64(a);
            let y = LogInterval::from_u64(b);
            let (v, _) = x.certify_le(&y);
            let (vw, _) = x.widened(pad).certify_le(&y.widened(pad));
            match v {
                Verdict::CertifiedTrue => prop_assert!(vw != Verdict::CertifiedFalse),
                Verdict::CertifiedFalse => prop_assert!(vw != Verdict::CertifiedTrue),
                Verdict::Indeterminate => {}
            }
            // and the reverse: a verdict from widened inputs must hold for the originals
            match vw {
                Verdict::CertifiedTrue => prop_assert!(v != Verdict::CertifiedFalse),
                Verdict::CertifiedFalse => prop_assert!(v != Verdict::CertifiedTrue),
                Verdict::Indeterminate => {}
            }
        }

        #[test]
        fn binomial_contains_exact_small_values(n in 3u64..30, k in 1u64..6) {
            prop_assume!(k <= n);
            let exact: u128 = {
                let mut num: u128 = 1;
                for i in 0..k { num *= (n - i) as u128; }
                let mut den: u128 = 1;
                for i in 1..=k { den *= i as u128; }
                num / den
            };
            let b = LogInterval::from_u64(n).binomial(k).unwrap();
            let e = (exact as f64).log2();
            prop_assert!(b.lo() <= e + 1e-9 && e - 1e-9 <= b.hi());
        }
    }
}
