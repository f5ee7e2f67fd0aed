//! Closed real intervals with outward-rounded arithmetic.
//!
//! Every primitive computes the floating-point result and then steps the
//! bound one ulp outward whenever the operation was inexact. Exactness is
//! detected with error-free transforms (two-sum for addition, fused
//! multiply-add residuals for products, quotients and square roots), so
//! exactly representable results such as `[1,2] + [3,4]` stay tight.
//!
//! The result is an enclosure, not always the tightest enclosure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A closed connected subset of the extended reals, or the empty set.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// The canonical empty interval `(+inf, -inf)`.
    pub const EMPTY: Interval = Interval { lo: f64::INFINITY, hi: f64::NEG_INFINITY };
    /// The whole real line.
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const POSITIVE: Interval = Interval { lo: 0.0, hi: f64::INFINITY };

    /// Builds `[lo, hi]`.
    ///
    /// Panics if either bound is NaN or `lo > hi`; use [`Interval::checked`]
    /// for untrusted bounds.
    pub fn new(lo: f64, hi: f64) -> Interval {
        Self::checked(lo, hi).unwrap_or_else(|| panic!("invalid interval bounds [{lo}, {hi}]"))
    }

    pub fn checked(lo: f64, hi: f64) -> Option<Interval> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    /// Interval from possibly unordered bounds; NaN yields EMPTY.
    fn from_bounds(lo: f64, hi: f64) -> Interval {
        Self::checked(lo, hi).unwrap_or(Interval::EMPTY)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.lo.is_finite() && self.hi.is_finite()
    }

    /// `hi - lo` rounded up; zero for EMPTY.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            round_up_sub(self.hi, self.lo)
        }
    }

    /// Midpoint, clamped inside the interval. NaN for EMPTY or unbounded.
    pub fn mid(&self) -> f64 {
        if !self.is_bounded() {
            return f64::NAN;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`. EMPTY is a subset of everything.
    pub fn is_subset(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// True when `self` lies in the topological interior of `other`.
    pub fn is_interior(&self, other: &Interval) -> bool {
        self.is_empty()
            || ((other.lo < self.lo || other.lo == f64::NEG_INFINITY)
                && (self.hi < other.hi || other.hi == f64::INFINITY))
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Self::from_bounds(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Smallest interval containing both arguments.
    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    /// Widens both bounds by `r` (rounded outward).
    pub fn inflate(&self, r: f64) -> Interval {
        if self.is_empty() {
            return *self;
        }
        Interval { lo: (self.lo - r).next_down(), hi: (self.hi + r).next_up() }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        Self::from_bounds(add_down(self.lo, other.lo), add_up(self.hi, other.hi))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = mul_down(a, c).min(mul_down(a, d)).min(mul_down(b, c)).min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        Self::from_bounds(lo, hi)
    }

    /// Scales `x` by the factor interval `self` (same as [`Interval::mul`]).
    pub fn scale(&self, x: &Interval) -> Interval {
        self.mul(x)
    }

    pub fn mul_scalar(&self, k: f64) -> Interval {
        self.mul(&Interval::point(k))
    }

    pub fn sqr(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b) = (self.lo, self.hi);
        if a >= 0.0 {
            Interval::new(mul_down(a, a), mul_up(b, b))
        } else if b <= 0.0 {
            Interval::new(mul_down(b, b), mul_up(a, a))
        } else {
            Interval::new(0.0, mul_up(a, a).max(mul_up(b, b)))
        }
    }

    /// Square root of `self ∩ [0, +inf]`.
    pub fn sqrt(&self) -> Interval {
        let x = self.intersect(&Interval::POSITIVE);
        if x.is_empty() {
            return Interval::EMPTY;
        }
        Interval::new(sqrt_down(x.lo), sqrt_up(x.hi))
    }

    /// Division; when the divisor contains zero the hull of the
    /// (possibly two-piece) quotient is returned.
    pub fn div(&self, other: &Interval) -> Interval {
        self.div_within(other, &Interval::ENTIRE)
    }

    /// `(self / other) ∩ within`, keeping each branch of an extended
    /// division separate before taking the hull.
    pub fn div_within(&self, other: &Interval, within: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() || within.is_empty() {
            return Interval::EMPTY;
        }
        let (c, d) = (other.lo, other.hi);
        if c > 0.0 || d < 0.0 {
            return self.div_nonzero(other).intersect(within);
        }
        if self.contains(0.0) {
            return *within;
        }
        // other contains 0 and self does not: two one-sided branches.
        let mut out = Interval::EMPTY;
        if c < 0.0 {
            out = out.hull(&self.div_nonpositive(c).intersect(within));
        }
        if d > 0.0 {
            out = out.hull(&self.div_nonnegative(d).intersect(within));
        }
        out
    }

    fn div_nonzero(&self, other: &Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = div_down(a, c).min(div_down(a, d)).min(div_down(b, c)).min(div_down(b, d));
        let hi = div_up(a, c).max(div_up(a, d)).max(div_up(b, c)).max(div_up(b, d));
        Self::from_bounds(lo, hi)
    }

    // self / [c, 0] with c < 0 and 0 ∉ self.
    fn div_nonpositive(&self, c: f64) -> Interval {
        if self.lo > 0.0 {
            Interval::from_bounds(f64::NEG_INFINITY, div_up(self.lo, c))
        } else {
            Interval::from_bounds(div_down(self.hi, c), f64::INFINITY)
        }
    }

    // self / [0, d] with d > 0 and 0 ∉ self.
    fn div_nonnegative(&self, d: f64) -> Interval {
        if self.lo > 0.0 {
            Interval::from_bounds(div_down(self.lo, d), f64::INFINITY)
        } else {
            Interval::from_bounds(f64::NEG_INFINITY, div_up(self.hi, d))
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::EMPTY
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        write!(f, "[{},{}]", fmt_bound(self.lo), fmt_bound(self.hi))
    }
}

fn fmt_bound(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

fn parse_bound(s: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => {
            // Rust's float parser also accepts "nan"/"infinity"; keep the
            // literal strictly decimal.
            if s.is_empty()
                || !s.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
            {
                return Err(Error::Parse(format!("invalid interval bound {s:?}")));
            }
            s.parse::<f64>().map_err(|_| Error::Parse(format!("invalid interval bound {s:?}")))
        }
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `[lo,hi]`, `empty`, or a bare number (degenerate interval).
    fn from_str(s: &str) -> Result<Interval> {
        let s = s.trim();
        if s == "empty" {
            return Ok(Interval::EMPTY);
        }
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (lo, hi) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("interval literal {s:?} lacks a comma")))?;
            let (lo, hi) = (parse_bound(lo)?, parse_bound(hi)?);
            return Interval::checked(lo, hi)
                .ok_or_else(|| Error::Parse(format!("interval literal {s:?} has lo > hi")));
        }
        let x = parse_bound(s)?;
        if x.is_infinite() {
            return Err(Error::Parse(format!("degenerate interval at {s:?}")));
        }
        Ok(Interval::point(x))
    }
}

// ---------------------------------------------------------------------------
// Directed rounding helpers.

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        // Overflow from finite operands must not produce +inf as a lower bound.
        return if s == f64::INFINITY && a.is_finite() && b.is_finite() { f64::MAX } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    -add_down(-a, -b)
}

pub(crate) fn round_up_sub(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

// Interval-endpoint product: 0 * inf = 0.
fn endpoint_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = endpoint_mul(a, b);
    if !p.is_finite() {
        return if p == f64::INFINITY && a.is_finite() && b.is_finite() { f64::MAX } else { p };
    }
    if p == 0.0 && a != 0.0 && b != 0.0 {
        // Underflow: the exact product is tiny and of sign(a*b).
        return if (a < 0.0) != (b < 0.0) { -f64::MIN_POSITIVE } else { 0.0 };
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    -mul_down(-a, b)
}

pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        // inf / inf: the quotient of endpoints is unbounded below.
        return f64::NEG_INFINITY;
    }
    if !q.is_finite() {
        return if q == f64::INFINITY && a.is_finite() { f64::MAX } else { q };
    }
    if !b.is_finite() {
        // finite / inf = 0 exactly in the limit sense.
        return if (a < 0.0) != (b < 0.0) { -f64::MIN_POSITIVE } else { 0.0 };
    }
    if q == 0.0 {
        return if (a < 0.0) != (b < 0.0) { -f64::MIN_POSITIVE } else { 0.0 };
    }
    // Residual r = a - q*b; sign(r/b) gives the direction of the error.
    let r = (-q).mul_add(b, a);
    if !r.is_finite() {
        return q.next_down();
    }
    if (r < 0.0) != (b < 0.0) && r != 0.0 {
        q.next_down()
    } else {
        q
    }
}

pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    -div_down(-a, b)
}

fn sqrt_down(x: f64) -> f64 {
    let r = x.sqrt();
    if r == 0.0 || !r.is_finite() {
        return r;
    }
    if (-r).mul_add(r, x) < 0.0 {
        r.next_down()
    } else {
        r
    }
}

fn sqrt_up(x: f64) -> f64 {
    let r = x.sqrt();
    if r == 0.0 || !r.is_finite() {
        return r;
    }
    if (-r).mul_add(r, x) > 0.0 {
        r.next_up()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn intersect_and_hull() {
        assert_eq!(iv(1.0, 3.0).intersect(&iv(2.0, 5.0)), iv(2.0, 3.0));
        assert!(iv(0.0, 1.0).intersect(&iv(2.0, 3.0)).is_empty());
        assert_eq!(iv(1.0, 2.0).hull(&iv(4.0, 5.0)), iv(1.0, 5.0));
        assert_eq!(Interval::EMPTY.hull(&iv(0.0, 1.0)), iv(0.0, 1.0));
    }

    #[test]
    fn exact_results_stay_tight() {
        assert_eq!(iv(1.0, 2.0).add(&iv(3.0, 4.0)), iv(4.0, 6.0));
        assert_eq!(iv(-2.0, 1.0).sqr(), iv(0.0, 4.0));
        assert_eq!(iv(0.0, 2.0).scale(&iv(-1.0, 3.0)), iv(-2.0, 6.0));
        assert_eq!(iv(4.0, 9.0).sqrt(), iv(2.0, 3.0));
    }

    #[test]
    fn inexact_results_widen() {
        let x = iv(0.1, 0.1).add(&iv(0.2, 0.2));
        assert!(x.lo() < x.hi());
        assert!(x.contains(0.30000000000000004));
        let t = iv(1.0, 1.0).div(&iv(3.0, 3.0));
        assert!(t.lo() < 1.0 / 3.0 || t.hi() > 1.0 / 3.0);
        assert!(t.width() <= 2.0 * f64::EPSILON);
        let s = iv(2.0, 2.0).sqrt();
        assert!(s.lo() * s.lo() <= 2.0 && s.hi() * s.hi() >= 2.0);
    }

    #[test]
    fn empty_absorbs() {
        let e = Interval::EMPTY;
        assert!(e.add(&iv(0.0, 1.0)).is_empty());
        assert!(iv(0.0, 1.0).mul(&e).is_empty());
        assert!(e.sqr().is_empty());
        assert!(e.sqrt().is_empty());
        assert!(iv(-3.0, -1.0).sqrt().is_empty());
    }

    #[test]
    fn unbounded_mul_and_div() {
        assert_eq!(Interval::ZERO.mul(&Interval::ENTIRE), Interval::ZERO);
        assert_eq!(iv(1.0, 2.0).div(&iv(-1.0, 1.0)), Interval::ENTIRE);
        let q = iv(1.0, 2.0).div_within(&iv(-1.0, 1.0), &iv(0.5, 10.0));
        assert_eq!(q, iv(1.0, 10.0));
        assert!(iv(1.0, 2.0).div(&Interval::ZERO).is_empty());
        assert_eq!(iv(0.0, 1.0).div(&iv(0.0, 1.0)), Interval::ENTIRE);
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("[1,2.5]".parse::<Interval>().unwrap(), iv(1.0, 2.5));
        assert!("empty".parse::<Interval>().unwrap().is_empty());
        assert_eq!("[-inf,inf]".parse::<Interval>().unwrap(), Interval::ENTIRE);
        assert_eq!(" 3 ".parse::<Interval>().unwrap(), Interval::point(3.0));
        assert!("[2,1]".parse::<Interval>().is_err());
        assert!("[nan,1]".parse::<Interval>().is_err());
        assert!("[1 2]".parse::<Interval>().is_err());
        assert!("inf".parse::<Interval>().is_err());
        assert_eq!(iv(-1.5, f64::INFINITY).to_string(), "[-1.5,inf]");
        assert_eq!(Interval::EMPTY.to_string(), "empty");
    }

    #[test]
    fn bisect_halves() {
        let (a, b) = iv(0.0, 1.0).bisect();
        assert_eq!(a, iv(0.0, 0.5));
        assert_eq!(b, iv(0.5, 1.0));
    }
}
