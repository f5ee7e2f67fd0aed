//! Backward (inverse) projections of the arithmetic primitives.
//!
//! Each function takes the admissible output range and the current argument
//! intervals and returns the arguments contracted to (an enclosure of) the
//! values that can still produce an output in range. Infeasibility shows up
//! as EMPTY arguments.

use crate::interval::Interval;

/// `a + b ∈ out`.
pub fn bwd_add(out: &Interval, a: &Interval, b: &Interval) -> (Interval, Interval) {
    let a2 = a.intersect(&out.sub(b));
    let b2 = b.intersect(&out.sub(&a2));
    if a2.is_empty() || b2.is_empty() {
        return (Interval::EMPTY, Interval::EMPTY);
    }
    (a2, b2)
}

/// `a - b ∈ out`.
pub fn bwd_sub(out: &Interval, a: &Interval, b: &Interval) -> (Interval, Interval) {
    let a2 = a.intersect(&out.add(b));
    let b2 = b.intersect(&a2.sub(out));
    if a2.is_empty() || b2.is_empty() {
        return (Interval::EMPTY, Interval::EMPTY);
    }
    (a2, b2)
}

/// `-a ∈ out`.
pub fn bwd_neg(out: &Interval, a: &Interval) -> Interval {
    a.intersect(&out.neg())
}

/// `a * b ∈ out`. When a divisor straddles zero both branches of the
/// extended quotient are clipped to the argument before taking the hull.
pub fn bwd_mul(out: &Interval, a: &Interval, b: &Interval) -> (Interval, Interval) {
    let a2 = out.div_within(b, a);
    let b2 = out.div_within(&a2, b);
    if a2.is_empty() || b2.is_empty() {
        return (Interval::EMPTY, Interval::EMPTY);
    }
    (a2, b2)
}

/// `k * a ∈ out` for a constant factor `k`.
pub fn bwd_scale(out: &Interval, k: f64, a: &Interval) -> Interval {
    if k == 0.0 {
        return if out.contains(0.0) { *a } else { Interval::EMPTY };
    }
    out.div_within(&Interval::point(k), a)
}

/// `a² ∈ out`: hull of the positive and negative branches within `a`.
pub fn bwd_sqr(out: &Interval, a: &Interval) -> Interval {
    let root = out.sqrt();
    if root.is_empty() {
        return Interval::EMPTY;
    }
    let pos = root.intersect(a);
    let neg = root.neg().intersect(a);
    pos.hull(&neg)
}

/// `√a ∈ out`.
pub fn bwd_sqrt(out: &Interval, a: &Interval) -> Interval {
    let r = out.intersect(&Interval::POSITIVE);
    if r.is_empty() {
        return Interval::EMPTY;
    }
    a.intersect(&r.sqr()).intersect(&Interval::POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn sqr_positive_branch() {
        assert_eq!(bwd_sqr(&iv(1.0, 4.0), &iv(0.5, 10.0)), iv(1.0, 2.0));
    }

    #[test]
    fn sqr_both_branches() {
        // Oracle: dense sampling of [-10,10] keeping x with x² ∈ [1,4].
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..=200_000 {
            let x = -10.0 + 20.0 * k as f64 / 200_000.0;
            if (1.0..=4.0).contains(&(x * x)) {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        assert_eq!((lo, hi), (-2.0, 2.0));
        assert_eq!(bwd_sqr(&iv(1.0, 4.0), &iv(-10.0, 10.0)), iv(lo, hi));
    }

    #[test]
    fn add_infeasible() {
        let (a, b) = bwd_add(&iv(0.0, 1.0), &iv(0.0, 5.0), &iv(3.0, 4.0));
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn mul_through_zero() {
        let (a, b) = bwd_mul(&iv(1.0, 2.0), &iv(-4.0, 4.0), &iv(0.5, 1.0));
        assert_eq!(a, iv(1.0, 4.0));
        assert_eq!(b, iv(0.5, 1.0));
        let (a, _) = bwd_mul(&iv(1.0, 2.0), &iv(-4.0, 4.0), &iv(-1.0, 1.0));
        assert_eq!(a, iv(-4.0, 4.0));
        let (a, _) = bwd_mul(&iv(1.0, 2.0), &iv(-4.0, 4.0), &Interval::ZERO);
        assert!(a.is_empty());
    }

    #[test]
    fn sqrt_and_scale() {
        assert_eq!(bwd_sqrt(&iv(1.0, 2.0), &iv(-5.0, 10.0)), iv(1.0, 4.0));
        assert!(bwd_sqrt(&iv(-2.0, -1.0), &iv(0.0, 10.0)).is_empty());
        assert_eq!(bwd_scale(&iv(2.0, 4.0), 2.0, &iv(0.0, 10.0)), iv(1.0, 2.0));
        assert!(bwd_scale(&iv(2.0, 4.0), 0.0, &iv(0.0, 10.0)).is_empty());
    }
}
