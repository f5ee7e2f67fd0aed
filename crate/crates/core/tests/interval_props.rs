use proptest::prelude::*;
use setmink::{Interval, IntervalBox};

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, -1.0..1.0f64, Just(0.0), Just(-0.0)]
}

/// An interval together with one of its members.
fn member() -> impl Strategy<Value = (Interval, f64)> {
    (finite(), finite(), 0.0..=1.0f64).prop_map(|(a, b, t)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x = (lo + t * (hi - lo)).clamp(lo, hi);
        (Interval::new(lo, hi), x)
    })
}

proptest! {
    #[test]
    fn arithmetic_encloses_point_results((a, x) in member(), (b, y) in member()) {
        prop_assert!(a.add(&b).contains(x + y));
        prop_assert!(a.sub(&b).contains(x - y));
        prop_assert!(a.mul(&b).contains(x * y));
        prop_assert!(a.neg().contains(-x));
        prop_assert!(a.sqr().contains(x * x));
        if !b.contains(0.0) {
            prop_assert!(a.div(&b).contains(x / y), "{} / {} misses {}", a, b, x / y);
        }
        if x >= 0.0 {
            prop_assert!(a.sqrt().contains(x.sqrt()));
        }
    }

    #[test]
    fn lattice_operations((a, x) in member(), (b, _) in member()) {
        prop_assert!(a.hull(&b).contains(x));
        let m = a.intersect(&b);
        prop_assert!(m.is_empty() || (m.is_subset(&a) && m.is_subset(&b)));
        prop_assert_eq!(m.contains(x), b.contains(x));
        let (l, r) = a.bisect();
        prop_assert!(l.contains(x) || r.contains(x));
        prop_assert_eq!(l.hull(&r), a);
    }

    #[test]
    fn text_round_trip((a, _) in member(), (b, _) in member()) {
        prop_assert_eq!(a.to_string().parse::<Interval>().unwrap(), a);
        let bx = IntervalBox::new([a, b]);
        prop_assert_eq!(bx.to_string().parse::<IntervalBox>().unwrap(), bx);
    }

    #[test]
    fn box_difference_partitions(
        (a, x) in member(), (b, y) in member(), (c, _) in member(), (d, _) in member()
    ) {
        let outer = IntervalBox::new([a, b]);
        let inner = outer.intersect(&IntervalBox::new([c, d]));
        let pieces = outer.difference(&inner);
        let p = [x, y];
        let hits = pieces.iter().filter(|q| q.contains_point(&p)).count()
            + usize::from(!inner.is_empty() && inner.contains_point(&p));
        prop_assert!(hits >= 1);
        for q in &pieces {
            prop_assert!(q.is_subset(&outer));
        }
    }
}
