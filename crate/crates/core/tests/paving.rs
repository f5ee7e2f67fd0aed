mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::{all, in_disk, in_free, not, random_point_in, rng};
use setmink::geometry::{sep_raster_map, sep_ring};
use setmink::paver::Worklist;
use setmink::raster::OccupancyMap;
use setmink::subpaving::PointLocator;
use setmink::{pave, BoxClass, IntervalBox, PaverConfig, SubPaving};

fn dom(a: f64) -> IntervalBox {
    IntervalBox::from_bounds(&[(-a, a), (-a, a)])
}

fn check_samples(sp: &SubPaving, n: usize, seed: u64, oracle: impl Fn(&[f64]) -> Option<bool>) {
    let loc = PointLocator::new(sp);
    let mut r = rng(seed);
    for _ in 0..n {
        let p = random_point_in(&mut r, sp.domain());
        let classes = loc.classify(&p);
        assert!(!classes.is_empty(), "{p:?} not covered");
        let Some(truth) = oracle(&p) else { continue };
        for c in classes {
            match c {
                BoxClass::Inside => assert!(truth, "{p:?} is outside the set but in an INSIDE box"),
                BoxClass::Outside => assert!(!truth, "{p:?} is in the set but in an OUTSIDE box"),
                BoxClass::Boundary => {}
            }
        }
    }
}

#[test]
fn ring_paving_is_sound_on_dense_samples() {
    let sep = sep_ring([0.0, 0.0], 1.0, 2.0).unwrap();
    let sp = pave(&sep, &PaverConfig::new(dom(3.0), 0.05).unwrap()).unwrap();
    check_samples(&sp, 100_000, 11, |p| {
        all(&[in_disk(p, [0.0, 0.0], 2.0), not(in_disk(p, [0.0, 0.0], 1.0))])
    });
}

#[test]
fn ring_area_is_bracketed_and_tightens() {
    let truth = 3.0 * PI;
    let mut last_gap = f64::INFINITY;
    for eps in [0.2, 0.1, 0.05, 0.025] {
        let s = pave(&sep_ring([0.0, 0.0], 1.0, 2.0).unwrap(), &PaverConfig::new(dom(3.0), eps).unwrap())
            .unwrap()
            .stats();
        assert!(s.inside_area <= truth && truth <= s.inside_area + s.boundary_area, "eps {eps}: {s:?}");
        assert!((s.total_area() - 36.0).abs() < 1e-9);
        assert!(s.boundary_area < last_gap, "boundary area did not shrink at eps {eps}");
        last_gap = s.boundary_area;
    }
    // The boundary layer is a band of width about eps around two circles.
    assert!(last_gap < 2.0 * 2.0 * PI * 3.0 * 0.025 * 2.0);
}

#[test]
fn worklist_order_does_not_change_output() {
    let sep = sep_ring([0.5, -0.25], 0.5, 2.5).unwrap();
    let base = PaverConfig::new(dom(3.0), 0.1).unwrap();
    let a = pave(&sep, &base.clone()).unwrap().to_text();
    let b =
        pave(&sep, &base.clone().with_worklist(Worklist::BreadthFirst).with_threads(3)).unwrap().to_text();
    assert_eq!(a, b);
}

fn checkerboard(n: usize) -> OccupancyMap {
    let rows: Vec<String> =
        (0..n).map(|r| (0..n).map(|c| if (r + c) % 2 == 0 { '#' } else { '.' }).collect()).collect();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    OccupancyMap::from_ascii(&rows, [0.0, 0.0], 1.0).unwrap().with_outside_free(false)
}

#[test]
fn raster_checkerboard_boundary_hugs_cell_edges() {
    // Cells are closed, so shared edges belong to both the free set and its
    // complement: only a band along the 112 interior edge units stays undecided.
    let map = Arc::new(checkerboard(8));
    let sep = sep_raster_map(map.clone());
    let d = IntervalBox::from_bounds(&[(0.0, 8.0), (0.0, 8.0)]);
    for eps in [0.25, 0.125] {
        let sp = pave(&sep, &PaverConfig::new(d.clone(), eps).unwrap()).unwrap();
        let s = sp.stats();
        assert_eq!(s.inside_area, s.outside_area, "{s:?}");
        assert!(s.inside_area <= 32.0 && 32.0 <= s.inside_area + s.boundary_area);
        assert!(s.boundary_area <= 112.0 * eps, "eps {eps}: {s:?}");
        check_samples(&sp, 20_000, 12, |p| in_free(p, &map));
    }
}

#[test]
fn raster_outside_extent_follows_flag() {
    let blocked = Arc::new(checkerboard(4));
    let open = Arc::new(checkerboard(4).with_outside_free(true));
    let far = IntervalBox::from_bounds(&[(10.0, 11.0), (10.0, 11.0)]);
    assert!(sep_raster_map(blocked).outer(&far).is_empty());
    assert!(sep_raster_map(open).inner(&far).is_empty());
}
