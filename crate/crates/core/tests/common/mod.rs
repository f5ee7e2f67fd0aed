//! Shared sampling helpers and independent point-membership oracles.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use setmink::geometry::{
    sep_disk, sep_halfplane, sep_halfplane_union_map, sep_pie, sep_raster_map, sep_rect, sep_ring,
    sep_triangle, PieSpec,
};
use setmink::minkowski::{default_eps_a, sep_minkowski_diff, sep_minkowski_sum};
use setmink::raster::OccupancyMap;
use setmink::transform::AffineTransform;
use setmink::{ExprBuilder, Interval, IntervalBox, Separator};

/// Points closer than this to a boundary are not classified by the oracles.
pub const MARGIN: f64 = 1e-7;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn load_map(name: &str) -> Arc<OccupancyMap> {
    let p = repo_root().join("scenarios/maps").join(format!("{name}.pgm"));
    Arc::new(OccupancyMap::load(&p).expect("fixture map"))
}

/// Random sub-box of `dom`: uniform center, log-uniform widths, and now and
/// then a degenerate component.
pub fn random_box(r: &mut impl Rng, dom: &IntervalBox) -> IntervalBox {
    IntervalBox::new(dom.iter().map(|c| {
        let mid = r.gen_range(c.lo()..=c.hi());
        if r.gen_bool(0.15) {
            return Interval::point(mid);
        }
        let w = c.width() * 10f64.powf(r.gen_range(-6.0..0.0));
        Interval::new(mid - w / 2.0, mid + w / 2.0)
    }))
}

pub fn random_point_in(r: &mut impl Rng, x: &IntervalBox) -> Vec<f64> {
    x.iter().map(|c| if c.width() == 0.0 { c.lo() } else { r.gen_range(c.lo()..=c.hi()) }).collect()
}

/// Three-valued membership: `None` within [`MARGIN`] of the boundary.
pub type Pred = Box<dyn Fn(&[f64]) -> Option<bool> + Send + Sync>;

/// Classifies by the sign of `g`, where the set is `{g ≤ 0}`.
pub fn level(g: f64) -> Option<bool> {
    if g.abs() < MARGIN {
        None
    } else {
        Some(g < 0.0)
    }
}

pub fn all(ps: &[Option<bool>]) -> Option<bool> {
    if ps.contains(&Some(false)) {
        Some(false)
    } else if ps.iter().all(|p| *p == Some(true)) {
        Some(true)
    } else {
        None
    }
}

pub fn any(ps: &[Option<bool>]) -> Option<bool> {
    if ps.contains(&Some(true)) {
        Some(true)
    } else if ps.iter().all(|p| *p == Some(false)) {
        Some(false)
    } else {
        None
    }
}

pub fn not(p: Option<bool>) -> Option<bool> {
    p.map(|b| !b)
}

pub fn in_disk(p: &[f64], c: [f64; 2], r: f64) -> Option<bool> {
    level((p[0] - c[0]).hypot(p[1] - c[1]) - r)
}

pub fn in_rect(p: &[f64], c: [f64; 2], h: [f64; 2]) -> Option<bool> {
    level(((p[0] - c[0]).abs() - h[0]).max((p[1] - c[1]).abs() - h[1]))
}

/// Distance from `p` to the rectangle `c ± h` (zero inside).
pub fn dist_to_rect(p: &[f64], c: [f64; 2], h: [f64; 2]) -> f64 {
    let dx = ((p[0] - c[0]).abs() - h[0]).max(0.0);
    let dy = ((p[1] - c[1]).abs() - h[1]).max(0.0);
    dx.hypot(dy)
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise convex hull (monotone chain).
pub fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Membership in a counter-clockwise convex polygon via signed edge distances.
pub fn in_convex(p: &[f64], poly: &[[f64; 2]]) -> Option<bool> {
    let g = (0..poly.len())
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            -cross(a, b, [p[0], p[1]]) / len
        })
        .fold(f64::NEG_INFINITY, f64::max);
    level(g)
}

/// Angle of `p` relative to `alpha`, in (-π, π].
pub fn rel_angle(p: &[f64], alpha: f64) -> f64 {
    let mut d = p[1].atan2(p[0]) - alpha;
    while d <= -PI {
        d += 2.0 * PI;
    }
    while d > PI {
        d -= 2.0 * PI;
    }
    d
}

/// Pie membership through `atan2`, independent of the half-plane form.
pub fn in_pie(p: &[f64], s: &PieSpec) -> Option<bool> {
    let r = p[0].hypot(p[1]);
    let radial = all(&[level(s.r_lo - r), level(r - s.r_hi)]);
    if r < MARGIN {
        // The apex belongs to the closed cone.
        return if s.r_lo == 0.0 { radial } else { Some(false) };
    }
    let ang = level((rel_angle(p, s.alpha).abs() - s.gamma) * r);
    all(&[radial, ang])
}

/// Pixel lookup on a raster map; `None` near pixel edges.
pub fn in_free(p: &[f64], map: &OccupancyMap) -> Option<bool> {
    let res = map.resolution();
    let ext = map.extent();
    for k in 0..2 {
        let t = (p[k] - ext[k].lo()) / res;
        if (t - t.round()).abs() * res < MARGIN {
            return None;
        }
    }
    Some(!map.is_obstacle_at(p[0], p[1]))
}

/// `max over corners (±2, ±1) of ‖p + corner‖ ≤ 5`: the erosion of the
/// radius-5 disk by the 4 × 2 rectangle.
pub fn corner_norm(p: &[f64]) -> Option<bool> {
    let m = [[2.0, 1.0], [2.0, -1.0], [-2.0, 1.0], [-2.0, -1.0]]
        .iter()
        .map(|o| (p[0] + o[0]).hypot(p[1] + o[1]))
        .fold(0.0, f64::max);
    level(m - 5.0)
}

pub struct Case {
    pub name: &'static str,
    pub sep: Separator,
    pub pred: Pred,
    pub domain: IntervalBox,
}

fn dom2(lo: f64, hi: f64) -> IntervalBox {
    IntervalBox::from_bounds(&[(lo, hi), (lo, hi)])
}

/// Every separator construct shipped by the library, each paired with an
/// oracle that does not reuse its implementation.
pub fn separator_cases() -> Vec<Case> {
    let mut v = Vec::new();
    v.push(Case {
        name: "disk",
        sep: sep_disk([0.5, -1.0], 5.0).unwrap(),
        pred: Box::new(|p| in_disk(p, [0.5, -1.0], 5.0)),
        domain: dom2(-8.0, 8.0),
    });
    v.push(Case {
        name: "ring",
        sep: sep_ring([2.0, 2.5], 1.0, 2.0).unwrap(),
        pred: Box::new(|p| all(&[not(in_disk(p, [2.0, 2.5], 1.0)), in_disk(p, [2.0, 2.5], 2.0)])),
        domain: dom2(-1.0, 7.0),
    });
    v.push(Case {
        name: "rect",
        sep: sep_rect([1.0, 0.0], [2.0, 1.0]).unwrap(),
        pred: Box::new(|p| in_rect(p, [1.0, 0.0], [2.0, 1.0])),
        domain: dom2(-4.0, 4.0),
    });
    let tri = [[-3.0, -2.0], [4.0, -1.0], [0.0, 5.0]];
    let tri_poly = convex_hull(tri.to_vec());
    let tp = tri_poly.clone();
    v.push(Case {
        name: "triangle",
        sep: sep_triangle(tri).unwrap(),
        pred: Box::new(move |p| in_convex(p, &tp)),
        domain: dom2(-6.0, 6.0),
    });
    v.push(Case {
        name: "halfplane",
        sep: sep_halfplane([1.0, 2.0], 1.0).unwrap(),
        pred: Box::new(|p| level((1.0 - p[0] - 2.0 * p[1]) / 5f64.sqrt())),
        domain: dom2(-5.0, 5.0),
    });
    v.push(Case {
        name: "two-wall map",
        sep: sep_halfplane_union_map(),
        pred: Box::new(|p| any(&[level(p[0] - 5.0), level(p[1] - 3.0)])),
        domain: dom2(-2.0, 10.0),
    });
    let cone = PieSpec::new(PI / 4.0, PI / 24.0, 0.0, 8.0).unwrap();
    v.push(Case {
        name: "free sector",
        sep: sep_pie(&cone).unwrap(),
        pred: Box::new(move |p| in_pie(p, &cone)),
        domain: dom2(-2.0, 8.0),
    });
    // Straddles the ±π branch cut of atan2.
    let impact = PieSpec::new(3.1, 0.3, 4.0, 6.0).unwrap();
    v.push(Case {
        name: "impact pie",
        sep: sep_pie(&impact).unwrap(),
        pred: Box::new(move |p| in_pie(p, &impact)),
        domain: dom2(-7.0, 7.0),
    });
    let room = load_map("room");
    let rm = room.clone();
    v.push(Case {
        name: "raster map",
        sep: sep_raster_map(room.clone()),
        pred: Box::new(move |p| in_free(p, &rm)),
        domain: IntervalBox::from_bounds(&[(-1.0, 17.0), (-1.0, 13.0)]),
    });
    v.push(Case {
        name: "union",
        sep: sep_disk([0.0, 0.0], 2.0).unwrap().union(&sep_rect([2.0, 1.0], [2.0, 0.5]).unwrap()).unwrap(),
        pred: Box::new(|p| any(&[in_disk(p, [0.0, 0.0], 2.0), in_rect(p, [2.0, 1.0], [2.0, 0.5])])),
        domain: dom2(-4.0, 5.0),
    });
    v.push(Case {
        name: "intersection",
        sep: sep_ring([0.0, 0.0], 1.0, 3.0)
            .unwrap()
            .intersect(&sep_halfplane([1.0, -1.0], 0.5).unwrap())
            .unwrap(),
        pred: Box::new(|p| {
            all(&[
                not(in_disk(p, [0.0, 0.0], 1.0)),
                in_disk(p, [0.0, 0.0], 3.0),
                level((0.5 - p[0] + p[1]) / 2f64.sqrt()),
            ])
        }),
        domain: dom2(-4.0, 4.0),
    });
    let tp = tri_poly.clone();
    v.push(Case {
        name: "complement",
        sep: sep_triangle(tri).unwrap().complement(),
        pred: Box::new(move |p| not(in_convex(p, &tp))),
        domain: dom2(-6.0, 6.0),
    });
    let th = 0.6f64;
    v.push(Case {
        name: "rotated rect",
        sep: sep_rect([0.0, 0.0], [3.0, 1.0])
            .unwrap()
            .transform(&AffineTransform::rotation(-th).unwrap())
            .unwrap(),
        pred: Box::new(move |p| {
            // Points whose rotation by -θ lands in the rectangle.
            let (s, c) = (-th).sin_cos();
            in_rect(&[c * p[0] - s * p[1], s * p[0] + c * p[1]], [0.0, 0.0], [3.0, 1.0])
        }),
        domain: dom2(-4.0, 4.0),
    });
    v.push(Case {
        name: "product",
        sep: sep_ring([0.0, 0.0], 1.0, 2.0)
            .unwrap()
            .product(&Separator::from_constraint(interval_constraint(1, Interval::new(-1.0, 0.5))).unwrap()),
        pred: Box::new(|p| {
            all(&[
                not(in_disk(p, [0.0, 0.0], 1.0)),
                in_disk(p, [0.0, 0.0], 2.0),
                level((p[2] - 0.5).max(-1.0 - p[2])),
            ])
        }),
        domain: IntervalBox::from_bounds(&[(-3.0, 3.0), (-3.0, 3.0), (-2.0, 2.0)]),
    });
    v.push(Case {
        name: "projection",
        sep: stadium_sep(),
        pred: Box::new(|p| {
            // Distance from p to the segment [0,1] × {0} at most 1.
            let t = p[0].clamp(0.0, 1.0);
            level((p[0] - t).hypot(p[1]) - 1.0)
        }),
        domain: dom2(-3.0, 4.0),
    });
    let a_dom = IntervalBox::from_bounds(&[(-2.0, 2.0), (-1.0, 1.0)]);
    v.push(Case {
        name: "minkowski difference",
        sep: sep_minkowski_diff(
            &sep_disk([0.0, 0.0], 5.0).unwrap(),
            &sep_rect([0.0, 0.0], [2.0, 1.0]).unwrap(),
            &a_dom,
            default_eps_a(&a_dom),
        )
        .unwrap(),
        pred: Box::new(corner_norm),
        domain: dom2(-6.0, 6.0),
    });
    let d_dom = IntervalBox::from_bounds(&[(-1.0, 1.0), (-1.0, 1.0)]);
    v.push(Case {
        name: "minkowski sum",
        sep: sep_minkowski_sum(
            &sep_disk([0.0, 0.0], 1.0).unwrap(),
            &sep_rect([1.0, 0.0], [1.5, 0.5]).unwrap(),
            &d_dom,
            default_eps_a(&d_dom),
        )
        .unwrap(),
        pred: Box::new(|p| level(dist_to_rect(p, [1.0, 0.0], [1.5, 0.5]) - 1.0)),
        domain: dom2(-3.0, 5.0),
    });
    v
}

/// `x_0 ∈ range` in `nvars` variables (`nvars = 1` here).
pub fn interval_constraint(nvars: usize, range: Interval) -> setmink::ConstraintSpec {
    let mut b = ExprBuilder::new();
    let x = b.var(0);
    b.build(nvars, x, range).unwrap()
}

/// `{p | ∃a ∈ [0,1], (p₁ - a)² + p₂² ≤ 1}`: a stadium around the unit segment.
pub fn stadium_sep() -> Separator {
    let mut b = ExprBuilder::new();
    let (a, p1, p2) = (b.var(0), b.var(1), b.var(2));
    let d = b.sub(p1, a);
    let d2 = b.sqr(d);
    let q = b.sqr(p2);
    let s = b.add(d2, q);
    let z =
        Separator::from_constraint(b.build(3, s, Interval::new(f64::NEG_INFINITY, 1.0)).unwrap()).unwrap();
    z.project_exists(&IntervalBox::from_bounds(&[(0.0, 1.0)]), 1.0 / 256.0).unwrap()
}
