//! Separators for the concrete planar sets: disks, rings, rectangles,
//! triangles, half-planes, sonar pies and raster maps.
//!
//! Strict inequalities are implemented by their closures, so boundary points
//! classify as inside.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{linear_form, squared_distance, ExprBuilder};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::raster::{ctc_raster, OccupancyMap, RasterTarget};
use crate::separator::Separator;

fn squared_range(r_lo: f64, r_hi: f64) -> Interval {
    // A zero inner radius must map to -inf: {‖x‖² ≤ 0} is a point of the set,
    // not of its complement.
    let lo = if r_lo == 0.0 { f64::NEG_INFINITY } else { Interval::point(r_lo).sqr().lo() };
    let hi = if r_hi == f64::INFINITY { f64::INFINITY } else { Interval::point(r_hi).sqr().hi() };
    Interval::new(lo, hi)
}

fn check_finite(vals: &[f64], what: &str) -> Result<()> {
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::DegenerateShape(format!("{what} has non-finite parameters")))
    }
}

/// `{x | r_lo ≤ ‖x - center‖ ≤ r_hi}`.
pub fn sep_ring(center: [f64; 2], r_lo: f64, r_hi: f64) -> Result<Separator> {
    check_finite(&[center[0], center[1], r_lo, r_hi], "ring")?;
    if !(0.0 <= r_lo && r_lo <= r_hi) {
        return Err(Error::DegenerateShape(format!("ring radii [{r_lo}, {r_hi}]")));
    }
    let mut b = ExprBuilder::new();
    let root = squared_distance(&mut b, 0, &center);
    Separator::from_constraint(b.build(2, root, squared_range(r_lo, r_hi))?)
}

/// Closed disk.
pub fn sep_disk(center: [f64; 2], radius: f64) -> Result<Separator> {
    if !(radius > 0.0) {
        return Err(Error::DegenerateShape(format!("disk radius {radius}")));
    }
    sep_ring(center, 0.0, radius)
}

/// Axis-aligned rectangle `center ± half_widths`.
pub fn sep_rect(center: [f64; 2], half_widths: [f64; 2]) -> Result<Separator> {
    check_finite(&[center[0], center[1], half_widths[0], half_widths[1]], "rect")?;
    if !(half_widths[0] > 0.0 && half_widths[1] > 0.0) {
        return Err(Error::DegenerateShape("rectangle with zero width".into()));
    }
    let side = |axis: usize| -> Result<Separator> {
        let mut coeffs = [0.0; 2];
        coeffs[axis] = 1.0;
        let range = Interval::point(center[axis]).sub(&Interval::point(half_widths[axis]));
        let range_hi = Interval::point(center[axis]).add(&Interval::point(half_widths[axis]));
        sep_linear(&coeffs, Interval::new(range.lo(), range_hi.hi()))
    };
    side(0)?.intersect(&side(1)?)
}

/// `{x | coeffs · x ∈ range}`.
pub fn sep_linear(coeffs: &[f64], range: Interval) -> Result<Separator> {
    check_finite(coeffs, "linear constraint")?;
    let mut b = ExprBuilder::new();
    let root = linear_form(&mut b, coeffs);
    Separator::from_constraint(b.build(coeffs.len(), root, range)?)
}

/// Closed half-plane `{x | normal · x ≥ offset}`.
pub fn sep_halfplane(normal: [f64; 2], offset: f64) -> Result<Separator> {
    if normal == [0.0, 0.0] {
        return Err(Error::DegenerateShape("half-plane with zero normal".into()));
    }
    sep_linear(&normal, Interval::new(offset, f64::INFINITY))
}

/// Triangle as the intersection of three inward half-planes.
pub fn sep_triangle(v: [[f64; 2]; 3]) -> Result<Separator> {
    check_finite(&v.concat(), "triangle")?;
    let cross = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0]);
    if cross == 0.0 {
        return Err(Error::DegenerateShape("triangle with zero area".into()));
    }
    let mut sides = Vec::with_capacity(3);
    for i in 0..3 {
        let (p, q, r) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
        let mut n = [-(q[1] - p[1]), q[0] - p[0]];
        if n[0] * (r[0] - p[0]) + n[1] * (r[1] - p[1]) < 0.0 {
            n = [-n[0], -n[1]];
        }
        // n·p rounded down keeps the half-plane closed around its edge.
        let off = Interval::point(n[0]).mul_scalar(p[0]).add(&Interval::point(n[1]).mul_scalar(p[1])).lo();
        sides.push(sep_halfplane(n, off)?);
    }
    Separator::intersect_all(sides)
}

/// `{x | x₁ ≤ 5 or x₂ ≤ 3}`: the two-wall map of the sonar example.
pub fn sep_halfplane_union_map() -> Separator {
    let left = sep_linear(&[1.0, 0.0], Interval::new(f64::NEG_INFINITY, 5.0)).expect("valid");
    let below = sep_linear(&[0.0, 1.0], Interval::new(f64::NEG_INFINITY, 3.0)).expect("valid");
    left.union(&below).expect("same dimension")
}

/// Annular cone sector centered at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PieSpec {
    /// Axis direction, radians, normalized to (-π, π].
    pub alpha: f64,
    /// Half aperture, radians, in (0, π/2).
    pub gamma: f64,
    pub r_lo: f64,
    pub r_hi: f64,
}

/// Normalizes an angle to (-π, π].
pub fn normalize_angle(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    } else if x > PI {
        x -= 2.0 * PI;
    }
    x
}

impl PieSpec {
    pub fn new(alpha: f64, gamma: f64, r_lo: f64, r_hi: f64) -> Result<PieSpec> {
        check_finite(&[alpha, gamma, r_lo, r_hi], "pie")?;
        if !(gamma > 0.0) {
            return Err(Error::DegenerateShape(format!("pie aperture {gamma}")));
        }
        if gamma >= FRAC_PI_2 {
            return Err(Error::Unsupported(format!("pie half-aperture {gamma} must be below π/2")));
        }
        if !(0.0 <= r_lo && r_lo <= r_hi) {
            return Err(Error::DegenerateShape(format!("pie radii [{r_lo}, {r_hi}]")));
        }
        Ok(PieSpec { alpha: normalize_angle(alpha), gamma, r_lo, r_hi })
    }

    /// Inward normals of the two cone edges.
    pub fn edge_normals(&self) -> [[f64; 2]; 2] {
        let (s1, c1) = (self.alpha - self.gamma).sin_cos();
        let (s2, c2) = (self.alpha + self.gamma).sin_cos();
        [[-s1, c1], [s2, -c2]]
    }

    /// Point membership via the half-plane formulation used by [`sep_pie`].
    pub fn contains(&self, x: [f64; 2]) -> bool {
        let r2 = x[0] * x[0] + x[1] * x[1];
        let [n1, n2] = self.edge_normals();
        r2 >= self.r_lo * self.r_lo
            && r2 <= self.r_hi * self.r_hi
            && n1[0] * x[0] + n1[1] * x[1] >= 0.0
            && n2[0] * x[0] + n2[1] * x[1] >= 0.0
    }

    /// Closed-form bounding box, slightly inflated to cover rounding.
    pub fn bounding_box(&self) -> IntervalBox {
        let (a0, a1) = (self.alpha - self.gamma, self.alpha + self.gamma);
        let mut xs = Vec::with_capacity(10);
        for &r in &[self.r_lo, self.r_hi] {
            for &t in &[a0, a1] {
                xs.push([r * t.cos(), r * t.sin()]);
            }
        }
        for k in -2..=2 {
            let t = k as f64 * FRAC_PI_2;
            for shift in [-2.0 * PI, 0.0, 2.0 * PI] {
                if (a0..=a1).contains(&(t + shift)) {
                    xs.push([self.r_hi * t.cos(), self.r_hi * t.sin()]);
                }
            }
        }
        let lo = |i: usize| xs.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
        let hi = |i: usize| xs.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        let pad = 1e-9 * (1.0 + self.r_hi);
        IntervalBox::new([Interval::new(lo(0), hi(0)).inflate(pad), Interval::new(lo(1), hi(1)).inflate(pad)])
    }
}

/// `{x | ‖x‖ ∈ [r_lo, r_hi], angle(x) ∈ [α-γ, α+γ]}` as an annulus
/// intersected with the two edge half-planes of the cone.
pub fn sep_pie(spec: &PieSpec) -> Result<Separator> {
    let spec = PieSpec::new(spec.alpha, spec.gamma, spec.r_lo, spec.r_hi)?;
    let [n1, n2] = spec.edge_normals();
    Separator::intersect_all(vec![
        sep_ring([0.0, 0.0], spec.r_lo, spec.r_hi)?,
        sep_halfplane(n1, 0.0)?,
        sep_halfplane(n2, 0.0)?,
    ])
}

/// Free space of a raster map: inner keeps obstacles, outer keeps free cells.
pub fn sep_raster_map(map: Arc<OccupancyMap>) -> Separator {
    Separator::from_contractors(
        ctc_raster(map.clone(), RasterTarget::Obstacle),
        ctc_raster(map, RasterTarget::Free),
    )
    .expect("both raster contractors are planar")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> IntervalBox {
        IntervalBox::point(&[x, y])
    }

    fn inside(s: &Separator, x: f64, y: f64) -> bool {
        s.inner(&pt(x, y)).is_empty()
    }

    fn outside(s: &Separator, x: f64, y: f64) -> bool {
        s.outer(&pt(x, y)).is_empty()
    }

    #[test]
    fn unit_cone_points() {
        let spec = PieSpec::new(PI / 4.0, PI / 24.0, 0.0, 1.0).unwrap();
        let s = sep_pie(&spec).unwrap();
        let h = 0.5 * (PI / 4.0).cos();
        assert!(inside(&s, h, h));
        assert!(outside(&s, 1.0, 0.0));
        let r = 1.2 * (PI / 4.0).cos();
        assert!(outside(&s, r, r));
        assert!(!outside(&s, 0.0, 0.0));
    }

    #[test]
    fn pie_rejects_wide_aperture() {
        assert!(matches!(PieSpec::new(0.0, FRAC_PI_2, 0.0, 1.0), Err(Error::Unsupported(_))));
        assert!(PieSpec::new(0.0, 0.1, 2.0, 1.0).is_err());
    }

    #[test]
    fn pie_bounding_box_contains_samples() {
        let spec = PieSpec::new(3.0, 0.4, 1.0, 4.0).unwrap();
        let bb = spec.bounding_box();
        for i in 0..=50 {
            for j in 0..=50 {
                let t = spec.alpha - spec.gamma + 2.0 * spec.gamma * i as f64 / 50.0;
                let r = spec.r_lo + (spec.r_hi - spec.r_lo) * j as f64 / 50.0;
                assert!(bb.contains_point(&[r * t.cos(), r * t.sin()]));
            }
        }
        assert!(bb[0].lo() < -3.99);
    }

    #[test]
    fn disk_rect_triangle() {
        let d = sep_disk([0.0, 0.0], 5.0).unwrap();
        let around = IntervalBox::from_bounds(&[(2.99, 3.01), (3.99, 4.01)]);
        assert!(!d.inner(&around).is_empty() && !d.outer(&around).is_empty());
        assert!(inside(&d, 0.0, 0.0));
        let r = sep_rect([0.0, 0.0], [2.0, 1.0]).unwrap();
        assert!(!outside(&r, 2.0, 1.0));
        assert!(inside(&r, 1.0, 0.5));
        let t = sep_triangle([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(inside(&t, 1.0 / 3.0, 1.0 / 3.0));
        assert!(outside(&t, 1.0, 1.0));
        assert!(sep_triangle([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).is_err());
        assert!(sep_disk([0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn two_wall_map() {
        let m = sep_halfplane_union_map();
        assert!(inside(&m, 0.0, 0.0));
        assert!(outside(&m, 6.0, 4.0));
        assert!(inside(&m, 6.0, 2.0));
    }

    #[test]
    fn raster_all_free_is_full_space() {
        let map = OccupancyMap::from_ascii(&["..", ".."], [0.0, 0.0], 1.0).unwrap();
        let s = sep_raster_map(Arc::new(map));
        let x = IntervalBox::from_bounds(&[(-1.0, 3.0), (0.5, 1.5)]);
        assert!(s.inner(&x).is_empty());
        assert_eq!(s.outer(&x), x);
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}
