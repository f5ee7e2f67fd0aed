//! Sonar range simulation and set-membership pose estimation.
//!
//! A sonar with direction `α` and half aperture `γ` returning `[d⁻, d⁺]`
//! tells two things about the position `p`: the free sector
//! `S = pie(α, γ, 0, d⁻)` shifted by `p` lies in the free map `M`, and the
//! impact pie `ΔS = pie(α, γ, d⁻, d⁺)` shifted by `p` meets an obstacle.
//! The second set, `M̄ ⊕ -ΔS`, is computed as `complement(M ⊖ ΔS)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{sep_pie, PieSpec};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::minkowski::{sep_minkowski_diff, sep_set_to_set, SetToSetProblem, TransformFamily};
use crate::paver::{pave, BoxClass, PaverConfig};
use crate::separator::Separator;
use crate::subpaving::SubPaving;
use crate::transform::AffineTransform;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SonarMeasurement {
    /// Beam direction in the world frame.
    pub alpha: f64,
    pub gamma: f64,
    pub d_range: Interval,
    pub d_max: f64,
}

impl SonarMeasurement {
    pub fn new(alpha: f64, gamma: f64, d_range: Interval, d_max: f64) -> Result<Self> {
        if !(alpha.is_finite() && d_max.is_finite() && d_max > 0.0) {
            return Err(Error::InvalidParameter(format!("sonar alpha {alpha}, d_max {d_max}")));
        }
        if !(gamma > 0.0 && gamma < PI / 2.0) {
            return Err(Error::Unsupported(format!("sonar half-aperture {gamma}")));
        }
        if d_range.is_empty() || d_range.lo() < 0.0 || d_range.hi() > d_max {
            return Err(Error::InvalidParameter(format!("range {d_range} outside [0, {d_max}]")));
        }
        Ok(SonarMeasurement { alpha, gamma, d_range, d_max })
    }

    /// A bracket reaching the range cap certifies no obstacle.
    pub fn no_echo(&self) -> bool {
        self.d_range.hi() >= self.d_max
    }

    pub fn free_sector(&self) -> Result<PieSpec> {
        PieSpec::new(self.alpha, self.gamma, 0.0, self.d_range.lo())
    }

    pub fn impact_pie(&self) -> Result<PieSpec> {
        PieSpec::new(self.alpha, self.gamma, self.d_range.lo(), self.d_range.hi())
    }

    /// Widens the range by `margin` on both sides, clipped to `[0, d_max]`.
    pub fn inflated(&self, margin: f64) -> SonarMeasurement {
        let lo = (self.d_range.lo() - margin).max(0.0);
        let hi = (self.d_range.hi() + margin).min(self.d_max);
        SonarMeasurement { d_range: Interval::new(lo, hi), ..*self }
    }
}

/// Parses one measurement per line: `alpha gamma d_lo d_hi d_max`.
/// Blank lines and `#` comments are skipped.
pub fn parse_measurements(text: &str) -> Result<Vec<SonarMeasurement>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |message: String| Error::ParseAt { line: i + 1, message };
        let vals = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| at(format!("bad number {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [alpha, gamma, lo, hi, d_max] = vals[..] else {
            return Err(at(format!("expected 5 fields, got {}", vals.len())));
        };
        let range = Interval::checked(lo, hi).ok_or_else(|| at(format!("bad range [{lo}, {hi}]")))?;
        out.push(SonarMeasurement::new(alpha, gamma, range, d_max).map_err(|e| at(e.to_string()))?);
    }
    Ok(out)
}

pub fn format_measurements(ms: &[SonarMeasurement]) -> String {
    ms.iter()
        .map(|m| format!("{} {} {} {} {}\n", m.alpha, m.gamma, m.d_range.lo(), m.d_range.hi(), m.d_max))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeBracket {
    /// Guaranteed to contain the distance to the nearest obstacle in the cone.
    pub range: Interval,
    /// No obstacle found up to `d_max`; `range` is `[d_max, d_max]`.
    pub no_echo: bool,
}

/// Guaranteed enclosure of the distance returned by a sonar at `pose`:
/// the boundary of `{d ∈ [0, d_max] | d·S₁ ⊂ M - pose}` where `S₁` is the
/// unit cone. The bracket width is about `eps`; the projection resolution is
/// `eps / max(d_max, 1)`.
pub fn simulate_range(
    map_sep: &Separator,
    pose: [f64; 2],
    alpha: f64,
    gamma: f64,
    d_max: f64,
    eps: f64,
) -> Result<RangeBracket> {
    if !(d_max > 0.0 && d_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("d_max {d_max}")));
    }
    if map_sep.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: map_sep.dim() });
    }
    if map_sep.outer(&IntervalBox::point(&pose)).is_empty() {
        return Err(Error::PoseNotFree);
    }
    let unit = PieSpec::new(alpha, gamma, 0.0, 1.0)?;
    let local = map_sep.transform(&AffineTransform::translation(&pose)?)?;
    let problem = SetToSetProblem::new(TransformFamily::Scaling, sep_pie(&unit)?, local)?;
    let eps_a = eps / d_max.max(1.0);
    let dsep = sep_set_to_set(&problem, &unit.bounding_box(), eps_a)?;
    let sp = pave(&dsep, &PaverConfig::new(IntervalBox::from_bounds(&[(0.0, d_max)]), eps)?)?;

    // Boxes come sorted along d. Scaled cones are nested, so the feasible set
    // is an interval starting at 0.
    let mut lo = 0.0;
    for (b, c) in sp.boxes() {
        if *c != BoxClass::Inside || b[0].lo() > lo {
            break;
        }
        lo = b[0].hi();
    }
    let hi =
        sp.of_class(BoxClass::Outside).map(|b| b[0].lo()).filter(|&v| v >= lo).fold(f64::INFINITY, f64::min);
    if hi == f64::INFINITY {
        if lo >= d_max {
            return Ok(RangeBracket { range: Interval::point(d_max), no_echo: true });
        }
        return Ok(RangeBracket { range: Interval::new(lo, d_max), no_echo: false });
    }
    Ok(RangeBracket { range: Interval::new(lo, hi), no_echo: false })
}

/// Directions of `count` sonars evenly spread around `heading`.
pub fn ring_directions(heading: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| crate::geometry::normalize_angle(heading + 2.0 * PI * k as f64 / count as f64))
        .collect()
}

/// Simulates a full scan, one bracket per direction.
pub fn simulate_scan(
    map_sep: &Separator,
    pose: [f64; 2],
    directions: &[f64],
    gamma: f64,
    d_max: f64,
    eps: f64,
) -> Result<Vec<SonarMeasurement>> {
    directions
        .iter()
        .map(|&alpha| {
            let r = simulate_range(map_sep, pose, alpha, gamma, d_max, eps)?;
            SonarMeasurement::new(alpha, gamma, r.range, d_max)
        })
        .collect()
}

fn pie_term(map_sep: &Separator, spec: &PieSpec, eps_a: Option<f64>) -> Result<Separator> {
    let dom = spec.bounding_box();
    let eps_a = eps_a.unwrap_or_else(|| crate::minkowski::default_eps_a(&dom));
    sep_minkowski_diff(map_sep, &sep_pie(spec)?, &dom, eps_a)
}

/// Separators of `M ⊖ Sᵢ` and, unless the measurement has no echo,
/// `M̄ ⊕ -ΔSᵢ` for one measurement.
pub fn measurement_separators(
    map_sep: &Separator,
    m: &SonarMeasurement,
    eps_a: Option<f64>,
) -> Result<Vec<Separator>> {
    let mut parts = Vec::with_capacity(2);
    if m.no_echo() {
        let free = PieSpec::new(m.alpha, m.gamma, 0.0, m.d_max.min(m.d_range.lo().max(0.0)))?;
        parts.push(pie_term(map_sep, &free, eps_a)?);
        return Ok(parts);
    }
    if m.d_range.lo() > 0.0 {
        parts.push(pie_term(map_sep, &m.free_sector()?, eps_a)?);
    } else {
        parts.push(map_sep.clone());
    }
    parts.push(pie_term(map_sep, &m.impact_pie()?, eps_a)?.complement());
    Ok(parts)
}

/// Separator for the set of positions consistent with all measurements.
/// `eps_a = None` picks 1/64 of each pie's bounding box.
pub fn build_pose_separator(
    map_sep: &Separator,
    measurements: &[SonarMeasurement],
    eps_a: Option<f64>,
) -> Result<Separator> {
    if measurements.is_empty() {
        return Ok(Separator::full_space(2));
    }
    let mut parts = Vec::new();
    for m in measurements {
        parts.extend(measurement_separators(map_sep, m, eps_a)?);
    }
    Separator::intersect_all(parts)
}

#[derive(Clone, Debug)]
pub struct PoseEstimate {
    pub paving: SubPaving,
}

impl PoseEstimate {
    /// True when `p` lies in an INSIDE or BOUNDARY box.
    pub fn covers(&self, p: [f64; 2]) -> bool {
        self.paving.classify_point(&p).iter().any(|c| *c != BoxClass::Outside)
    }

    pub fn is_empty(&self) -> bool {
        self.paving.boxes().iter().all(|(_, c)| *c == BoxClass::Outside)
    }
}

pub fn localize(
    map_sep: &Separator,
    measurements: &[SonarMeasurement],
    cfg: &PaverConfig,
    eps_a: Option<f64>,
) -> Result<PoseEstimate> {
    let sep = build_pose_separator(map_sep, measurements, eps_a)?;
    Ok(PoseEstimate { paving: pave(&sep, cfg)? })
}
