//! Classified box collections produced by the paver, their statistics and
//! their text file format.
//!
//! File layout: a header line `dim <n> <eps> <domain>` where the domain is
//! written as interval literals, then one line per box
//! `lo1 hi1 ... lon hin CLASS`. Floats use the shortest representation that
//! round-trips.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::paver::BoxClass;

#[derive(Clone, Debug, PartialEq)]
pub struct SubPaving {
    domain: IntervalBox,
    eps: f64,
    boxes: Vec<(IntervalBox, BoxClass)>,
}

/// Box counts and measures per class.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PavingStats {
    pub inside: usize,
    pub outside: usize,
    pub boundary: usize,
    pub inside_area: f64,
    pub outside_area: f64,
    pub boundary_area: f64,
}

impl PavingStats {
    pub fn total(&self) -> usize {
        self.inside + self.outside + self.boundary
    }

    pub fn total_area(&self) -> f64 {
        self.inside_area + self.outside_area + self.boundary_area
    }
}

fn cmp_boxes(a: &(IntervalBox, BoxClass), b: &(IntervalBox, BoxClass)) -> std::cmp::Ordering {
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        let o = x.lo().total_cmp(&y.lo()).then(x.hi().total_cmp(&y.hi()));
        if o.is_ne() {
            return o;
        }
    }
    a.1.cmp(&b.1)
}

impl SubPaving {
    /// Builds a paving, dropping empty boxes and sorting canonically.
    pub fn new(domain: IntervalBox, eps: f64, mut boxes: Vec<(IntervalBox, BoxClass)>) -> Self {
        boxes.retain(|(b, _)| !b.is_empty());
        boxes.sort_by(cmp_boxes);
        SubPaving { domain, eps, boxes }
    }

    pub fn domain(&self) -> &IntervalBox {
        &self.domain
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn boxes(&self) -> &[(IntervalBox, BoxClass)] {
        &self.boxes
    }

    pub fn of_class(&self, class: BoxClass) -> impl Iterator<Item = &IntervalBox> {
        self.boxes.iter().filter(move |(_, c)| *c == class).map(|(b, _)| b)
    }

    pub fn stats(&self) -> PavingStats {
        let mut s = PavingStats::default();
        for (b, c) in &self.boxes {
            let v = b.volume();
            match c {
                BoxClass::Inside => {
                    s.inside += 1;
                    s.inside_area += v;
                }
                BoxClass::Outside => {
                    s.outside += 1;
                    s.outside_area += v;
                }
                BoxClass::Boundary => {
                    s.boundary += 1;
                    s.boundary_area += v;
                }
            }
        }
        s
    }

    /// Classes of all boxes containing `x` (several on shared faces).
    pub fn classify_point(&self, x: &[f64]) -> Vec<BoxClass> {
        self.boxes.iter().filter(|(b, _)| b.contains_point(x)).map(|(_, c)| *c).collect()
    }

    /// Hull of the INSIDE and BOUNDARY boxes.
    pub fn outer_hull(&self) -> IntervalBox {
        self.boxes
            .iter()
            .filter(|(_, c)| *c != BoxClass::Outside)
            .fold(IntervalBox::empty(self.dim()), |acc, (b, _)| acc.hull(b))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "dim {} {}", self.dim(), self.eps);
        for c in self.domain.iter() {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
        for (b, c) in &self.boxes {
            for iv in b.iter() {
                let _ = write!(s, "{} {} ", iv.lo(), iv.hi());
            }
            let _ = writeln!(s, "{c}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<SubPaving> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| Error::ParseAt { line: line + 1, message };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "missing header".into()))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("dim") {
            return Err(err(hl, "header must start with `dim`".into()));
        }
        let dim: usize = tok
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&d| (1..=64).contains(&d))
            .ok_or_else(|| err(hl, "bad dimension".into()))?;
        let eps: f64 = tok
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|e: &f64| *e > 0.0 && e.is_finite())
            .ok_or_else(|| err(hl, "bad eps".into()))?;
        let comps = tok
            .map(|t| t.parse::<Interval>().map_err(|e| err(hl, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if comps.len() != dim {
            return Err(err(hl, format!("domain has {} components, expected {dim}", comps.len())));
        }
        let domain = IntervalBox::new(comps);
        let mut boxes = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 * dim + 1 {
                return Err(err(ln, format!("expected {} fields", 2 * dim + 1)));
            }
            let num = |t: &str| -> Result<f64> {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(ln, format!("bad number {t:?}")))
            };
            let mut comps = Vec::with_capacity(dim);
            for k in 0..dim {
                let (lo, hi) = (num(toks[2 * k])?, num(toks[2 * k + 1])?);
                comps.push(Interval::checked(lo, hi).ok_or_else(|| err(ln, "lo > hi".into()))?);
            }
            let class = toks[2 * dim].parse::<BoxClass>().map_err(|e| err(ln, e.to_string()))?;
            boxes.push((IntervalBox::new(comps), class));
        }
        Ok(SubPaving::new(domain, eps, boxes))
    }
}

/// Uniform-grid index over the first two coordinates for fast point queries.
pub struct PointLocator<'a> {
    paving: &'a SubPaving,
    cells: Vec<Vec<usize>>,
    k: usize,
    x: Interval,
    y: Interval,
}

impl<'a> PointLocator<'a> {
    pub fn new(paving: &'a SubPaving) -> Self {
        let k = ((paving.boxes.len() as f64).sqrt().ceil() as usize).clamp(1, 512);
        let x = paving.domain[0];
        let y = if paving.dim() > 1 { paving.domain[1] } else { Interval::ZERO };
        let mut loc = PointLocator { paving, cells: vec![Vec::new(); k * k], k, x, y };
        for (i, (b, _)) in paving.boxes.iter().enumerate() {
            let (c0, c1) = loc.span(&loc.x, &b[0]);
            let (r0, r1) = if paving.dim() > 1 { loc.span(&loc.y, &b[1]) } else { (0, 0) };
            for r in r0..=r1 {
                for c in c0..=c1 {
                    loc.cells[r * k + c].push(i);
                }
            }
        }
        loc
    }

    fn bucket(&self, axis: &Interval, v: f64) -> usize {
        if axis.width() <= 0.0 {
            return 0;
        }
        let t = ((v - axis.lo()) / axis.width() * self.k as f64).floor();
        (t.max(0.0) as usize).min(self.k - 1)
    }

    fn span(&self, axis: &Interval, iv: &Interval) -> (usize, usize) {
        (self.bucket(axis, iv.lo()), self.bucket(axis, iv.hi()))
    }

    /// Classes of the boxes containing `x`.
    pub fn classify(&self, x: &[f64]) -> Vec<BoxClass> {
        let c = self.bucket(&self.x, x[0]);
        let r = if x.len() > 1 { self.bucket(&self.y, x[1]) } else { 0 };
        self.cells[r * self.k + c]
            .iter()
            .map(|&i| &self.paving.boxes[i])
            .filter(|(b, _)| b.contains_point(x))
            .map(|(_, c)| *c)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SubPaving {
        let d = IntervalBox::from_bounds(&[(0.0, 2.0), (0.0, 1.0)]);
        SubPaving::new(
            d,
            0.5,
            vec![
                (IntervalBox::from_bounds(&[(1.0, 2.0), (0.0, 1.0)]), BoxClass::Outside),
                (IntervalBox::from_bounds(&[(0.0, 0.5), (0.0, 1.0)]), BoxClass::Inside),
                (IntervalBox::from_bounds(&[(0.5, 1.0), (0.0, 1.0)]), BoxClass::Boundary),
            ],
        )
    }

    #[test]
    fn text_round_trip() {
        let sp = sample();
        let text = sp.to_text();
        assert!(text.starts_with("dim 2 0.5 [0,2] [0,1]\n0 0.5 0 1 INSIDE\n"));
        assert_eq!(SubPaving::parse(&text).unwrap(), sp);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = SubPaving::parse("dim 2 0.5 [0,2] [0,1]\n0 1 0 1 WHATEVER\n").unwrap_err();
        assert!(matches!(e, Error::ParseAt { line: 2, .. }));
        assert!(SubPaving::parse("dim 0 0.5\n").is_err());
        assert!(SubPaving::parse("dim 1 0.5 [0,1]\n1 0 INSIDE\n").is_err());
        assert!(SubPaving::parse("").is_err());
    }

    #[test]
    fn stats_and_lookup() {
        let sp = sample();
        let s = sp.stats();
        assert_eq!((s.inside, s.outside, s.boundary), (1, 1, 1));
        assert_eq!(s.total_area(), 2.0);
        let loc = PointLocator::new(&sp);
        assert_eq!(loc.classify(&[0.25, 0.5]), vec![BoxClass::Inside]);
        assert_eq!(loc.classify(&[1.5, 0.5]), vec![BoxClass::Outside]);
        assert_eq!(sp.classify_point(&[0.25, 0.5]), vec![BoxClass::Inside]);
        assert!(SubPaving::new(sp.domain().clone(), 0.5, vec![]).stats().inside == 0);
    }
}
