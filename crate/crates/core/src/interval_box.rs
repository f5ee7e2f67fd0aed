//! Axis-aligned boxes: Cartesian products of intervals.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::interval::{add_up, mul_up, Interval};

pub(crate) type Components = SmallVec<[Interval; 4]>;

/// A box of ℝⁿ. An empty box reports every component as EMPTY.
#[derive(Clone, PartialEq)]
pub struct IntervalBox {
    comps: Components,
}

impl IntervalBox {
    pub fn new(comps: impl IntoIterator<Item = Interval>) -> IntervalBox {
        let comps: Components = comps.into_iter().collect();
        assert!(!comps.is_empty(), "a box needs at least one component");
        let mut b = IntervalBox { comps };
        b.normalize();
        b
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> IntervalBox {
        IntervalBox::new(bounds.iter().map(|&(lo, hi)| Interval::new(lo, hi)))
    }

    pub fn empty(dim: usize) -> IntervalBox {
        IntervalBox::new(std::iter::repeat_n(Interval::EMPTY, dim))
    }

    pub fn entire(dim: usize) -> IntervalBox {
        IntervalBox::new(std::iter::repeat_n(Interval::ENTIRE, dim))
    }

    /// Degenerate box around a point.
    pub fn point(x: &[f64]) -> IntervalBox {
        IntervalBox::new(x.iter().map(|&v| Interval::point(v)))
    }

    fn normalize(&mut self) {
        if self.comps.iter().any(Interval::is_empty) {
            self.comps.iter_mut().for_each(|c| *c = Interval::EMPTY);
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps[0].is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.comps.iter().all(Interval::is_bounded)
    }

    pub fn components(&self) -> &[Interval] {
        &self.comps
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interval> {
        self.comps.iter()
    }

    /// Replaces component `i`, re-normalizing emptiness.
    pub fn set(&mut self, i: usize, value: Interval) {
        self.comps[i] = value;
        self.normalize();
    }

    /// Intersects component `i` with `value`.
    pub fn restrict(&mut self, i: usize, value: &Interval) {
        let v = self.comps[i].intersect(value);
        self.set(i, v);
    }

    /// Maximum component width; zero for an empty box.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.comps.iter().map(Interval::width).fold(0.0, f64::max)
    }

    /// Index of the widest component, lowest index on ties.
    pub fn widest(&self) -> usize {
        let mut best = 0;
        let mut w = f64::NEG_INFINITY;
        for (i, c) in self.comps.iter().enumerate() {
            if c.width() > w {
                w = c.width();
                best = i;
            }
        }
        best
    }

    /// Product of component widths (rounded up).
    pub fn volume(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.comps.iter().fold(1.0, |acc, c| mul_up(acc, c.width()))
    }

    pub fn mid(&self) -> Vec<f64> {
        self.comps.iter().map(Interval::mid).collect()
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.comps.iter().zip(x).all(|(c, v)| c.contains(*v))
    }

    pub fn is_subset(&self, other: &IntervalBox) -> bool {
        self.is_empty()
            || (self.dim() == other.dim() && self.comps.iter().zip(&other.comps).all(|(a, b)| a.is_subset(b)))
    }

    fn check_dim(&self, other: &IntervalBox) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn checked_intersect(&self, other: &IntervalBox) -> Result<IntervalBox> {
        self.check_dim(other)?;
        Ok(IntervalBox::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.intersect(b))))
    }

    pub fn checked_hull(&self, other: &IntervalBox) -> Result<IntervalBox> {
        self.check_dim(other)?;
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        Ok(IntervalBox::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.hull(b))))
    }

    /// Intersection. Panics on dimension mismatch.
    pub fn intersect(&self, other: &IntervalBox) -> IntervalBox {
        self.checked_intersect(other).expect("box dimensions must agree")
    }

    /// Union hull. Panics on dimension mismatch.
    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        self.checked_hull(other).expect("box dimensions must agree")
    }

    /// Splits the widest component at its midpoint (ties: lowest index).
    pub fn bisect(&self) -> Result<(IntervalBox, IntervalBox)> {
        self.bisect_at(self.widest())
    }

    pub fn bisect_at(&self, i: usize) -> Result<(IntervalBox, IntervalBox)> {
        if self.is_empty() || !self.is_bounded() || self.comps[i].width() <= 0.0 {
            return Err(Error::DegenerateBox);
        }
        let (l, r) = self.comps[i].bisect();
        let mut a = self.clone();
        let mut b = self.clone();
        a.comps[i] = l;
        b.comps[i] = r;
        Ok((a, b))
    }

    /// Decomposes `self \ inner` into at most `2n` boxes with disjoint
    /// interiors. `inner` is clipped to `self` first.
    pub fn difference(&self, inner: &IntervalBox) -> Vec<IntervalBox> {
        if self.is_empty() {
            return Vec::new();
        }
        let inner = self.intersect(inner);
        if inner.is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut rest = self.clone();
        for i in 0..self.dim() {
            let (x, y) = (rest.comps[i], inner.comps[i]);
            if x.lo() < y.lo() {
                let mut piece = rest.clone();
                piece.comps[i] = Interval::new(x.lo(), y.lo());
                out.push(piece);
            }
            if y.hi() < x.hi() {
                let mut piece = rest.clone();
                piece.comps[i] = Interval::new(y.hi(), x.hi());
                out.push(piece);
            }
            rest.comps[i] = y;
        }
        out
    }

    /// Sub-box made of components `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> IntervalBox {
        IntervalBox::new(self.comps[range].iter().copied())
    }

    /// Cartesian product `self × other`.
    pub fn concat(&self, other: &IntervalBox) -> IntervalBox {
        IntervalBox::new(self.comps.iter().chain(other.comps.iter()).copied())
    }

    pub fn inflate(&self, r: f64) -> IntervalBox {
        IntervalBox::new(self.comps.iter().map(|c| c.inflate(r)))
    }

    /// Reflection through the origin.
    pub fn neg(&self) -> IntervalBox {
        IntervalBox::new(self.comps.iter().map(Interval::neg))
    }

    /// Upper bound on the Euclidean diameter.
    pub fn diameter(&self) -> f64 {
        self.comps.iter().fold(0.0, |acc, c| add_up(acc, mul_up(c.width(), c.width()))).sqrt()
    }
}

impl Index<usize> for IntervalBox {
    type Output = Interval;

    fn index(&self, i: usize) -> &Interval {
        &self.comps[i]
    }
}

impl fmt::Debug for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalBox {
    type Err = Error;

    /// Whitespace- or `x`-separated interval literals, e.g. `[0,1] [2,3]`.
    fn from_str(s: &str) -> Result<IntervalBox> {
        let comps = s
            .split(|c: char| c.is_whitespace() || c == 'x' || c == '×')
            .filter(|t| !t.is_empty())
            .map(str::parse::<Interval>)
            .collect::<Result<Vec<_>>>()?;
        if comps.is_empty() {
            return Err(Error::Parse("empty box literal".into()));
        }
        Ok(IntervalBox::new(comps))
    }
}
