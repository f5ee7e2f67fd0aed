//! Branch-and-contract paver (SIVIA with separators).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval_box::IntervalBox;
use crate::separator::Separator;
use crate::subpaving::SubPaving;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoxClass {
    Inside,
    Outside,
    Boundary,
}

impl fmt::Display for BoxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoxClass::Inside => "INSIDE",
            BoxClass::Outside => "OUTSIDE",
            BoxClass::Boundary => "BOUNDARY",
        })
    }
}

impl FromStr for BoxClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "INSIDE" => Ok(BoxClass::Inside),
            "OUTSIDE" => Ok(BoxClass::Outside),
            "BOUNDARY" => Ok(BoxClass::Boundary),
            _ => Err(Error::Parse(format!("unknown box class {s:?}"))),
        }
    }
}

/// Order in which pending boxes are explored. The emitted paving is the
/// same either way; only peak memory differs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Worklist {
    #[default]
    DepthFirst,
    BreadthFirst,
}

#[derive(Clone, Debug)]
pub struct PaverConfig {
    /// Boxes whose widest side is at most `eps` are not bisected further.
    pub eps: f64,
    pub domain: IntervalBox,
    pub worklist: Worklist,
    /// Worker threads; 1 runs on the calling thread.
    pub threads: usize,
}

impl PaverConfig {
    pub fn new(domain: IntervalBox, eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        if domain.is_empty() || !domain.is_bounded() {
            return Err(Error::UnboundedDomain);
        }
        Ok(PaverConfig { eps, domain, worklist: Worklist::DepthFirst, threads: 1 })
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_worklist(mut self, worklist: Worklist) -> Self {
        self.worklist = worklist;
        self
    }
}

/// One contraction step: classified pieces plus the undecided remainder.
fn step(sep: &Separator, x: &IntervalBox, out: &mut Vec<(IntervalBox, BoxClass)>) -> Option<IntervalBox> {
    let x_in = sep.inner(x);
    out.extend(x.difference(&x_in).into_iter().map(|b| (b, BoxClass::Inside)));
    if x_in.is_empty() {
        return None;
    }
    let x_out = sep.outer(&x_in);
    out.extend(x_in.difference(&x_out).into_iter().map(|b| (b, BoxClass::Outside)));
    if x_out.is_empty() {
        return None;
    }
    Some(x_out)
}

fn split(
    x: IntervalBox,
    eps: f64,
    out: &mut Vec<(IntervalBox, BoxClass)>,
) -> Option<(IntervalBox, IntervalBox)> {
    if x.width() <= eps {
        out.push((x, BoxClass::Boundary));
        return None;
    }
    match x.bisect() {
        Ok(halves) => Some(halves),
        Err(_) => {
            out.push((x, BoxClass::Boundary));
            None
        }
    }
}

fn pave_sequential(sep: &Separator, cfg: &PaverConfig) -> Vec<(IntervalBox, BoxClass)> {
    let mut out = Vec::new();
    let mut work = std::collections::VecDeque::from([cfg.domain.clone()]);
    loop {
        let next = match cfg.worklist {
            Worklist::DepthFirst => work.pop_back(),
            Worklist::BreadthFirst => work.pop_front(),
        };
        let Some(x) = next else { break };
        if let Some(rest) = step(sep, &x, &mut out) {
            if let Some((l, r)) = split(rest, cfg.eps, &mut out) {
                work.push_back(r);
                work.push_back(l);
            }
        }
    }
    out
}

fn pave_recursive(sep: &Separator, x: IntervalBox, eps: f64) -> Vec<(IntervalBox, BoxClass)> {
    let mut out = Vec::new();
    if let Some(rest) = step(sep, &x, &mut out) {
        if let Some((l, r)) = split(rest, eps, &mut out) {
            let (mut a, b) = rayon::join(|| pave_recursive(sep, l, eps), || pave_recursive(sep, r, eps));
            out.append(&mut a);
            out.extend(b);
        }
    }
    out
}

/// Paves `cfg.domain` with `sep`. Output boxes have disjoint interiors,
/// cover the domain and are sorted canonically, so the result does not
/// depend on the worklist order or the thread count.
pub fn pave(sep: &Separator, cfg: &PaverConfig) -> Result<SubPaving> {
    if sep.dim() != cfg.domain.dim() {
        return Err(Error::DimensionMismatch { expected: sep.dim(), got: cfg.domain.dim() });
    }
    if cfg.domain.is_empty() || !cfg.domain.is_bounded() {
        return Err(Error::UnboundedDomain);
    }
    let boxes = if cfg.threads <= 1 {
        pave_sequential(sep, cfg)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| pave_recursive(sep, cfg.domain.clone(), cfg.eps))
    };
    Ok(SubPaving::new(cfg.domain.clone(), cfg.eps, boxes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sep_ring;

    fn dom(b: f64) -> IntervalBox {
        IntervalBox::from_bounds(&[(-b, b), (-b, b)])
    }

    #[test]
    fn trivial_separators() {
        let cfg = PaverConfig::new(dom(10.0), 0.5).unwrap();
        let none = pave(&Separator::empty_set(2), &cfg).unwrap();
        assert_eq!(none.boxes(), &[(dom(10.0), BoxClass::Outside)]);
        let all = pave(&Separator::full_space(2), &cfg).unwrap();
        assert_eq!(all.boxes(), &[(dom(10.0), BoxClass::Inside)]);
    }

    #[test]
    fn config_validation() {
        assert!(PaverConfig::new(dom(1.0), 0.0).is_err());
        let unbounded = IntervalBox::new([crate::Interval::ENTIRE]);
        assert!(matches!(PaverConfig::new(unbounded, 0.1), Err(Error::UnboundedDomain)));
        let cfg = PaverConfig::new(IntervalBox::from_bounds(&[(0.0, 1.0)]), 0.1).unwrap();
        assert!(pave(&Separator::full_space(2), &cfg).is_err());
    }

    #[test]
    fn schedule_independent() {
        let ring = sep_ring([2.0, 2.5], 1.0, 2.0).unwrap();
        let d = IntervalBox::from_bounds(&[(-1.0, 7.0), (-1.0, 7.0)]);
        let base = PaverConfig::new(d, 0.2).unwrap();
        let a = pave(&ring, &base).unwrap();
        let b = pave(&ring, &base.clone().with_worklist(Worklist::BreadthFirst)).unwrap();
        let c = pave(&ring, &base.clone().with_threads(3)).unwrap();
        assert_eq!(a.boxes(), b.boxes());
        assert_eq!(a.boxes(), c.boxes());
        assert!(a.boxes().iter().all(|(x, c)| *c != BoxClass::Boundary || x.width() <= 0.2));
    }
}
