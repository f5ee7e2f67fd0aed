//! Set-to-set transforms and the separator-level Minkowski operations.
//!
//! For a family of maps `f(a, p)` the parameter set
//! `P = {p | f(A, p) ⊂ B}` equals the complement of
//! `proj_p((A × ℝᵖ) ∩ f⁻¹(B̄))`, and the same expression over separators
//! gives a separator for `P`. Translations `f(a, p) = a + p` yield the
//! Minkowski difference `B ⊖ A`; the Minkowski sum follows from
//! `A ⊕ B = complement(B̄ ⊖ (-A))`.

use std::sync::Arc;

use crate::backward::bwd_add;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::paver::{pave, BoxClass, PaverConfig};
use crate::separator::{Lift, Separator};
use crate::transform::AffineTransform;

/// Supported parameterized map families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformFamily {
    /// `f(a, p) = a + p` with `p ∈ ℝⁿ`.
    Translation,
    /// `f(a, d) = d · a` with a scalar `d`.
    Scaling,
}

impl TransformFamily {
    pub fn p_dim(&self, n: usize) -> usize {
        match self {
            TransformFamily::Translation => n,
            TransformFamily::Scaling => 1,
        }
    }

    fn lift(&self, n: usize) -> Arc<dyn Lift> {
        match self {
            TransformFamily::Translation => Arc::new(TranslationLift { n }),
            TransformFamily::Scaling => Arc::new(ScalingLift { n }),
        }
    }
}

/// `P = {p | f(A, p) ⊂ B}`.
#[derive(Clone, Debug)]
pub struct SetToSetProblem {
    pub family: TransformFamily,
    pub sep_a: Separator,
    pub sep_b: Separator,
}

impl SetToSetProblem {
    pub fn new(family: TransformFamily, sep_a: Separator, sep_b: Separator) -> Result<Self> {
        if sep_a.dim() != sep_b.dim() {
            return Err(Error::DimensionMismatch { expected: sep_a.dim(), got: sep_b.dim() });
        }
        Ok(SetToSetProblem { family, sep_a, sep_b })
    }

    pub fn p_dim(&self) -> usize {
        self.family.p_dim(self.sep_a.dim())
    }
}

struct TranslationLift {
    n: usize,
}

impl Lift for TranslationLift {
    fn in_dim(&self) -> usize {
        2 * self.n
    }

    fn out_dim(&self) -> usize {
        self.n
    }

    fn image(&self, z: &IntervalBox) -> IntervalBox {
        IntervalBox::new((0..self.n).map(|i| z[i].add(&z[self.n + i])))
    }

    fn preimage(&self, z: &IntervalBox, y: &IntervalBox) -> IntervalBox {
        let n = self.n;
        let mut a = Vec::with_capacity(n);
        let mut p = Vec::with_capacity(n);
        for i in 0..n {
            let (ai, pi) = bwd_add(&y[i], &z[i], &z[n + i]);
            if ai.is_empty() {
                return IntervalBox::empty(2 * n);
            }
            a.push(ai);
            p.push(pi);
        }
        IntervalBox::new(a.into_iter().chain(p))
    }
}

struct ScalingLift {
    n: usize,
}

impl Lift for ScalingLift {
    fn in_dim(&self) -> usize {
        self.n + 1
    }

    fn out_dim(&self) -> usize {
        self.n
    }

    fn image(&self, z: &IntervalBox) -> IntervalBox {
        let d = z[self.n];
        IntervalBox::new((0..self.n).map(|i| d.mul(&z[i])))
    }

    fn preimage(&self, z: &IntervalBox, y: &IntervalBox) -> IntervalBox {
        let n = self.n;
        let mut d = z[n];
        let mut a: Vec<Interval> = (0..n).map(|i| z[i]).collect();
        for i in 0..n {
            let yi = y[i].intersect(&d.mul(&a[i]));
            a[i] = yi.div_within(&d, &a[i]);
            d = yi.div_within(&a[i], &d);
            if a[i].is_empty() || d.is_empty() {
                return IntervalBox::empty(n + 1);
            }
        }
        IntervalBox::new(a.into_iter().chain(std::iter::once(d)))
    }
}

/// Default projection resolution: 1/64 of the widest side of `a_domain`.
pub fn default_eps_a(a_domain: &IntervalBox) -> f64 {
    a_domain.width() / 64.0
}

/// Separator for `{p | f(A, p) ⊂ B}`, built as
/// `complement(proj_p((S_A × S_ℝᵖ) ∩ f⁻¹(complement(S_B))))`.
pub fn sep_set_to_set(problem: &SetToSetProblem, a_domain: &IntervalBox, eps_a: f64) -> Result<Separator> {
    let n = problem.sep_a.dim();
    if a_domain.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a_domain.dim() });
    }
    let lifted = problem.sep_a.product(&Separator::full_space(problem.p_dim()));
    let hits_complement = problem.sep_b.complement().inverse_image(problem.family.lift(n))?;
    let z = lifted.intersect(&hits_complement)?;
    Ok(z.project_exists(a_domain, eps_a)?.complement())
}

/// Separator for `B ⊖ A = {p | A + p ⊂ B}`; `a_domain` must enclose `A`.
pub fn sep_minkowski_diff(
    sep_b: &Separator,
    sep_a: &Separator,
    a_domain: &IntervalBox,
    eps_a: f64,
) -> Result<Separator> {
    let problem = SetToSetProblem::new(TransformFamily::Translation, sep_a.clone(), sep_b.clone())?;
    sep_set_to_set(&problem, a_domain, eps_a)
}

/// Separator for `A ⊕ B = {a + b | a ∈ A, b ∈ B}`; `a_domain` must enclose `A`.
pub fn sep_minkowski_sum(
    sep_a: &Separator,
    sep_b: &Separator,
    a_domain: &IntervalBox,
    eps_a: f64,
) -> Result<Separator> {
    let reflect = AffineTransform::reflection(sep_a.dim());
    let neg_a = sep_a.transform(&reflect)?;
    Ok(sep_minkowski_diff(&sep_b.complement(), &neg_a, &a_domain.neg(), eps_a)?.complement())
}

/// Bounded domain enclosing the set of `sep`, from a coarse paving of
/// `search` at resolution `4·eps`, inflated by `eps`.
pub fn estimate_domain(sep: &Separator, search: &IntervalBox, eps: f64) -> Result<IntervalBox> {
    let sp = pave(sep, &PaverConfig::new(search.clone(), 4.0 * eps)?)?;
    let hull = sp
        .boxes()
        .iter()
        .filter(|(_, c)| *c != BoxClass::Outside)
        .fold(IntervalBox::empty(search.dim()), |acc, (b, _)| acc.hull(b));
    if hull.is_empty() {
        return Err(Error::InvalidParameter("set is empty inside the search box".into()));
    }
    Ok(hull.inflate(eps))
}

/// True when the outer contractor of `sep` keeps some point on the border
/// of `domain`, i.e. the set may stick out of it.
pub fn domain_may_clip(sep: &Separator, domain: &IntervalBox) -> bool {
    (0..domain.dim()).any(|i| {
        [domain[i].lo(), domain[i].hi()].iter().any(|&v| {
            let mut face = domain.clone();
            face.set(i, Interval::point(v));
            !sep.outer(&face).is_empty()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sep_disk, sep_rect};

    fn pt(x: f64, y: f64) -> IntervalBox {
        IntervalBox::point(&[x, y])
    }

    #[test]
    fn translation_lift_round_trip() {
        let l = TranslationLift { n: 1 };
        let z = IntervalBox::from_bounds(&[(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(l.image(&z), IntervalBox::from_bounds(&[(2.0, 4.0)]));
        let c = l.preimage(&z, &IntervalBox::from_bounds(&[(3.5, 4.0)]));
        assert_eq!(c, IntervalBox::from_bounds(&[(0.5, 1.0), (2.5, 3.0)]));
    }

    #[test]
    fn scaling_lift_contracts_factor() {
        let l = ScalingLift { n: 2 };
        let z = IntervalBox::from_bounds(&[(1.0, 1.0), (0.5, 0.5), (0.0, 10.0)]);
        let c = l.preimage(&z, &IntervalBox::from_bounds(&[(f64::NEG_INFINITY, 5.0), (0.0, 100.0)]));
        assert_eq!(c[2], Interval::new(0.0, 5.0));
    }

    #[test]
    fn box_erosion() {
        let a = sep_rect([0.0, 0.0], [0.5, 0.5]).unwrap();
        let b = sep_rect([0.0, 0.0], [1.0, 1.0]).unwrap();
        let dom = IntervalBox::from_bounds(&[(-0.5, 0.5), (-0.5, 0.5)]);
        let p = sep_minkowski_diff(&b, &a, &dom, 1.0 / 64.0).unwrap();
        assert!(p.inner(&IntervalBox::from_bounds(&[(-0.4, 0.4), (-0.4, 0.4)])).is_empty());
        assert!(p.outer(&pt(0.6, 0.0)).is_empty());
        assert!(p.inner(&pt(0.0, 0.0)).is_empty());
    }

    #[test]
    fn disk_minus_rectangle_points() {
        let a = sep_rect([0.0, 0.0], [2.0, 1.0]).unwrap();
        let b = sep_disk([0.0, 0.0], 5.0).unwrap();
        let dom = IntervalBox::from_bounds(&[(-2.0, 2.0), (-1.0, 1.0)]);
        let p = sep_minkowski_diff(&b, &a, &dom, default_eps_a(&dom)).unwrap();
        assert!(p.inner(&pt(0.0, 0.0)).is_empty());
        assert!(p.outer(&pt(4.0, 0.0)).is_empty());
    }

    #[test]
    fn box_dilation() {
        let a = sep_rect([0.0, 0.0], [1.0, 1.0]).unwrap();
        let b = sep_rect([0.0, 0.0], [0.5, 0.5]).unwrap();
        let dom = IntervalBox::from_bounds(&[(-1.0, 1.0), (-1.0, 1.0)]);
        let s = sep_minkowski_sum(&a, &b, &dom, 1.0 / 32.0).unwrap();
        assert!(s.inner(&pt(1.4, -1.4)).is_empty());
        assert!(s.outer(&pt(1.6, 0.0)).is_empty());
        assert!(s.outer(&pt(0.0, -1.6)).is_empty());
    }

    #[test]
    fn domain_estimate_and_clipping() {
        let d = sep_disk([1.0, 0.0], 1.0).unwrap();
        let search = IntervalBox::from_bounds(&[(-4.0, 4.0), (-4.0, 4.0)]);
        let dom = estimate_domain(&d, &search, 0.05).unwrap();
        assert!(IntervalBox::from_bounds(&[(0.0, 2.0), (-1.0, 1.0)]).is_subset(&dom));
        assert!(dom.width() < 2.6);
        assert!(!domain_may_clip(&d, &dom));
        let small = IntervalBox::from_bounds(&[(0.0, 1.0), (-1.0, 1.0)]);
        assert!(domain_may_clip(&d, &small));
    }
}
