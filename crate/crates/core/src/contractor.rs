//! Contractors: monotone operators that shrink a box without removing any
//! point of the set they are consistent with.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::ConstraintSpec;
use crate::interval_box::IntervalBox;

/// Implementation side of a contractor.
pub trait Contract: Send + Sync {
    fn dim(&self) -> usize;

    /// Returns a sub-box of `x`.
    fn contract(&self, x: &IntervalBox) -> IntervalBox;
}

/// Shared, immutable contractor handle.
#[derive(Clone)]
pub struct Contractor(Arc<dyn Contract>);

impl fmt::Debug for Contractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Contractor(dim={})", self.dim())
    }
}

impl Contractor {
    pub fn new(c: impl Contract + 'static) -> Self {
        Contractor(Arc::new(c))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, x: &IntervalBox) -> IntervalBox {
        debug_assert_eq!(x.dim(), self.dim());
        if x.is_empty() {
            return x.clone();
        }
        self.0.contract(x)
    }

    /// Forward-backward contractor for `spec`. One sweep per call.
    pub fn fwd_bwd(spec: ConstraintSpec) -> Self {
        Contractor::new(FwdBwd { spec })
    }

    /// Leaves every box unchanged: consistent with ℝⁿ.
    pub fn identity(dim: usize) -> Self {
        Contractor::new(Identity { dim })
    }

    /// Maps every box to EMPTY: consistent with ∅.
    pub fn empty_set(dim: usize) -> Self {
        Contractor::new(EmptySet { dim })
    }

    fn same_dim(&self, other: &Contractor) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    /// `(c1 ∩ c2)([x]) = c1([x]) ∩ c2([x])`.
    pub fn intersect(&self, other: &Contractor) -> Result<Contractor> {
        self.same_dim(other)?;
        Ok(Contractor::new(Intersection(vec![self.clone(), other.clone()])))
    }

    /// `(c1 ⊔ c2)([x]) = c1([x]) ⊔ c2([x])`.
    pub fn union_hull(&self, other: &Contractor) -> Result<Contractor> {
        self.same_dim(other)?;
        Ok(Contractor::new(UnionHull(vec![self.clone(), other.clone()])))
    }

    /// `(c1 ∘ c2)([x]) = c1(c2([x]))`.
    pub fn compose(&self, inner: &Contractor) -> Result<Contractor> {
        self.same_dim(inner)?;
        Ok(Contractor::new(Compose(self.clone(), inner.clone())))
    }

    /// Applies `self` up to `max_iter` times, stopping early at a fixed
    /// point. This is exactly `self` composed `max_iter` times, so it stays
    /// monotone (a width-based stopping rule would not).
    pub fn fixpoint(&self, max_iter: usize) -> Contractor {
        Contractor::new(Fixpoint { inner: self.clone(), max_iter: max_iter.max(1) })
    }

    /// Intersection of many contractors.
    pub fn intersect_all(cs: Vec<Contractor>) -> Result<Contractor> {
        check_all(&cs)?;
        Ok(Contractor::new(Intersection(cs)))
    }

    /// Union hull of many contractors.
    pub fn union_hull_all(cs: Vec<Contractor>) -> Result<Contractor> {
        check_all(&cs)?;
        Ok(Contractor::new(UnionHull(cs)))
    }
}

fn check_all(cs: &[Contractor]) -> Result<()> {
    let first = cs.first().ok_or_else(|| Error::InvalidParameter("no contractors given".into()))?;
    cs.iter().try_for_each(|c| first.same_dim(c))
}

impl Contract for Contractor {
    fn dim(&self) -> usize {
        Contractor::dim(self)
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.apply(x)
    }
}

struct FwdBwd {
    spec: ConstraintSpec,
}

impl Contract for FwdBwd {
    fn dim(&self) -> usize {
        self.spec.nvars()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.spec.forward_backward(x)
    }
}

struct Identity {
    dim: usize,
}

impl Contract for Identity {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        x.clone()
    }
}

struct EmptySet {
    dim: usize,
}

impl Contract for EmptySet {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        IntervalBox::empty(x.dim())
    }
}

struct Intersection(Vec<Contractor>);

impl Contract for Intersection {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        let mut acc = x.clone();
        for c in &self.0 {
            acc = acc.intersect(&c.apply(x));
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

struct UnionHull(Vec<Contractor>);

impl Contract for UnionHull {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        let mut acc = IntervalBox::empty(x.dim());
        for c in &self.0 {
            acc = acc.hull(&c.apply(x));
            if acc == *x {
                break;
            }
        }
        acc
    }
}

struct Compose(Contractor, Contractor);

impl Contract for Compose {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.0.apply(&self.1.apply(x))
    }
}

struct Fixpoint {
    inner: Contractor,
    max_iter: usize,
}

impl Contract for Fixpoint {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        let mut cur = x.clone();
        for _ in 0..self.max_iter {
            let next = self.inner.apply(&cur);
            if next == cur || next.is_empty() {
                return next;
            }
            cur = next;
        }
        cur
    }
}
