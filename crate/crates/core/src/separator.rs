//! Separators: complementary pairs of contractors and their algebra.
//!
//! A separator for `X` holds an *inner* contractor consistent with the
//! complement of `X` (whatever it removes is proven inside `X`) and an
//! *outer* contractor consistent with `X` (whatever it removes is proven
//! outside `X`).

use std::fmt;
use std::sync::Arc;

use crate::contractor::{Contract, Contractor};
use crate::error::{Error, Result};
use crate::expr::ConstraintSpec;
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::transform::AffineTransform;

/// Implementation side of a separator.
pub trait Separate: Send + Sync {
    fn dim(&self) -> usize;

    /// Inner contraction: keeps every point of the complement.
    fn inner(&self, x: &IntervalBox) -> IntervalBox;

    /// Outer contraction: keeps every point of the set.
    fn outer(&self, x: &IntervalBox) -> IntervalBox;
}

/// Shared, immutable separator handle.
#[derive(Clone)]
pub struct Separator(Arc<dyn Separate>);

impl fmt::Debug for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Separator(dim={})", self.dim())
    }
}

fn dim_check(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

impl Separator {
    pub fn new(s: impl Separate + 'static) -> Self {
        Separator(Arc::new(s))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn inner(&self, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() {
            return x.clone();
        }
        self.0.inner(x)
    }

    pub fn outer(&self, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() {
            return x.clone();
        }
        self.0.outer(x)
    }

    /// `(inner(x), outer(x))`.
    pub fn separate(&self, x: &IntervalBox) -> (IntervalBox, IntervalBox) {
        (self.inner(x), self.outer(x))
    }

    /// The inner contractor as a standalone [`Contractor`].
    pub fn inner_contractor(&self) -> Contractor {
        Contractor::new(InnerOf(self.clone()))
    }

    /// The outer contractor as a standalone [`Contractor`].
    pub fn outer_contractor(&self) -> Contractor {
        Contractor::new(OuterOf(self.clone()))
    }

    /// Separator from an explicit `{inner, outer}` pair.
    pub fn from_contractors(inner: Contractor, outer: Contractor) -> Result<Self> {
        dim_check(inner.dim(), outer.dim())?;
        Ok(Separator::new(Pair { inner, outer }))
    }

    /// Separator for `{x | expr(x) ∈ [l, u]}`: the outer contractor is the
    /// forward-backward contractor of the constraint, the inner one the
    /// union hull of the contractors for `expr ≤ l` and `expr ≥ u`.
    pub fn from_constraint(spec: ConstraintSpec) -> Result<Self> {
        let n = spec.nvars();
        let r = spec.range();
        let mut complement = Vec::new();
        if r.lo() > f64::NEG_INFINITY {
            complement.push(Contractor::fwd_bwd(spec.with_range(Interval::new(f64::NEG_INFINITY, r.lo()))?));
        }
        if r.hi() < f64::INFINITY {
            complement.push(Contractor::fwd_bwd(spec.with_range(Interval::new(r.hi(), f64::INFINITY))?));
        }
        let inner = if complement.is_empty() {
            Contractor::empty_set(n)
        } else {
            Contractor::union_hull_all(complement)?
        };
        Ok(Separator::new(Pair { inner, outer: Contractor::fwd_bwd(spec) }))
    }

    /// Separator for ℝⁿ: inner contracts everything away, outer is the identity.
    pub fn full_space(dim: usize) -> Self {
        Separator::new(Pair { inner: Contractor::empty_set(dim), outer: Contractor::identity(dim) })
    }

    /// Separator for ∅.
    pub fn empty_set(dim: usize) -> Self {
        Separator::full_space(dim).complement()
    }

    /// `{S1_in ∪ S2_in, S1_out ∩ S2_out}`, a separator for `X1 ∩ X2`.
    pub fn intersect(&self, other: &Separator) -> Result<Self> {
        Self::intersect_all(vec![self.clone(), other.clone()])
    }

    /// `{S1_in ∩ S2_in, S1_out ∪ S2_out}`, a separator for `X1 ∪ X2`.
    pub fn union(&self, other: &Separator) -> Result<Self> {
        Self::union_all(vec![self.clone(), other.clone()])
    }

    /// Separator for the intersection of many sets. With no operand the
    /// dimension is unknown, so callers pass at least one.
    pub fn intersect_all(parts: Vec<Separator>) -> Result<Self> {
        check_parts(&parts)?;
        Ok(Separator::new(Intersection(parts)))
    }

    pub fn union_all(parts: Vec<Separator>) -> Result<Self> {
        check_parts(&parts)?;
        Ok(Separator::new(Union(parts)))
    }

    /// Swapped pair: a separator for the complement.
    pub fn complement(&self) -> Self {
        Separator::new(Complement(self.clone()))
    }

    /// Separator for `{x | t(x) ∈ X}`.
    pub fn transform(&self, t: &AffineTransform) -> Result<Self> {
        dim_check(self.dim(), t.dim())?;
        Ok(Separator::new(Transformed { sep: self.clone(), t: t.clone() }))
    }

    /// Separator for `X × Y`, with the components of `self` first.
    pub fn product(&self, other: &Separator) -> Self {
        Separator::new(Product(self.clone(), other.clone()))
    }

    /// Separator for `f⁻¹(X) = {z | f(z) ∈ X}` through a box-level map.
    pub fn inverse_image(&self, f: Arc<dyn Lift>) -> Result<Self> {
        dim_check(self.dim(), f.out_dim())?;
        Ok(Separator::new(InverseImage { sep: self.clone(), f }))
    }

    /// Separator for the existential projection `{p | ∃a ∈ a_domain, (a,p) ∈ Z}`
    /// of the set `Z` described by `self`, whose first `a_domain.dim()`
    /// components are the eliminated variables.
    pub fn project_exists(&self, a_domain: &IntervalBox, eps_a: f64) -> Result<Self> {
        if a_domain.is_empty() || !a_domain.is_bounded() {
            return Err(Error::UnboundedDomain);
        }
        if !(eps_a > 0.0) {
            return Err(Error::InvalidParameter(format!("eps_a must be positive, got {eps_a}")));
        }
        if a_domain.dim() >= self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim() - 1, got: a_domain.dim() });
        }
        Ok(Separator::new(Projection { sep: self.clone(), a_domain: a_domain.clone(), eps_a }))
    }
}

fn check_parts(parts: &[Separator]) -> Result<()> {
    let first = parts.first().ok_or_else(|| Error::InvalidParameter("no separators given".into()))?;
    parts.iter().try_for_each(|s| dim_check(first.dim(), s.dim()))
}

struct InnerOf(Separator);

impl Contract for InnerOf {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.0.inner(x)
    }
}

struct OuterOf(Separator);

impl Contract for OuterOf {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.0.outer(x)
    }
}

struct Pair {
    inner: Contractor,
    outer: Contractor,
}

impl Separate for Pair {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        self.inner.apply(x)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        self.outer.apply(x)
    }
}

fn hull_of(
    parts: &[Separator],
    x: &IntervalBox,
    side: fn(&Separator, &IntervalBox) -> IntervalBox,
) -> IntervalBox {
    let mut acc = IntervalBox::empty(x.dim());
    for s in parts {
        acc = acc.hull(&side(s, x));
        if acc == *x {
            break;
        }
    }
    acc
}

fn meet_of(
    parts: &[Separator],
    x: &IntervalBox,
    side: fn(&Separator, &IntervalBox) -> IntervalBox,
) -> IntervalBox {
    let mut acc = x.clone();
    for s in parts {
        acc = acc.intersect(&side(s, x));
        if acc.is_empty() {
            break;
        }
    }
    acc
}

struct Intersection(Vec<Separator>);

impl Separate for Intersection {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        hull_of(&self.0, x, Separator::inner)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        meet_of(&self.0, x, Separator::outer)
    }
}

struct Union(Vec<Separator>);

impl Separate for Union {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        meet_of(&self.0, x, Separator::inner)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        hull_of(&self.0, x, Separator::outer)
    }
}

struct Complement(Separator);

impl Separate for Complement {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        self.0.outer(x)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        self.0.inner(x)
    }
}

struct Transformed {
    sep: Separator,
    t: AffineTransform,
}

impl Transformed {
    fn through(&self, x: &IntervalBox, side: fn(&Separator, &IntervalBox) -> IntervalBox) -> IntervalBox {
        let y = side(&self.sep, &self.t.image(x));
        x.intersect(&self.t.preimage(&y))
    }
}

impl Separate for Transformed {
    fn dim(&self) -> usize {
        self.sep.dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        self.through(x, Separator::inner)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        self.through(x, Separator::outer)
    }
}

struct Product(Separator, Separator);

impl Product {
    fn split(&self, x: &IntervalBox) -> (IntervalBox, IntervalBox) {
        let n = self.0.dim();
        (x.slice(0..n), x.slice(n..x.dim()))
    }
}

impl Separate for Product {
    fn dim(&self) -> usize {
        self.0.dim() + self.1.dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        // The complement of A × P is (Ā × ℝᵖ) ∪ (ℝⁿ × P̄).
        let (a, p) = self.split(x);
        let left = self.0.inner(&a).concat(&p);
        if left == *x {
            return left;
        }
        left.hull(&a.concat(&self.1.inner(&p)))
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        let (a, p) = self.split(x);
        let a2 = self.0.outer(&a);
        if a2.is_empty() {
            return IntervalBox::empty(x.dim());
        }
        a2.concat(&self.1.outer(&p))
    }
}

/// A box-level map `f: ℝᵏ → ℝᵐ` with a forward enclosure and a backward
/// contraction, used to pull separators back through non-invertible maps.
pub trait Lift: Send + Sync {
    fn in_dim(&self) -> usize;
    fn out_dim(&self) -> usize;

    /// Enclosure of `f(x)`.
    fn image(&self, x: &IntervalBox) -> IntervalBox;

    /// Contracts `x` to an enclosure of `{z ∈ x | f(z) ∈ y}`.
    fn preimage(&self, x: &IntervalBox, y: &IntervalBox) -> IntervalBox;
}

struct InverseImage {
    sep: Separator,
    f: Arc<dyn Lift>,
}

impl InverseImage {
    fn through(&self, x: &IntervalBox, side: fn(&Separator, &IntervalBox) -> IntervalBox) -> IntervalBox {
        let img = self.f.image(x);
        let y = side(&self.sep, &img);
        if y == img {
            return x.clone();
        }
        if y.is_empty() {
            return IntervalBox::empty(x.dim());
        }
        self.f.preimage(x, &y)
    }
}

impl Separate for InverseImage {
    fn dim(&self) -> usize {
        self.f.in_dim()
    }

    fn inner(&self, x: &IntervalBox) -> IntervalBox {
        self.through(x, Separator::inner)
    }

    fn outer(&self, x: &IntervalBox) -> IntervalBox {
        self.through(x, Separator::outer)
    }
}

/// Existential projection by bisection of the eliminated block.
struct Projection {
    sep: Separator,
    a_domain: IntervalBox,
    eps_a: f64,
}

impl Projection {
    fn na(&self) -> usize {
        self.a_domain.dim()
    }

    fn split(&self, z: &IntervalBox) -> (IntervalBox, IntervalBox) {
        let na = self.na();
        (z.slice(0..na), z.slice(na..z.dim()))
    }
}

impl Separate for Projection {
    fn dim(&self) -> usize {
        self.sep.dim() - self.na()
    }

    /// Keeps every `p` that has no witness. Walks a bisection tree of
    /// `a_domain` that does not depend on `p`, narrowing `kept` with the
    /// inner contractor of `Z` at each node; every step is monotone, so the
    /// whole contractor is.
    fn inner(&self, p: &IntervalBox) -> IntervalBox {
        let mut kept = p.clone();
        let mut stack = vec![self.a_domain.clone()];
        while let Some(node) = stack.pop() {
            // No point of Z over node × kept: nothing to remove here or below.
            let zo = self.sep.outer(&node.concat(&kept));
            if zo.is_empty() {
                continue;
            }
            let (a, _) = self.split(&zo);
            let zi = self.sep.inner(&a.concat(&kept));
            if zi.is_empty() {
                return IntervalBox::empty(p.dim());
            }
            kept = self.split(&zi).1;
            if node.width() > self.eps_a {
                if let Ok((l, r)) = node.bisect() {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        kept
    }

    /// Union hull, over the leaves of a fixed bisection of `a_domain`, of
    /// the `p`-blocks that survive the outer contractor of `Z`.
    fn outer(&self, p: &IntervalBox) -> IntervalBox {
        let mut hull = IntervalBox::empty(p.dim());
        let mut stack = vec![self.a_domain.clone()];
        while let Some(node) = stack.pop() {
            let z = self.sep.outer(&node.concat(p));
            if z.is_empty() {
                continue;
            }
            let pz = self.split(&z).1;
            if pz.is_subset(&hull) {
                continue;
            }
            match node.bisect() {
                Ok((l, r)) if node.width() > self.eps_a => {
                    stack.push(r);
                    stack.push(l);
                }
                _ => {
                    hull = hull.hull(&pz);
                    if hull == *p {
                        break;
                    }
                }
            }
        }
        hull
    }
}
