//! Constraint expressions `g(x) ∈ [y]` stored as a topologically ordered DAG.

use crate::backward::{bwd_add, bwd_mul, bwd_neg, bwd_scale, bwd_sqr, bwd_sqrt, bwd_sub};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;

/// Index of a node inside a [`ConstraintSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Var(usize),
    Const(Interval),
    Add(NodeId, NodeId),
    Sub(NodeId, NodeId),
    Neg(NodeId),
    Mul(NodeId, NodeId),
    /// Multiplication by a constant factor.
    Scale(f64, NodeId),
    Sqr(NodeId),
    Sqrt(NodeId),
}

impl Node {
    fn children(&self) -> impl Iterator<Item = NodeId> {
        let (a, b) = match *self {
            Node::Var(_) | Node::Const(_) => (None, None),
            Node::Neg(a) | Node::Scale(_, a) | Node::Sqr(a) | Node::Sqrt(a) => (Some(a), None),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

/// Incremental builder; node ids are handed out in creation order, which
/// makes every expression a DAG by construction.
#[derive(Clone, Debug, Default)]
pub struct ExprBuilder {
    nodes: Vec<Node>,
}

impl ExprBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, n: Node) -> NodeId {
        self.nodes.push(n);
        NodeId(self.nodes.len() - 1)
    }

    pub fn var(&mut self, i: usize) -> NodeId {
        self.push(Node::Var(i))
    }

    pub fn constant(&mut self, c: f64) -> NodeId {
        self.push(Node::Const(Interval::point(c)))
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::Add(a, b))
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::Sub(a, b))
    }

    pub fn neg(&mut self, a: NodeId) -> NodeId {
        self.push(Node::Neg(a))
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::Mul(a, b))
    }

    pub fn scale(&mut self, k: f64, a: NodeId) -> NodeId {
        self.push(Node::Scale(k, a))
    }

    pub fn sqr(&mut self, a: NodeId) -> NodeId {
        self.push(Node::Sqr(a))
    }

    pub fn sqrt(&mut self, a: NodeId) -> NodeId {
        self.push(Node::Sqrt(a))
    }

    /// Finishes the constraint `root ∈ range` over `nvars` variables.
    pub fn build(self, nvars: usize, root: NodeId, range: Interval) -> Result<ConstraintSpec> {
        ConstraintSpec::new(nvars, self.nodes, root, range)
    }
}

/// The constraint `expr(x) ∈ range` over variables `x_0..x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSpec {
    nvars: usize,
    nodes: Vec<Node>,
    root: NodeId,
    range: Interval,
}

impl ConstraintSpec {
    pub fn new(nvars: usize, nodes: Vec<Node>, root: NodeId, range: Interval) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedConstraint(m));
        if nvars == 0 {
            return bad("no variables".into());
        }
        if range.is_empty() {
            return bad("empty range".into());
        }
        if root.0 >= nodes.len() {
            return bad(format!("root {} out of bounds", root.0));
        }
        for (i, n) in nodes.iter().enumerate() {
            match n {
                Node::Var(v) if *v >= nvars => {
                    return bad(format!("node {i} references undeclared variable {v}"))
                }
                Node::Const(c) if c.is_empty() => return bad(format!("node {i} is an empty constant")),
                Node::Scale(k, _) if !k.is_finite() => {
                    return bad(format!("node {i} has a non-finite factor"))
                }
                _ => {}
            }
            if let Some(c) = n.children().find(|c| c.0 >= i) {
                return bad(format!("node {i} refers forward to node {}", c.0));
            }
        }
        Ok(ConstraintSpec { nvars, nodes, root, range })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn range(&self) -> Interval {
        self.range
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Same expression with a different admissible range.
    pub fn with_range(&self, range: Interval) -> Result<Self> {
        Self::new(self.nvars, self.nodes.clone(), self.root, range)
    }

    /// Point evaluation (plain floating point, no rounding control).
    pub fn eval_point(&self, x: &[f64]) -> f64 {
        let mut v = vec![0.0; self.root.0 + 1];
        for (i, n) in self.nodes[..=self.root.0].iter().enumerate() {
            v[i] = match *n {
                Node::Var(j) => x[j],
                Node::Const(c) => c.mid(),
                Node::Add(a, b) => v[a.0] + v[b.0],
                Node::Sub(a, b) => v[a.0] - v[b.0],
                Node::Neg(a) => -v[a.0],
                Node::Mul(a, b) => v[a.0] * v[b.0],
                Node::Scale(k, a) => k * v[a.0],
                Node::Sqr(a) => v[a.0] * v[a.0],
                Node::Sqrt(a) => v[a.0].sqrt(),
            };
        }
        v[self.root.0]
    }

    /// Interval evaluation of the expression over a box.
    pub fn eval(&self, x: &IntervalBox) -> Interval {
        let vals = self.forward(x);
        vals[self.root.0]
    }

    fn forward(&self, x: &IntervalBox) -> Vec<Interval> {
        let mut v: Vec<Interval> = Vec::with_capacity(self.root.0 + 1);
        for n in &self.nodes[..=self.root.0] {
            let r = match *n {
                Node::Var(j) => x[j],
                Node::Const(c) => c,
                Node::Add(a, b) => v[a.0].add(&v[b.0]),
                Node::Sub(a, b) => v[a.0].sub(&v[b.0]),
                Node::Neg(a) => v[a.0].neg(),
                Node::Mul(a, b) => v[a.0].mul(&v[b.0]),
                Node::Scale(k, a) => v[a.0].mul_scalar(k),
                Node::Sqr(a) => v[a.0].sqr(),
                Node::Sqrt(a) => v[a.0].sqrt(),
            };
            v.push(r);
        }
        v
    }

    /// One forward sweep followed by one backward sweep.
    pub(crate) fn forward_backward(&self, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() {
            return x.clone();
        }
        let mut v = self.forward(x);
        let root = self.root.0;
        v[root] = v[root].intersect(&self.range);
        if v[root].is_empty() {
            return IntervalBox::empty(x.dim());
        }
        let mut out = x.clone();
        for i in (0..=root).rev() {
            let y = v[i];
            if y.is_empty() {
                return IntervalBox::empty(x.dim());
            }
            match self.nodes[i] {
                Node::Var(j) => {
                    out.restrict(j, &y);
                    if out.is_empty() {
                        return out;
                    }
                }
                Node::Const(c) => {
                    if c.intersect(&y).is_empty() {
                        return IntervalBox::empty(x.dim());
                    }
                }
                Node::Add(a, b) => {
                    let (na, nb) = bwd_add(&y, &v[a.0], &v[b.0]);
                    v[a.0] = na;
                    v[b.0] = nb;
                }
                Node::Sub(a, b) => {
                    let (na, nb) = bwd_sub(&y, &v[a.0], &v[b.0]);
                    v[a.0] = na;
                    v[b.0] = nb;
                }
                Node::Neg(a) => v[a.0] = bwd_neg(&y, &v[a.0]),
                Node::Mul(a, b) => {
                    let (na, nb) = bwd_mul(&y, &v[a.0], &v[b.0]);
                    v[a.0] = na;
                    v[b.0] = nb;
                }
                Node::Scale(k, a) => v[a.0] = bwd_scale(&y, k, &v[a.0]),
                Node::Sqr(a) => v[a.0] = bwd_sqr(&y, &v[a.0]),
                Node::Sqrt(a) => v[a.0] = bwd_sqrt(&y, &v[a.0]),
            }
        }
        out
    }
}

// Common constraint shapes.

/// `(x_i - c_i)²` summed over `center`, with variables offset by `first`.
pub(crate) fn squared_distance(b: &mut ExprBuilder, first: usize, center: &[f64]) -> NodeId {
    let mut acc: Option<NodeId> = None;
    for (k, &c) in center.iter().enumerate() {
        let x = b.var(first + k);
        let d = if c == 0.0 {
            x
        } else {
            let cc = b.constant(c);
            b.sub(x, cc)
        };
        let s = b.sqr(d);
        acc = Some(match acc {
            None => s,
            Some(a) => b.add(a, s),
        });
    }
    acc.expect("center must be non-empty")
}

/// `Σ coeffs_i · x_i`.
pub(crate) fn linear_form(b: &mut ExprBuilder, coeffs: &[f64]) -> NodeId {
    let mut acc: Option<NodeId> = None;
    for (i, &k) in coeffs.iter().enumerate() {
        if k == 0.0 {
            continue;
        }
        let x = b.var(i);
        let t = if k == 1.0 { x } else { b.scale(k, x) };
        acc = Some(match acc {
            None => t,
            Some(a) => b.add(a, t),
        });
    }
    acc.unwrap_or_else(|| b.constant(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_dags() {
        let r = Interval::new(0.0, 1.0);
        let forward_ref = vec![Node::Neg(NodeId(1)), Node::Var(0)];
        assert!(ConstraintSpec::new(1, forward_ref, NodeId(0), r).is_err());
        assert!(ConstraintSpec::new(1, vec![Node::Var(3)], NodeId(0), r).is_err());
        assert!(ConstraintSpec::new(1, vec![Node::Var(0)], NodeId(4), r).is_err());
        assert!(ConstraintSpec::new(1, vec![Node::Var(0)], NodeId(0), Interval::EMPTY).is_err());
    }

    #[test]
    fn ring_expression_evaluates() {
        let mut b = ExprBuilder::new();
        let root = squared_distance(&mut b, 0, &[2.0, 2.5]);
        let spec = b.build(2, root, Interval::new(1.0, 4.0)).unwrap();
        assert_eq!(spec.eval_point(&[3.0, 2.5]), 1.0);
        let e = spec.eval(&IntervalBox::from_bounds(&[(2.0, 3.0), (2.5, 2.5)]));
        assert_eq!(e, Interval::new(0.0, 1.0));
    }
}
