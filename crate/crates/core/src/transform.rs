//! Invertible affine maps `x ↦ M·x + o` built from translations, scalings,
//! reflections and planar rotations.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineTransform {
    dim: usize,
    /// Row-major linear part.
    matrix: Vec<f64>,
    offset: Vec<f64>,
    /// Interval enclosure of the exact inverse of `matrix`.
    inverse: Vec<Interval>,
}

impl AffineTransform {
    pub fn new(dim: usize, matrix: Vec<f64>, offset: Vec<f64>) -> Result<Self> {
        if dim == 0 || matrix.len() != dim * dim || offset.len() != dim {
            return Err(Error::InvalidParameter("affine transform shape".into()));
        }
        if !matrix.iter().chain(&offset).all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite transform entry".into()));
        }
        let inverse = enclose_inverse(dim, &matrix)?;
        Ok(AffineTransform { dim, matrix, offset, inverse })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaling(&vec![1.0; dim]).expect("identity is invertible")
    }

    pub fn translation(v: &[f64]) -> Result<Self> {
        let n = v.len();
        let mut m = vec![0.0; n * n];
        (0..n).for_each(|i| m[i * n + i] = 1.0);
        Self::new(n, m, v.to_vec())
    }

    /// Axis-wise scaling; any zero factor is singular.
    pub fn scaling(factors: &[f64]) -> Result<Self> {
        let n = factors.len();
        let mut m = vec![0.0; n * n];
        (0..n).for_each(|i| m[i * n + i] = factors[i]);
        Self::new(n, m, vec![0.0; n])
    }

    /// Point reflection `x ↦ -x`.
    pub fn reflection(dim: usize) -> Self {
        Self::scaling(&vec![-1.0; dim]).expect("reflection is invertible")
    }

    /// Counter-clockwise planar rotation.
    pub fn rotation(theta: f64) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        Self::new(2, vec![c, -s, s, c], vec![0.0, 0.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &AffineTransform) -> Result<Self> {
        if self.dim != first.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: first.dim });
        }
        let n = self.dim;
        let mut m = vec![0.0; n * n];
        let mut o = self.offset.clone();
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| self.matrix[i * n + k] * first.matrix[k * n + j]).sum();
            }
            o[i] += (0..n).map(|k| self.matrix[i * n + k] * first.offset[k]).sum::<f64>();
        }
        Self::new(n, m, o)
    }

    /// Floating-point image of a point.
    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n).map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum::<f64>() + self.offset[i]).collect()
    }

    /// Enclosure of the image of a box.
    pub fn image(&self, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() {
            return IntervalBox::empty(self.dim);
        }
        let n = self.dim;
        IntervalBox::new((0..n).map(|i| {
            let mut acc = Interval::point(self.offset[i]);
            for j in 0..n {
                let m = self.matrix[i * n + j];
                if m != 0.0 {
                    acc = acc.add(&x[j].mul_scalar(m));
                }
            }
            acc
        }))
    }

    /// Enclosure of `{x | M·x + o ∈ y}`.
    pub fn preimage(&self, y: &IntervalBox) -> IntervalBox {
        if y.is_empty() {
            return IntervalBox::empty(self.dim);
        }
        let n = self.dim;
        let shifted: Vec<Interval> = (0..n).map(|i| y[i].sub(&Interval::point(self.offset[i]))).collect();
        IntervalBox::new((0..n).map(|i| {
            let mut acc = Interval::ZERO;
            for (m, s) in self.inverse[i * n..(i + 1) * n].iter().zip(&shifted) {
                if *m != Interval::ZERO {
                    acc = acc.add(&m.mul(s));
                }
            }
            acc
        }))
    }
}

/// Interval enclosure of the inverse of a floating-point matrix. Diagonal
/// matrices get exact reciprocal enclosures; other matrices use a
/// Gauss-Jordan inverse padded by a condition-scaled error bound.
fn enclose_inverse(n: usize, m: &[f64]) -> Result<Vec<Interval>> {
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[i * n + j] == 0.0));
    if diagonal {
        let mut inv = vec![Interval::ZERO; n * n];
        for i in 0..n {
            let d = m[i * n + i];
            if d == 0.0 {
                return Err(Error::SingularTransform);
            }
            inv[i * n + i] = Interval::point(1.0).div(&Interval::point(d));
        }
        return Ok(inv);
    }
    // Gauss-Jordan with partial pivoting.
    let mut a = m.to_vec();
    let mut inv = vec![0.0; n * n];
    (0..n).for_each(|i| inv[i * n + i] = 1.0);
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs())).unwrap();
        let pv = a[piv * n + col];
        if pv.abs() < 1e-300 {
            return Err(Error::SingularTransform);
        }
        for k in 0..n {
            a.swap(col * n + k, piv * n + k);
            inv.swap(col * n + k, piv * n + k);
        }
        for k in 0..n {
            a[col * n + k] /= pv;
            inv[col * n + k] /= pv;
        }
        for r in 0..n {
            if r != col {
                let f = a[r * n + col];
                for k in 0..n {
                    a[r * n + k] -= f * a[col * n + k];
                    inv[r * n + k] -= f * inv[col * n + k];
                }
            }
        }
    }
    let norm =
        |v: &[f64]| (0..n).map(|i| (0..n).map(|j| v[i * n + j].abs()).sum::<f64>()).fold(0.0, f64::max);
    let cond = norm(m) * norm(&inv);
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::SingularTransform);
    }
    let scale = norm(&inv);
    let pad = 64.0 * f64::EPSILON * cond * scale * n as f64 + f64::MIN_POSITIVE;
    Ok(inv.iter().map(|&v| Interval::new(v - pad, v + pad)).collect())
}
