//! Vertex models and their partition functions.
//!
//! A vertex model of dimension `n` is a tensor `c ∈ (ℝⁿ)^{⊗3}` invariant under
//! cyclic rotation of its indices. Indices are 0-based here; the text format
//! in [`crate::format`] is 1-based.

mod eval;
mod gradient;
mod orthogonal;

pub use eval::{evaluate, evaluate_naive, evaluate_sum, Evaluator, MAX_CONTRACTION_RANK};
pub use gradient::{gradient, inner_product_w, GradientTensor};
pub use orthogonal::{apply_orthogonal, apply_orthogonal_f64, ORTHOGONALITY_TOLERANCE};

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{FromPrimitive, One, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// Numeric types a model can be evaluated over.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("entry ({0}, {1}, {2}) breaks cyclic invariance")]
    NotCyclicInvariant(usize, usize, usize),
    #[error("expected {expected} entries for dimension {n}, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not orthogonal (deviation {0:e})")]
    NotOrthogonal(f64),
    #[error("tensor is not alternating")]
    NotAlternating,
}

/// A cyclically invariant 3-tensor, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexModel<T = Rational> {
    n: usize,
    entries: Vec<T>,
}

pub type FloatModel = VertexModel<f64>;

#[inline]
pub(crate) fn flat(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// All index triples of `[n]^3` in row-major order.
pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// `dim W`: the number of cyclic-rotation orbits on `[n]^3`.
pub fn w_dimension(n: usize) -> usize {
    triples(n)
        .filter(|&(i, j, k)| (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j))
        .count()
}

impl<T: Scalar> VertexModel<T> {
    pub fn zero(n: usize) -> Self {
        VertexModel { n, entries: vec![T::zero(); n * n * n] }
    }

    /// Wraps dense entries, rejecting tensors that are not cyclically invariant.
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self, ModelError> {
        if entries.len() != n * n * n {
            return Err(ModelError::WrongLength { n, expected: n * n * n, got: entries.len() });
        }
        for (i, j, k) in triples(n) {
            let e = &entries[flat(n, i, j, k)];
            if *e != entries[flat(n, j, k, i)] {
                return Err(ModelError::NotCyclicInvariant(i, j, k));
            }
        }
        Ok(VertexModel { n, entries })
    }

    /// Averages an arbitrary dense tensor over cyclic index rotation.
    pub fn project_c3(n: usize, raw: &[T]) -> Result<Self, ModelError> {
        if raw.len() != n * n * n {
            return Err(ModelError::WrongLength { n, expected: n * n * n, got: raw.len() });
        }
        let three = T::from_u8(3).unwrap();
        let mut entries = vec![T::zero(); raw.len()];
        for (i, j, k) in triples(n) {
            // same summation order for every member of the orbit
            let mut orbit = [(i, j, k), (j, k, i), (k, i, j)];
            orbit.sort();
            let s = orbit
                .iter()
                .fold(T::zero(), |acc, &(a, b, c)| acc + raw[flat(n, a, b, c)].clone());
            entries[flat(n, i, j, k)] = s / three.clone();
        }
        Ok(VertexModel { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.entries[flat(self.n, i, j, k)]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `c_{ikj} = -c_{ijk}` for every triple.
    pub fn is_alternating(&self) -> bool {
        triples(self.n).all(|(i, j, k)| *self.get(i, k, j) == -self.get(i, j, k).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> VertexModel<U> {
        VertexModel { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    /// `self + t * other`.
    pub fn axpy(&self, t: &T, other: &VertexModel<T>) -> Result<VertexModel<T>, ModelError> {
        if self.n != other.n {
            return Err(ModelError::DimensionMismatch(self.n, other.n));
        }
        Ok(VertexModel {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + t.clone() * b.clone())
                .collect(),
        })
    }
}

impl VertexModel<Rational> {
    pub fn to_f64(&self) -> FloatModel {
        self.map(crate::rational::to_f64)
    }
}

/// The Levi-Civita tensor on `ℝ³`, the structure tensor of so(3) in an
/// orthonormal basis.
pub fn structure_tensor_so3() -> VertexModel {
    let mut entries = vec![Rational::zero(); 27];
    for (i, j, k) in triples(3) {
        if i != j && j != k && i != k {
            let even = (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 0) || (i, j, k) == (2, 0, 1);
            entries[flat(3, i, j, k)] = if even { Rational::one() } else { -Rational::one() };
        }
    }
    VertexModel::new(3, entries).expect("Levi-Civita is cyclically invariant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn levi_civita_is_fixed_by_projection() {
        let eps = structure_tensor_so3();
        assert_eq!(VertexModel::project_c3(3, eps.entries()).unwrap(), eps);
        assert!(eps.is_alternating());
    }

    #[test]
    fn projection_averages_the_orbit() {
        let mut raw = vec![int(0); 27];
        raw[flat(3, 0, 1, 2)] = int(1);
        let c = VertexModel::project_c3(3, &raw).unwrap();
        for (i, j, k) in triples(3) {
            let want = if [(0, 1, 2), (1, 2, 0), (2, 0, 1)].contains(&(i, j, k)) {
                frac(1, 3)
            } else {
                int(0)
            };
            assert_eq!(*c.get(i, j, k), want);
        }
        assert_eq!(VertexModel::project_c3(3, c.entries()).unwrap(), c);
    }

    #[test]
    fn non_invariant_entries_are_rejected() {
        let mut raw = vec![int(0); 8];
        raw[flat(2, 0, 0, 1)] = int(1);
        assert_eq!(
            VertexModel::new(2, raw).unwrap_err(),
            ModelError::NotCyclicInvariant(0, 0, 1)
        );
    }

    #[test]
    fn jacobi_identity_for_levi_civita() {
        let c = structure_tensor_so3();
        for (i, j, k) in triples(3) {
            for l in 0..3 {
                let s: Rational = (0..3)
                    .map(|a| {
                        c.get(i, j, a) * c.get(a, k, l)
                            + c.get(j, k, a) * c.get(a, i, l)
                            + c.get(k, i, a) * c.get(a, j, l)
                    })
                    .sum();
                assert_eq!(s, int(0));
            }
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(w_dimension(1), 1);
        assert_eq!(w_dimension(2), 4);
        assert_eq!(w_dimension(3), 11);
    }
}
