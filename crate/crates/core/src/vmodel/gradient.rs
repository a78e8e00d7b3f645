use super::{flat, ModelError, Scalar, VertexModel};
use crate::rational::Rational;
use crate::ribbon::RibbonGraph;

/// An element of `W`, the C₃-invariant part of `(ℝⁿ)^{⊗3}`, in full
/// `[n]³` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientTensor<T = Rational> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> GradientTensor<T> {
    pub fn zero(n: usize) -> Self {
        GradientTensor { n, entries: vec![T::zero(); n * n * n] }
    }

    /// The symmetrised unit tensor `y_{ijk} = (e_{ijk} + e_{jki} + e_{kij}) / 3`.
    pub fn basis(n: usize, i: usize, j: usize, k: usize) -> Self {
        let mut raw = vec![T::zero(); n * n * n];
        raw[flat(n, i, j, k)] = T::one();
        let sym = VertexModel::project_c3(n, &raw).expect("length matches");
        GradientTensor { n, entries: sym.entries().to_vec() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.entries[flat(self.n, i, j, k)]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The same tensor viewed as a vertex model (a direction in `W`).
    pub fn to_model(&self) -> VertexModel<T> {
        VertexModel::new(self.n, self.entries.clone()).expect("gradients are C3-invariant")
    }
}

/// Standard inner product of `(ℝⁿ)^{⊗3}` restricted to `W`.
pub fn inner_product_w<T: Scalar>(a: &GradientTensor<T>, b: &GradientTensor<T>) -> Result<T, ModelError> {
    if a.n != b.n {
        return Err(ModelError::DimensionMismatch(a.n, b.n));
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
}

/// The `W`-gradient of `c ↦ f_c(G)` at `c`.
///
/// For each colouring and each vertex `u`, the product over the other
/// vertices is added at the colour triple seen at `u`; the result is then
/// averaged over cyclic shifts.
pub fn gradient<T: Scalar>(g: &RibbonGraph, c: &VertexModel<T>) -> GradientTensor<T> {
    let n = c.n();
    let nv = g.vertex_count();
    if nv == 0 || n == 0 {
        return GradientTensor::zero(n);
    }
    let edge_of = g.edge_index();
    let mut colour = vec![0usize; g.edge_count()];
    let mut raw = vec![T::zero(); n * n * n];
    let mut weights: Vec<T> = Vec::with_capacity(nv);
    loop {
        weights.clear();
        let mut zeros = 0;
        for v in 0..nv {
            let w = c.get(colour[edge_of[3 * v]], colour[edge_of[3 * v + 1]], colour[edge_of[3 * v + 2]]);
            if w.is_zero() {
                zeros += 1;
            }
            weights.push(w.clone());
        }
        // at most one vanishing factor can be the one left out
        if zeros <= 1 {
            for u in 0..nv {
                if zeros == 1 && !weights[u].is_zero() {
                    continue;
                }
                let prod = weights
                    .iter()
                    .enumerate()
                    .filter(|&(v, _)| v != u)
                    .fold(T::one(), |acc, (_, w)| acc * w.clone());
                let slot = flat(n, colour[edge_of[3 * u]], colour[edge_of[3 * u + 1]], colour[edge_of[3 * u + 2]]);
                raw[slot] = raw[slot].clone() + prod;
            }
        }
        if !advance(&mut colour, n) {
            break;
        }
    }
    let circles = T::from_usize(n.pow(g.loops())).unwrap();
    let raw: Vec<T> = raw.into_iter().map(|x| x * circles.clone()).collect();
    let sym = VertexModel::project_c3(n, &raw).expect("length matches");
    GradientTensor { n, entries: sym.entries().to_vec() }
}

fn advance(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}
