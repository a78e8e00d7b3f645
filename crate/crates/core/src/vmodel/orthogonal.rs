use num::Signed;

use super::{flat, triples, ModelError, Scalar, VertexModel};
use crate::rational::{to_f64, Rational};

/// Largest entry of `UᵀU − I` accepted in float mode.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

fn gram_deviation<T: Scalar>(u: &[Vec<T>], n: usize, abs: impl Fn(&T) -> f64) -> Result<f64, ModelError> {
    if u.len() != n || u.iter().any(|row| row.len() != n) {
        let bad = u.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(u.len());
        return Err(ModelError::DimensionMismatch(n, bad));
    }
    let mut worst = 0f64;
    for a in 0..n {
        for b in 0..n {
            let mut s = T::zero();
            for row in u {
                s = s + row[a].clone() * row[b].clone();
            }
            if a == b {
                s = s - T::one();
            }
            worst = worst.max(abs(&s));
        }
    }
    Ok(worst)
}

/// `c'_{ijk} = Σ U_{ia} U_{jb} U_{kc} c_{abc}`, applied one mode at a time.
fn transform<T: Scalar>(c: &VertexModel<T>, u: &[Vec<T>]) -> Vec<T> {
    let n = c.n();
    let mut cur = c.entries().to_vec();
    for mode in 0..3 {
        let mut next = vec![T::zero(); cur.len()];
        for (i, j, k) in triples(n) {
            let idx = [i, j, k];
            let mut s = T::zero();
            for a in 0..n {
                let mut src = idx;
                src[mode] = a;
                let w = &cur[flat(n, src[0], src[1], src[2])];
                if !w.is_zero() {
                    s = s + u[idx[mode]][a].clone() * w.clone();
                }
            }
            next[flat(n, i, j, k)] = s;
        }
        cur = next;
    }
    cur
}

/// Exact action of an orthogonal matrix; `UᵀU` must equal `I` exactly.
pub fn apply_orthogonal(c: &VertexModel<Rational>, u: &[Vec<Rational>]) -> Result<VertexModel<Rational>, ModelError> {
    let dev = gram_deviation(u, c.n(), |x| to_f64(&x.abs()))?;
    if dev != 0.0 {
        return Err(ModelError::NotOrthogonal(dev));
    }
    VertexModel::new(c.n(), transform(c, u))
}

/// Float action; the result is re-averaged over cyclic shifts so that
/// rounding cannot break invariance.
pub fn apply_orthogonal_f64(c: &VertexModel<f64>, u: &[Vec<f64>]) -> Result<VertexModel<f64>, ModelError> {
    let dev = gram_deviation(u, c.n(), |x| x.abs())?;
    if dev > ORTHOGONALITY_TOLERANCE {
        return Err(ModelError::NotOrthogonal(dev));
    }
    VertexModel::project_c3(c.n(), &transform(c, u))
}
