//! Finite principal submatrices of the join matrices `M_{f,k}` and an exact
//! positive-semidefiniteness decision with checkable certificates.

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{k_join, k_join_bilinear, FormalSum};
use crate::brauer::{mu, MAX_K};
use crate::rational::{pow, to_pq, Rational};
use crate::ribbon::{CanonicalCode, RibbonGraph};
use crate::vmodel::{gradient, inner_product_w, w_dimension, Evaluator, VertexModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("μ-probe needs k = {requested} > {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("join is not a polynomial in the vertexless loop")]
    NotCirclePolynomial,
}

/// `(f(G ∨_k H))_{G,H}` over a sorted list of graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub graphs: Vec<CanonicalCode>,
    pub k: usize,
    pub entries: Vec<Vec<Rational>>,
}

/// Sorts and deduplicates `graphs` by canonical code.
fn sorted_codes(graphs: &[RibbonGraph]) -> Vec<CanonicalCode> {
    let mut codes: Vec<CanonicalCode> = graphs.iter().map(RibbonGraph::canonical_code).collect();
    codes.sort();
    codes.dedup();
    codes
}

/// Builds the Gram matrix for an arbitrary evaluation of formal sums.
pub fn build_gram_by<F>(graphs: &[RibbonGraph], k: usize, eval: F) -> GramMatrix
where
    F: Fn(&FormalSum) -> Rational + Sync,
{
    let codes = sorted_codes(graphs);
    let gs: Vec<RibbonGraph> = codes.iter().map(CanonicalCode::to_graph).collect();
    let n = gs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<Rational> = pairs.par_iter().map(|&(i, j)| eval(&k_join(&gs[i], &gs[j], k))).collect();
    let mut entries = vec![vec![Rational::zero(); n]; n];
    for ((i, j), v) in pairs.into_iter().zip(values) {
        entries[j][i] = v.clone();
        entries[i][j] = v;
    }
    GramMatrix { graphs: codes, k, entries }
}

/// `M_{f_c,k}` restricted to `graphs`.
pub fn build_gram(c: &VertexModel, graphs: &[RibbonGraph], k: usize) -> GramMatrix {
    let eval = Evaluator::new(c);
    build_gram_by(graphs, k, |s| eval.sum(s))
}

/// One elimination step: `M = Σ_t d_t ℓ_t ℓ_tᵀ` with `ℓ_t[index] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pivot {
    pub index: usize,
    pub d: Rational,
    pub column: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsdOutcome {
    /// Positive pivots whose rank-one terms sum to the matrix.
    Certificate { pivots: Vec<Pivot> },
    /// A vector with `wᵀMw = value < 0`.
    Refutation { w: Vec<Rational>, value: Rational },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Certificate { .. })
    }

    /// Number of positive pivots; the rank when PSD.
    pub fn rank(&self) -> Option<usize> {
        match self {
            PsdOutcome::Certificate { pivots } => Some(pivots.len()),
            PsdOutcome::Refutation { .. } => None,
        }
    }

    /// Re-checks the outcome against `m` by exact arithmetic.
    pub fn verify(&self, m: &[Vec<Rational>]) -> bool {
        match self {
            PsdOutcome::Refutation { w, value } => quadratic_form(m, w) == *value && value.is_negative(),
            PsdOutcome::Certificate { pivots } => {
                let n = m.len();
                if pivots.iter().any(|p| !p.d.is_positive() || p.column.len() != n || p.column[p.index] != one()) {
                    return false;
                }
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let s: Rational = pivots.iter().map(|p| &p.d * &p.column[i] * &p.column[j]).sum();
                        s == m[i][j]
                    })
                })
            }
        }
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// `wᵀ M w`.
pub fn quadratic_form(m: &[Vec<Rational>], w: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        if w[i].is_zero() {
            continue;
        }
        for (j, x) in row.iter().enumerate() {
            if !w[j].is_zero() && !x.is_zero() {
                s += &w[i] * x * &w[j];
            }
        }
    }
    s
}

/// Exact PSD decision by symmetric elimination, pivoting on the largest
/// remaining diagonal entry.
///
/// The active block is kept as `S_ij = b_iᵀ M b_j`, so whenever a negative
/// diagonal or an unbalanced zero-diagonal pair appears, a refuting vector
/// is already at hand.
pub fn psd_check(m: &[Vec<Rational>]) -> Result<PsdOutcome, PositivityError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PositivityError::NotSquare);
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j] != m[j][i] {
                return Err(PositivityError::NotSymmetric(i, j));
            }
        }
    }
    let mut s: Vec<Vec<Rational>> = m.to_vec();
    let mut b: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { one() } else { Rational::zero() }).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let refute = |w: Vec<Rational>| {
        let value = quadratic_form(m, &w);
        debug_assert!(value.is_negative());
        Ok(PsdOutcome::Refutation { w, value })
    };
    while !active.is_empty() {
        let &p = active.iter().max_by(|&&x, &&y| s[x][x].cmp(&s[y][y]).then(y.cmp(&x))).unwrap();
        let d = s[p][p].clone();
        if d.is_negative() {
            return refute(b[p].clone());
        }
        if d.is_zero() {
            // every remaining diagonal is zero: any nonzero entry refutes
            for &i in &active {
                for &j in &active {
                    if i != j && !s[i][j].is_zero() {
                        let sign = if s[i][j].is_positive() { -one() } else { one() };
                        let w: Vec<Rational> = b[i].iter().zip(&b[j]).map(|(x, y)| x + &sign * y).collect();
                        return refute(w);
                    }
                }
            }
            break;
        }
        active.retain(|&i| i != p);
        let mut column = vec![Rational::zero(); n];
        column[p] = one();
        for &i in &active {
            column[i] = &s[i][p] / &d;
        }
        for &i in &active {
            if column[i].is_zero() {
                continue;
            }
            for &j in &active {
                let delta = &column[i] * &s[p][j];
                s[i][j] -= delta;
            }
            let bp = b[p].clone();
            for (x, y) in b[i].iter_mut().zip(&bp) {
                *x -= &column[i] * y;
            }
        }
        pivots.push(Pivot { index: p, d, column });
    }
    Ok(PsdOutcome::Certificate { pivots })
}

/// Exact rank by Gaussian elimination.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckMismatch {
    pub g: String,
    pub h: String,
    pub gradient_product: String,
    pub gram_entry: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub pairs: usize,
    pub mismatches: Vec<CrosscheckMismatch>,
    pub rank: usize,
    pub w_dimension: usize,
    pub ok: bool,
}

/// Compares `⟨∇f_c(G), ∇f_c(H)⟩_W` with `f_c(G ∨₁ H)` on every pair, and
/// bounds the rank of `M_{f,1}` by `dim W`.
pub fn gradient_gram_crosscheck(c: &VertexModel, graphs: &[RibbonGraph]) -> CrosscheckReport {
    let gram = build_gram(c, graphs, 1);
    let grads: Vec<_> = gram.graphs.par_iter().map(|code| gradient(&code.to_graph(), c)).collect();
    let n = gram.graphs.len();
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in i..n {
            let g = inner_product_w(&grads[i], &grads[j]).expect("same dimension");
            if g != gram.entries[i][j] {
                mismatches.push(CrosscheckMismatch {
                    g: gram.graphs[i].to_string(),
                    h: gram.graphs[j].to_string(),
                    gradient_product: to_pq(&g),
                    gram_entry: to_pq(&gram.entries[i][j]),
                });
            }
        }
    }
    let rank = rank(&gram.entries);
    let w_dimension = w_dimension(c.n());
    CrosscheckReport {
        pairs: n * (n + 1) / 2,
        ok: mismatches.is_empty() && rank <= w_dimension,
        mismatches,
        rank,
        w_dimension,
    }
}

/// `f` on a pure `○`-polynomial with `f(○) = x`.
pub fn evaluate_circle_polynomial(s: &FormalSum, x: &Rational) -> Result<Rational, PositivityError> {
    let coeffs = s.as_circle_polynomial().ok_or(PositivityError::NotCirclePolynomial)?;
    Ok(coeffs.iter().enumerate().map(|(m, c)| c * pow(x, m as u32)).sum())
}

/// `γ = θ − θ_rev`.
pub fn theta_difference() -> FormalSum {
    &FormalSum::graph(&RibbonGraph::theta()) - &FormalSum::graph(&RibbonGraph::theta_rev())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuProbe {
    pub k: usize,
    pub value: String,
    pub nonnegative: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub f_circle: Rational,
    /// `γ ∨₂ γ` as coefficients of `○^0, ○^1, …`.
    pub join_polynomial: Vec<Rational>,
    /// `f(γ ∨₂ γ)`.
    pub obstruction: Rational,
    /// The `{θ, θ_rev}` block of `M_{f,2}` and its PSD outcome.
    pub gram: GramMatrix,
    pub psd: PsdOutcome,
    /// `μ(f(○))` at `k = ⌈f(○)⌉ + 1`, when that `k` is within the cap.
    pub mu: Option<MuProbe>,
}

impl ProbeReport {
    pub fn refuted(&self) -> bool {
        !self.psd.is_psd()
    }
}

fn ceil(x: &Rational) -> i64 {
    use num::ToPrimitive;
    x.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// `μ(x)` at `k = ⌈x⌉ + 1`.
pub fn mu_probe(x: &Rational) -> Result<MuProbe, PositivityError> {
    let k = ceil(x).saturating_add(1);
    if k < 1 || k as usize > MAX_K {
        return Err(PositivityError::CapExceeded { requested: k.max(0) as usize, cap: MAX_K });
    }
    let value = mu(x, k as usize);
    Ok(MuProbe { k: k as usize, nonnegative: !value.is_negative(), value: to_pq(&value) })
}

/// Tests the multiplicative candidate with `f(○) = x` against the
/// `θ`-block of the 2-join matrix.
pub fn circle_integrality_probe(x: &Rational) -> Result<ProbeReport, PositivityError> {
    let gamma = theta_difference();
    let joined = k_join_bilinear(&gamma, &gamma, 2);
    let join_polynomial = joined.as_circle_polynomial().ok_or(PositivityError::NotCirclePolynomial)?;
    let obstruction = evaluate_circle_polynomial(&joined, x)?;
    let graphs = [RibbonGraph::theta(), RibbonGraph::theta_rev()];
    let gram = build_gram_by(&graphs, 2, |s| evaluate_circle_polynomial(s, x).expect("2-vertex 2-joins close up"));
    let psd = psd_check(&gram.entries)?;
    Ok(ProbeReport { f_circle: x.clone(), join_polynomial, obstruction, gram, psd, mu: mu_probe(x).ok() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::vmodel::structure_tensor_so3;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn diagonal_is_psd() {
        let m = vec![vec![frac(1, 2), int(0)], vec![int(0), int(3)]];
        let out = psd_check(&m).unwrap();
        assert!(out.verify(&m));
        assert_eq!(out.rank(), Some(2));
    }

    #[test]
    fn antidiagonal_is_refuted() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        match psd_check(&m).unwrap() {
            PsdOutcome::Refutation { w, value } => {
                assert_eq!(w, vec![int(1), int(-1)]);
                assert_eq!(value, int(-2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_after_elimination_is_refuted() {
        let m = mat(&[&[1, 2], &[2, 1]]);
        let out = psd_check(&m).unwrap();
        assert!(!out.is_psd());
        assert!(out.verify(&m));
        assert_eq!(psd_check(&mat(&[&[1, 2], &[3, 1]])), Err(PositivityError::NotSymmetric(0, 1)));
    }

    #[test]
    fn singular_psd_has_short_certificate() {
        let m = mat(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        let out = psd_check(&m).unwrap();
        assert!(out.verify(&m));
        assert_eq!(out.rank(), Some(1));
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn small_so3_gram_is_psd() {
        let graphs = [
            RibbonGraph::theta(),
            RibbonGraph::theta_rev(),
            RibbonGraph::theta().disjoint_union(&RibbonGraph::circle_power(1)),
        ];
        let g = build_gram(&structure_tensor_so3(), &graphs, 1);
        let out = psd_check(&g.entries).unwrap();
        assert!(out.verify(&g.entries));
    }

    #[test]
    fn k0_gram_is_rank_one() {
        let graphs: Vec<RibbonGraph> = crate::weights::default_corpus();
        let g = build_gram(&structure_tensor_so3(), &graphs, 0);
        let out = psd_check(&g.entries).unwrap();
        assert!(out.verify(&g.entries));
        assert!(out.rank().unwrap() <= 1);
    }

    #[test]
    fn probe_at_zero_and_two() {
        let p0 = circle_integrality_probe(&int(0)).unwrap();
        assert_eq!(p0.obstruction, int(0));
        assert!(!p0.refuted());
        let p2 = circle_integrality_probe(&int(2)).unwrap();
        assert_eq!(p2.obstruction, int(0));
        assert!(p2.mu.is_none());
        assert_eq!(mu_probe(&int(2)), Err(PositivityError::CapExceeded { requested: 3, cap: 2 }));
        assert_eq!(mu_probe(&frac(1, 2)).unwrap().k, 2);
    }

    #[test]
    fn non_integer_circle_is_refuted() {
        let p = circle_integrality_probe(&frac(3, 2)).unwrap();
        assert!(p.obstruction.is_negative());
        assert!(p.refuted());
        assert!(p.psd.verify(&p.gram.entries));
    }
}
