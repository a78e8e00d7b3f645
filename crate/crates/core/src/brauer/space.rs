use std::collections::{BTreeMap, HashMap};

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{all_matchings, build_groups, check_k, count_cycles, BrauerError, Matching, Perm};
use crate::rational::Rational;

/// A sparse vector in `ℝ^ℳ` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingVector {
    k: usize,
    coeffs: BTreeMap<Matching, Rational>,
}

impl MatchingVector {
    pub fn zero(k: usize) -> Self {
        MatchingVector { k, coeffs: BTreeMap::new() }
    }

    pub fn basis(m: Matching) -> Self {
        let mut v = MatchingVector::zero(m.k());
        v.add(m, Rational::one());
        v
    }

    pub(crate) fn from_integers(k: usize, counts: impl IntoIterator<Item = (Matching, i128)>) -> Self {
        let coeffs = counts
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, Rational::from_integer(BigInt::from(c))))
            .collect();
        MatchingVector { k, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn add(&mut self, m: Matching, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn get(&self, m: &Matching) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of nonzero coordinates.
    pub fn support(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Matching, &Rational)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = MatchingVector::zero(self.k);
        for (m, c) in &self.coeffs {
            out.add(*m, c * q);
        }
        out
    }

    /// `P_π w`.
    pub fn act(&self, pi: &Perm) -> Self {
        MatchingVector {
            k: self.k,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.act(pi), c.clone())).collect(),
        }
    }

    /// `(L, w·L)` with `L` the lcm of the denominators, as machine integers.
    pub(crate) fn scaled_integers(&self) -> Result<(BigInt, Vec<(Matching, i128)>), BrauerError> {
        let l = self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let v = c.numer() * (&l / c.denom());
                v.to_i128().map(|v| (*m, v)).ok_or(BrauerError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((l, ints))
    }

    /// `Σ_{π ∈ perms} π·w`, accumulated in machine integers.
    pub fn sum_over(&self, perms: &[Perm]) -> Result<Self, BrauerError> {
        let (l, ints) = self.scaled_integers()?;
        let acc = perms
            .par_iter()
            .fold(HashMap::<Matching, i128>::new, |mut acc, p| {
                for (m, c) in &ints {
                    *acc.entry(m.act(p)).or_insert(0) += c;
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (m, c) in b {
                    *a.entry(m).or_insert(0) += c;
                }
                a
            });
        let out = MatchingVector::from_integers(self.k, acc);
        Ok(if l.is_one() { out } else { out.scale(&Rational::new(BigInt::one(), l)) })
    }
}

/// For each listed row `M`, the histogram `h_M[c] = Σ_{N: c(M,N)=c} w_N`
/// (scaled to integers), so that `(A(x)w)_M = Σ_c h_M[c] x^c / L` for every
/// `x` at once. `A(x)` itself is never formed.
#[derive(Debug, Clone)]
pub struct ComponentProfile {
    pub rows: Vec<Matching>,
    scale: BigInt,
    hist: Vec<Vec<i128>>,
}

impl ComponentProfile {
    pub fn compute(w: &MatchingVector, rows: Vec<Matching>) -> Result<Self, BrauerError> {
        let (scale, ints) = w.scaled_integers()?;
        let width = 3 * w.k() + 1;
        let hist = rows
            .par_iter()
            .map(|m| {
                let mut h = vec![0i128; width];
                for (n, c) in &ints {
                    h[count_cycles(m, n)] += c;
                }
                h
            })
            .collect();
        Ok(ComponentProfile { rows, scale, hist })
    }

    /// `(A(x)w)_M` for every row.
    pub fn at(&self, x: &Rational) -> Vec<Rational> {
        let inv = Rational::new(BigInt::one(), self.scale.clone());
        self.hist
            .iter()
            .map(|h| {
                // Horner from the top degree
                let mut acc = Rational::zero();
                for c in h.iter().rev() {
                    acc = acc * x + Rational::from_integer(BigInt::from(*c));
                }
                acc * &inv
            })
            .collect()
    }
}

/// `A(x) w` with `(A(x))_{M,N} = x^{c(M,N)}`.
pub fn apply_a(x: &Rational, w: &MatchingVector) -> Result<MatchingVector, BrauerError> {
    check_k(w.k())?;
    let profile = ComponentProfile::compute(w, all_matchings(w.k())?)?;
    let mut out = MatchingVector::zero(w.k());
    for (m, v) in profile.rows.iter().zip(profile.at(x)) {
        out.add(*m, v);
    }
    Ok(out)
}

/// `A^Q(x) w = A(x) Σ_{q∈Q} q·w`.
pub fn apply_aq(x: &Rational, w: &MatchingVector) -> Result<MatchingVector, BrauerError> {
    check_k(w.k())?;
    let q = build_groups(w.k())?;
    apply_a(x, &w.sum_over(&q.elements)?)
}
