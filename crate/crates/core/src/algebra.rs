//! Formal sums of cubic cyclic graphs and the k-join.
//!
//! A [`FormalSum`] is an element of the free commutative algebra on connected
//! 3-graphs: monomials are disjoint unions, keyed by canonical code, with
//! exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, binomial, factorial, parse_rational, to_pq, Rational};
use crate::ribbon::{CanonicalCode, CodeParseError, RibbonGraph};

#[derive(Debug, Error)]
pub enum FormalSumError {
    #[error("bad monomial key: {0}")]
    Code(#[from] CodeParseError),
    #[error(transparent)]
    Rational(#[from] rational::RationalParseError),
    #[error("formal sum JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, String>", into = "BTreeMap<String, String>")]
pub struct FormalSum {
    terms: BTreeMap<CanonicalCode, Rational>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    /// The empty graph, the multiplicative unit.
    pub fn one() -> Self {
        FormalSum::monomial(CanonicalCode::empty())
    }

    pub fn monomial(code: CanonicalCode) -> Self {
        FormalSum::term(code, Rational::one())
    }

    pub fn term(code: CanonicalCode, coeff: Rational) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(code, coeff);
        s
    }

    pub fn graph(g: &RibbonGraph) -> Self {
        FormalSum::monomial(g.canonical_code())
    }

    /// `Σ coeffs[m] ○^m`.
    pub fn circle_polynomial(coeffs: &[Rational]) -> Self {
        let mut s = FormalSum::zero();
        for (m, c) in coeffs.iter().enumerate() {
            s.add_term(CanonicalCode::circle_power(m as u32), c.clone());
        }
        s
    }

    pub fn add_term(&mut self, code: CanonicalCode, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(code) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalCode, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, code: &CanonicalCode) -> Rational {
        self.terms.get(code).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> FormalSum {
        if q.is_zero() {
            return FormalSum::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * q)).collect(),
        }
    }

    /// Coefficients of a pure `○`-polynomial, lowest degree first; `None` if
    /// some monomial has vertices.
    pub fn as_circle_polynomial(&self) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (code, c) in &self.terms {
            if !code.is_circle_power() {
                return None;
            }
            let m = code.loops() as usize;
            if out.len() <= m {
                out.resize(m + 1, Rational::zero());
            }
            out[m] = c.clone();
        }
        Some(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("formal sums always serialize")
    }

    pub fn from_json(s: &str) -> Result<FormalSum, FormalSumError> {
        Ok(serde_json::from_str(s)?)
    }
}

impl TryFrom<BTreeMap<String, String>> for FormalSum {
    type Error = FormalSumError;

    fn try_from(map: BTreeMap<String, String>) -> Result<Self, Self::Error> {
        let mut s = FormalSum::zero();
        for (k, v) in map {
            s.add_term(k.parse()?, parse_rational(&v)?);
        }
        Ok(s)
    }
}

impl From<FormalSum> for BTreeMap<String, String> {
    fn from(s: FormalSum) -> Self {
        s.terms.iter().map(|(k, v)| (k.to_string(), to_pq(v))).collect()
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (code, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{code}]")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a FormalSum> for &'a FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (c, v) in &rhs.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a FormalSum> for &'a FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (c, v) in &rhs.terms {
            out.add_term(c.clone(), -v.clone());
        }
        out
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        self.scale(&-Rational::one())
    }
}

/// Product in the graph algebra: disjoint union on monomials.
impl<'a> Mul<&'a FormalSum> for &'a FormalSum {
    type Output = FormalSum;
    fn mul(self, rhs: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.merge(b), x * y);
            }
        }
        out
    }
}

/// All ordered `k`-tuples of distinct elements of `0..n`.
pub fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut vec![false; n], &mut Vec::new(), &mut out);
    }
    out
}

/// Deletes the selected vertices of `union` and splices their half-edges
/// along `link`, an involution between half-edges of deleted vertices.
/// Strands passing through several deleted vertices are followed to the
/// end; strands closing up among deleted vertices become vertexless loops.
pub(crate) fn splice(union: &RibbonGraph, deleted: &[bool], link: &[u32]) -> RibbonGraph {
    let nv = union.vertex_count();
    let mut new_index = vec![u32::MAX; nv];
    let mut kept = 0u32;
    for v in 0..nv {
        if !deleted[v] {
            new_index[v] = kept;
            kept += 1;
        }
    }
    let relabel = |h: usize| 3 * new_index[h / 3] + (h % 3) as u32;
    let mut partner = vec![u32::MAX; 3 * kept as usize];
    let mut visited = vec![false; union.half_edge_count()];
    for d in 0..union.half_edge_count() {
        if deleted[d / 3] || partner[relabel(d) as usize] != u32::MAX {
            continue;
        }
        let mut x = union.partner(d);
        while deleted[x / 3] {
            visited[x] = true;
            let y = link[x] as usize;
            visited[y] = true;
            x = union.partner(y);
        }
        partner[relabel(d) as usize] = relabel(x);
        partner[relabel(x) as usize] = relabel(d);
    }
    let mut circles = 0;
    for start in 0..union.half_edge_count() {
        if !deleted[start / 3] || visited[start] {
            continue;
        }
        let mut x = start;
        loop {
            visited[x] = true;
            let y = link[x] as usize;
            visited[y] = true;
            x = union.partner(y);
            if x == start {
                break;
            }
        }
        circles += 1;
    }
    RibbonGraph::from_partner_unchecked(partner, union.loops() + circles)
}

/// The k-join restricted to tuples `(v_1..v_k)` of vertices of `h` accepted
/// by `accept`. Vertex selections on both sides are ordered tuples of
/// distinct vertices; each selected pair `(u_i, v_i)` is replaced by one of
/// the three reconnections joining slot `s` of `u_i` to slot `s + t` of
/// `v_i` (`t = 0, 1, 2`), each with weight 1/3.
pub fn k_join_filtered<F>(g: &RibbonGraph, h: &RibbonGraph, k: usize, accept: F) -> FormalSum
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let union = g.disjoint_union(h);
    let off = g.vertex_count();
    let us = arrangements(g.vertex_count(), k);
    let vs: Vec<Vec<usize>> = arrangements(h.vertex_count(), k)
        .into_iter()
        .filter(|t| accept(t))
        .collect();
    if us.is_empty() || vs.is_empty() {
        return FormalSum::zero();
    }
    let shifts = 3usize.pow(k as u32);
    let counts = us
        .par_iter()
        .fold(HashMap::<CanonicalCode, u64>::new, |mut acc, u_tuple| {
            let mut deleted = vec![false; union.vertex_count()];
            let mut link = vec![u32::MAX; union.half_edge_count()];
            for v_tuple in &vs {
                deleted.iter_mut().for_each(|d| *d = false);
                for (&u, &v) in u_tuple.iter().zip(v_tuple) {
                    deleted[u] = true;
                    deleted[off + v] = true;
                }
                for code in 0..shifts {
                    let mut t = code;
                    for (&u, &v) in u_tuple.iter().zip(v_tuple) {
                        let shift = t % 3;
                        t /= 3;
                        for s in 0..3 {
                            let a = 3 * u + s;
                            let b = 3 * (off + v) + (s + shift) % 3;
                            link[a] = b as u32;
                            link[b] = a as u32;
                        }
                    }
                    let joined = splice(&union, &deleted, &link);
                    *acc.entry(joined.canonical_code()).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (c, n) in b {
                *a.entry(c).or_insert(0) += n;
            }
            a
        });
    let weight = Rational::new(BigInt::one(), BigInt::from(shifts));
    let mut out = FormalSum::zero();
    for (code, n) in counts {
        out.add_term(code, &weight * Rational::from_integer(BigInt::from(n)));
    }
    out
}

/// `G ∨_k H`; zero when either graph has fewer than `k` vertices.
pub fn k_join(g: &RibbonGraph, h: &RibbonGraph, k: usize) -> FormalSum {
    k_join_filtered(g, h, k, |_| true)
}

/// Bilinear extension of [`k_join`] to formal sums.
pub fn k_join_bilinear(a: &FormalSum, b: &FormalSum, k: usize) -> FormalSum {
    let mut out = FormalSum::zero();
    for (ca, qa) in a.terms() {
        let ga = ca.to_graph();
        for (cb, qb) in b.terms() {
            let joined = k_join(&ga, &cb.to_graph(), k);
            out = &out + &joined.scale(&(qa * qb));
        }
    }
    out
}

/// `G ⊻_k θ^i`: the join with `θ^i`, keeping only selections that use at
/// least one vertex of every theta component.
pub fn underline_join(g: &RibbonGraph, i: usize, k: usize) -> FormalSum {
    let thetas = RibbonGraph::theta_power(i);
    k_join_filtered(g, &thetas, k, |vs| {
        (0..i).all(|comp| vs.iter().any(|&v| v / 2 == comp))
    })
}

/// Both sides of the k-join lemma:
/// `C(n,k) G = 2^{-k} k!^{-2} Σ_i (-1)^{k-i} C(k,i) (G ∨_k θ^i) θ^{k-i}`.
pub fn kjoin_lemma_check(g: &RibbonGraph, k: usize) -> (FormalSum, FormalSum) {
    let n = g.vertex_count();
    let lhs = FormalSum::graph(g).scale(&Rational::from_integer(binomial(n, k)));
    let mut sum = FormalSum::zero();
    for i in 0..=k {
        let joined = k_join(g, &RibbonGraph::theta_power(i), k);
        let term = &joined * &FormalSum::graph(&RibbonGraph::theta_power(k - i));
        let sign: i64 = if (k - i) % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::from_integer(binomial(k, i) * BigInt::from(sign));
        sum = &sum + &term.scale(&coeff);
    }
    let kf = factorial(k);
    let norm = Rational::new(BigInt::one(), BigInt::from(2).pow(k as u32) * &kf * &kf);
    (lhs, sum.scale(&norm))
}
