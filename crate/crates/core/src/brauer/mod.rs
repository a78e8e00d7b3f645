//! Perfect matchings of `[6k]`, the groups acting on them, and the
//! eigenvector machinery behind the integrality of `f(○)`.
//!
//! Points are 0-based: the element `i ∈ [6k]` is point `i - 1`,
//! so the triples collapsed to vertices are `{3j, 3j+1, 3j+2}`.

mod groups;
mod space;
mod tableau;
mod verify;

pub use groups::{build_groups, zeta, GroupChecks, GroupQ};
pub use space::{apply_a, apply_aq, ComponentProfile, MatchingVector};
pub use tableau::{averaged_vector, hanlon_wales_vector, Tableau};
pub use verify::{verify, vee_union_check, vee_union_check_with, BrauerMode, BrauerReport, EigenCheck, Residual, SAMPLED_COORDINATES};

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;
use crate::ribbon::RibbonGraph;

/// Largest supported `k`; `|ℳ| = (6k−1)!!` grows too fast beyond it.
pub const MAX_K: usize = 2;
pub const MAX_POINTS: usize = 6 * MAX_K;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("k = {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("size mismatch: {0} vs {1} points")]
    SizeMismatch(usize, usize),
    #[error("not a perfect matching: {0}")]
    NotAMatching(String),
    #[error("deep-mode budget of {0} s exceeded")]
    BudgetExceeded(u64),
    #[error("coefficients too large for exact integer accumulation")]
    Overflow,
}

pub(crate) fn check_k(k: usize) -> Result<(), BrauerError> {
    if k == 0 {
        return Err(BrauerError::ZeroK);
    }
    if k > MAX_K {
        return Err(BrauerError::CapExceeded { requested: k, cap: MAX_K });
    }
    Ok(())
}

/// A permutation of `0..len`, `len ≤ MAX_POINTS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    len: u8,
    p: [u8; MAX_POINTS],
}

impl Perm {
    pub fn identity(len: usize) -> Perm {
        let mut p = [0u8; MAX_POINTS];
        for (i, x) in p.iter_mut().enumerate().take(len) {
            *x = i as u8;
        }
        Perm { len: len as u8, p }
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: &[usize]) -> Perm {
        assert!(images.len() <= MAX_POINTS);
        let mut seen = [false; MAX_POINTS];
        let mut p = [0u8; MAX_POINTS];
        for (i, &x) in images.iter().enumerate() {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
            p[i] = x as u8;
        }
        Perm { len: images.len() as u8, p }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.p[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut p = [0u8; MAX_POINTS];
        for i in 0..self.len() {
            p[i] = self.p[other.p[i] as usize];
        }
        Perm { len: self.len, p }
    }

    pub fn inverse(&self) -> Perm {
        let mut p = [0u8; MAX_POINTS];
        for i in 0..self.len() {
            p[self.p[i] as usize] = i as u8;
        }
        Perm { len: self.len, p }
    }

    pub fn sign(&self) -> i64 {
        let mut s = 1;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.p[i] > self.p[j] {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn images(&self) -> &[u8] {
        &self.p[..self.len()]
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

/// A perfect matching of `0..len`, stored as a partner array.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    len: u8,
    p: [u8; MAX_POINTS],
}

impl Matching {
    pub fn new(partner: &[usize]) -> Result<Matching, BrauerError> {
        if partner.len() > MAX_POINTS || partner.len() % 6 != 0 {
            return Err(BrauerError::NotAMatching(format!("{} points", partner.len())));
        }
        let mut p = [0u8; MAX_POINTS];
        for (i, &j) in partner.iter().enumerate() {
            if j >= partner.len() || j == i || partner[j] != i {
                return Err(BrauerError::NotAMatching(format!("point {}", i + 1)));
            }
            p[i] = j as u8;
        }
        Ok(Matching { len: partner.len() as u8, p })
    }

    /// The matching `F = {{i, ī}}` with `ī = i + 3k`.
    pub fn f(k: usize) -> Matching {
        let n = 6 * k;
        let partner: Vec<usize> = (0..n).map(|i| (i + 3 * k) % n).collect();
        Matching::new(&partner).expect("F is a matching")
    }

    pub fn points(&self) -> usize {
        self.len as usize
    }

    pub fn k(&self) -> usize {
        self.points() / 6
    }

    #[inline]
    pub fn partner(&self, i: usize) -> usize {
        self.p[i] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.p[..self.points()]
    }

    pub fn is_valid(&self) -> bool {
        (0..self.points()).all(|i| {
            let j = self.partner(i);
            j < self.points() && j != i && self.partner(j) == i
        })
    }

    /// `π·M = {π(e) : e ∈ M}`.
    pub fn act(&self, pi: &Perm) -> Matching {
        debug_assert_eq!(pi.len(), self.points());
        let mut p = [0u8; MAX_POINTS];
        for i in 0..self.points() {
            p[pi.apply(i)] = pi.p[self.p[i] as usize];
        }
        Matching { len: self.len, p }
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.points()).filter_map(move |i| (i < self.partner(i)).then(|| (i, self.partner(i))))
    }

    /// `G_M`: the triples `{3j, 3j+1, 3j+2}` become vertices with this
    /// cyclic order, and the matching becomes the edge set.
    pub fn collapse(&self) -> RibbonGraph {
        let partner: Vec<u32> = self.partners().iter().map(|&x| x as u32).collect();
        RibbonGraph::from_partner_unchecked(partner, 0)
    }
}

impl fmt::Display for Matching {
    /// 1-based pairs, e.g. `1-4 2-5 3-6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().map(|(a, b)| format!("{}-{}", a + 1, b + 1)).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({self})")
    }
}

/// All perfect matchings of `[6k]`, lexicographic in the partner array.
pub fn all_matchings(k: usize) -> Result<Vec<Matching>, BrauerError> {
    check_k(k)?;
    fn rec(p: &mut [usize], out: &mut Vec<Matching>) {
        match p.iter().position(|&x| x == usize::MAX) {
            None => out.push(Matching::new(p).expect("complete pairing")),
            Some(i) => {
                for j in i + 1..p.len() {
                    if p[j] == usize::MAX {
                        p[i] = j;
                        p[j] = i;
                        rec(p, out);
                        p[i] = usize::MAX;
                        p[j] = usize::MAX;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; 6 * k], &mut out);
    out.sort();
    Ok(out)
}

/// `c(M, N)`: connected components of `M ∪ N`, i.e. alternating cycles.
pub fn component_count(m: &Matching, n: &Matching) -> Result<usize, BrauerError> {
    if m.points() != n.points() {
        return Err(BrauerError::SizeMismatch(m.points(), n.points()));
    }
    Ok(count_cycles(m, n))
}

#[inline]
pub(crate) fn count_cycles(m: &Matching, n: &Matching) -> usize {
    let mut seen: u32 = 0;
    let mut cycles = 0;
    for start in 0..m.points() {
        if seen & (1 << start) != 0 {
            continue;
        }
        cycles += 1;
        let mut x = start;
        loop {
            let y = m.partner(x);
            seen |= (1 << x) | (1 << y);
            x = n.partner(y);
            if x == start {
                break;
            }
        }
    }
    cycles
}

/// `μ(x) = ∏_{i<k} (x−i)(x−i+2)(x+2i+4)`.
pub fn mu(x: &Rational, k: usize) -> Rational {
    let mut out = Rational::from_integer(1.into());
    for i in 0..k as i64 {
        let r = |c: i64| x + Rational::from_integer(c.into());
        out *= r(-i) * r(2 - i) * r(2 * i + 4);
    }
    out
}
