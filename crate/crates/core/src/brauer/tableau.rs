use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{build_groups, check_k, BrauerError, Matching, MatchingVector, Perm};
use crate::rational::Rational;

/// The Young tableau of shape `(2k+4, 4, …, 4)` used to build the
/// eigenvector; entries are 0-based points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub k: usize,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// First row `1 1̄ 2 2̄ 3 3̄ 6 6̄ … 3k 3k̄`, then rows
    /// `3j−2, 3j−2‾, 3j−1, 3j−1‾` for `j = 2..k`, where `ī = 3k + i`.
    pub fn new(k: usize) -> Result<Tableau, BrauerError> {
        check_k(k)?;
        let pt = |i: usize| i - 1;
        let bar = |i: usize| 3 * k + i - 1;
        let mut first = Vec::new();
        for i in [1, 2, 3].into_iter().chain((2..=k).map(|j| 3 * j)) {
            first.push(pt(i));
            first.push(bar(i));
        }
        let mut rows = vec![first];
        for j in 2..=k {
            rows.push(vec![pt(3 * j - 2), bar(3 * j - 2), pt(3 * j - 1), bar(3 * j - 1)]);
        }
        Ok(Tableau { k, rows })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Column `K_{c+1}`, `c < 4`; later columns are singletons.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[c]).collect()
    }

    fn points(&self) -> usize {
        6 * self.k
    }

    /// All permutations of `set` (as a sub-permutation of `0..n`).
    fn symmetric_on(set: &[usize], n: usize) -> Vec<Perm> {
        set.iter()
            .copied()
            .permutations(set.len())
            .map(|img| {
                let mut images: Vec<usize> = (0..n).collect();
                for (&from, to) in set.iter().zip(img) {
                    images[from] = to;
                }
                Perm::from_images(&images)
            })
            .collect()
    }

    fn product(groups: Vec<Vec<Perm>>, n: usize) -> Vec<Perm> {
        groups.into_iter().fold(vec![Perm::identity(n)], |acc, g| {
            acc.iter().flat_map(|a| g.iter().map(move |b| a.compose(b))).collect()
        })
    }

    /// `C = C₁C₂C₃C₄` with signs.
    pub fn column_group(&self) -> Vec<(Perm, i64)> {
        let groups = (0..4).map(|c| Self::symmetric_on(&self.column(c), self.points())).collect();
        Self::product(groups, self.points()).into_iter().map(|p| (p, p.sign())).collect()
    }

    /// `R = R₁⋯R_k`.
    pub fn row_group(&self) -> Vec<Perm> {
        let groups = self.rows.iter().map(|r| Self::symmetric_on(r, self.points())).collect();
        Self::product(groups, self.points())
    }
}

/// `v = Σ_{c∈C, r∈R} sgn(c) c r·F`, computed as `Σ_c sgn(c) c·(Σ_r r·F)`.
pub fn hanlon_wales_vector(k: usize) -> Result<MatchingVector, BrauerError> {
    let t = Tableau::new(k)?;
    let f = Matching::f(k);
    let row_sum: HashMap<Matching, i128> = t
        .row_group()
        .par_iter()
        .fold(HashMap::new, |mut acc, r| {
            *acc.entry(f.act(r)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (m, c) in b {
                *a.entry(m).or_insert(0) += c;
            }
            a
        });
    let mut v: HashMap<Matching, i128> = HashMap::new();
    for (c, sign) in t.column_group() {
        for (m, n) in &row_sum {
            *v.entry(m.act(&c)).or_insert(0) += sign as i128 * n;
        }
    }
    Ok(MatchingVector::from_integers(k, v))
}

/// `u = Σ_{q∈Q} q·v` together with its coefficient `u_F`.
pub fn averaged_vector(k: usize) -> Result<(MatchingVector, Rational), BrauerError> {
    let v = hanlon_wales_vector(k)?;
    let q = build_groups(k)?;
    let u = v.sum_over(&q.elements)?;
    let u_f = u.get(&Matching::f(k));
    Ok((u, u_f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::all_matchings;
    use crate::rational::int;

    #[test]
    fn tableau_shape_and_filling() {
        let t1 = Tableau::new(1).unwrap();
        assert_eq!(t1.rows, vec![vec![0, 3, 1, 4, 2, 5]]);
        let t2 = Tableau::new(2).unwrap();
        assert_eq!(t2.shape(), vec![8, 4]);
        // 1 1̄ 2 2̄ 3 3̄ 6 6̄ / 4 4̄ 5 5̄ with ī = 6 + i
        assert_eq!(t2.rows[0], vec![0, 6, 1, 7, 2, 8, 5, 11]);
        assert_eq!(t2.rows[1], vec![3, 9, 4, 10]);
        let mut all: Vec<usize> = t2.rows.concat();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        assert_eq!(t2.column_group().len(), 16);
        assert_eq!(t2.row_group().len(), 40320 * 24);
    }

    #[test]
    fn k1_vector_is_uniform() {
        // C is trivial and R = S_6, so every matching is hit |stabiliser| = 48 times
        let v = hanlon_wales_vector(1).unwrap();
        assert_eq!(v.support(), 15);
        for m in all_matchings(1).unwrap() {
            assert_eq!(v.get(&m), int(48));
        }
        let (u, u_f) = averaged_vector(1).unwrap();
        assert_eq!(u_f, int(18 * 48));
        let q = build_groups(1).unwrap();
        for p in &q.elements {
            assert_eq!(u.act(p), u);
        }
    }

    #[test]
    fn k2_vector_alternates_under_columns() {
        let t = Tableau::new(2).unwrap();
        let v = hanlon_wales_vector(2).unwrap();
        assert!(!v.is_zero());
        assert!(v.get(&Matching::f(2)) > int(0));
        for (c, sign) in t.column_group() {
            assert_eq!(v.act(&c), v.scale(&int(sign)));
        }
    }
}
