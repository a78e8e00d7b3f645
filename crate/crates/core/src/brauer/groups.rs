use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{check_k, BrauerError, Perm};

/// `Q = BD`: independent cyclic rotations inside the triples composed with
/// permutations of whole triples.
#[derive(Debug, Clone)]
pub struct GroupQ {
    pub k: usize,
    /// Sorted, duplicate-free.
    pub elements: Vec<Perm>,
    pub b_order: usize,
    pub d_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupChecks {
    pub order: usize,
    pub b_order: usize,
    pub d_order: usize,
    /// `|B∩D| = 1`, i.e. `|Q| = |B|·|D|`.
    pub trivial_intersection: bool,
    pub has_identity: bool,
    pub closed: bool,
    pub commutes_with_zeta: bool,
}

/// `ζ` rotates every triple one step: `3j+s ↦ 3j+(s+1 mod 3)`.
pub fn zeta(k: usize) -> Perm {
    let images: Vec<usize> = (0..6 * k).map(|i| 3 * (i / 3) + (i % 3 + 1) % 3).collect();
    Perm::from_images(&images)
}

fn b_elements(k: usize) -> Vec<Perm> {
    let blocks = 2 * k;
    (0..3usize.pow(blocks as u32))
        .map(|code| {
            let images: Vec<usize> = (0..3 * blocks)
                .map(|i| {
                    let shift = code / 3usize.pow((i / 3) as u32) % 3;
                    3 * (i / 3) + (i % 3 + shift) % 3
                })
                .collect();
            Perm::from_images(&images)
        })
        .collect()
}

fn d_elements(k: usize) -> Vec<Perm> {
    let blocks = 2 * k;
    (0..blocks)
        .permutations(blocks)
        .map(|pi| {
            let images: Vec<usize> = (0..3 * blocks).map(|i| 3 * pi[i / 3] + i % 3).collect();
            Perm::from_images(&images)
        })
        .collect()
}

pub fn build_groups(k: usize) -> Result<GroupQ, BrauerError> {
    check_k(k)?;
    let b = b_elements(k);
    let d = d_elements(k);
    let set: BTreeSet<Perm> = b.iter().flat_map(|x| d.iter().map(move |y| x.compose(y))).collect();
    Ok(GroupQ { k, elements: set.into_iter().collect(), b_order: b.len(), d_order: d.len() })
}

impl GroupQ {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Exhaustive structural checks: identity, closure under composition,
    /// and commutation of every element with `ζ`.
    pub fn checks(&self) -> GroupChecks {
        let id = Perm::identity(6 * self.k);
        let z = zeta(self.k);
        let closed = self
            .elements
            .iter()
            .all(|x| self.elements.iter().all(|y| self.contains(&x.compose(y))));
        GroupChecks {
            order: self.order(),
            b_order: self.b_order,
            d_order: self.d_order,
            trivial_intersection: self.order() == self.b_order * self.d_order,
            has_identity: self.contains(&id),
            closed,
            commutes_with_zeta: self.elements.iter().all(|q| q.compose(&z) == z.compose(q)),
        }
    }
}
