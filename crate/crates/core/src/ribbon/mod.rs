//! Cubic cyclic (ribbon) graphs.
//!
//! A graph is stored in compact form: half-edge `h` belongs to vertex `h / 3`
//! at rotation slot `h % 3`, so the rotation at every vertex is
//! `(3v, 3v + 1, 3v + 2)` and all combinatorial data lives in the pairing.
//! Vertexless loops are a bare counter.

mod canon;
mod enumerate;
mod moves;

pub use canon::{CanonicalCode, CodeParseError};
pub use enumerate::{enumerate_connected, enumerate_cubic_cyclic, MAX_ENUMERATION_VERTICES};
pub use moves::IhxTriple;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("half-edge {0} is dangling (missing from the rotations or the pairing)")]
    DanglingHalfEdge(String),
    #[error("vertex {vertex} has {degree} half-edges, expected 3")]
    NonCubicVertex { vertex: String, degree: usize },
    #[error("pairing is not a fixed-point-free involution at half-edge {0}")]
    PairingNotInvolution(String),
    #[error("half-edge {0} appears in more than one rotation slot")]
    DuplicateHalfEdge(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("half-edge {0} belongs to a loop edge; the IHX move needs distinct endpoints")]
    LoopEdge(usize),
    #[error("enumeration cap exceeded: {requested} > {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// A cubic cyclic graph in compact half-edge form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    partner: Vec<u32>,
    loops: u32,
}

impl RibbonGraph {
    /// Builds a graph from a compact partner array, checking every invariant.
    pub fn new(partner: Vec<u32>, loops: u32) -> Result<Self, GraphError> {
        if partner.len() % 3 != 0 {
            return Err(GraphError::NonCubicVertex {
                vertex: (partner.len() / 3).to_string(),
                degree: partner.len() % 3,
            });
        }
        let g = RibbonGraph { partner, loops };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_partner_unchecked(partner: Vec<u32>, loops: u32) -> Self {
        debug_assert!(RibbonGraph::new(partner.clone(), loops).is_ok());
        RibbonGraph { partner, loops }
    }

    /// Builds a graph from rotations and edges given with arbitrary half-edge ids.
    ///
    /// Vertex `i` of the result is `rotations[i]`, with slot order as listed.
    pub fn from_rotations(
        rotations: &[Vec<u32>],
        edges: &[(u32, u32)],
        loops: u32,
    ) -> Result<Self, GraphError> {
        let names: Vec<String> = (0..rotations.len()).map(|i| i.to_string()).collect();
        Self::from_named_rotations(&names, rotations, edges, loops)
    }

    pub(crate) fn from_named_rotations(
        names: &[String],
        rotations: &[Vec<u32>],
        edges: &[(u32, u32)],
        loops: u32,
    ) -> Result<Self, GraphError> {
        let mut slot: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, rot) in rotations.iter().enumerate() {
            if rot.len() != 3 {
                return Err(GraphError::NonCubicVertex {
                    vertex: names[v].clone(),
                    degree: rot.len(),
                });
            }
            for (s, &h) in rot.iter().enumerate() {
                if slot.insert(h, (3 * v + s) as u32).is_some() {
                    return Err(GraphError::DuplicateHalfEdge(h.to_string()));
                }
            }
        }
        let mut partner = vec![u32::MAX; 3 * rotations.len()];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::PairingNotInvolution(a.to_string()));
            }
            let sa = *slot
                .get(&a)
                .ok_or_else(|| GraphError::DanglingHalfEdge(a.to_string()))?;
            let sb = *slot
                .get(&b)
                .ok_or_else(|| GraphError::DanglingHalfEdge(b.to_string()))?;
            for (s, id) in [(sa, a), (sb, b)] {
                if partner[s as usize] != u32::MAX {
                    return Err(GraphError::PairingNotInvolution(id.to_string()));
                }
            }
            partner[sa as usize] = sb;
            partner[sb as usize] = sa;
        }
        if let Some((&h, _)) = slot.iter().find(|(_, &s)| partner[s as usize] == u32::MAX) {
            return Err(GraphError::DanglingHalfEdge(h.to_string()));
        }
        Ok(RibbonGraph { partner, loops })
    }

    pub fn empty() -> Self {
        RibbonGraph { partner: Vec::new(), loops: 0 }
    }

    /// The disjoint union of `m` vertexless loops.
    pub fn circle_power(m: u32) -> Self {
        RibbonGraph { partner: Vec::new(), loops: m }
    }

    /// The theta graph whose two rotations agree along the three edges.
    pub fn theta() -> Self {
        RibbonGraph::from_partner_unchecked(vec![3, 4, 5, 0, 1, 2], 0)
    }

    /// The theta graph with the second rotation reversed.
    pub fn theta_rev() -> Self {
        RibbonGraph::from_partner_unchecked(vec![3, 5, 4, 0, 2, 1], 0)
    }

    /// Disjoint union of `m` copies of [`RibbonGraph::theta`].
    pub fn theta_power(m: usize) -> Self {
        let theta = Self::theta();
        (0..m).fold(Self::empty(), |acc, _| acc.disjoint_union(&theta))
    }

    /// Checks that the pairing is a fixed-point-free involution on all half-edges.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.partner.len();
        if n % 3 != 0 {
            return Err(GraphError::NonCubicVertex {
                vertex: (n / 3).to_string(),
                degree: n % 3,
            });
        }
        for (h, &p) in self.partner.iter().enumerate() {
            if p as usize >= n {
                return Err(GraphError::DanglingHalfEdge(h.to_string()));
            }
            if p as usize == h || self.partner[p as usize] as usize != h {
                return Err(GraphError::PairingNotInvolution(h.to_string()));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len() / 3
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.partner.len()
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn partners(&self) -> &[u32] {
        &self.partner
    }

    #[inline]
    pub fn partner(&self, h: usize) -> usize {
        self.partner[h] as usize
    }

    /// Next half-edge in the rotation at the vertex of `h`.
    #[inline]
    pub fn rotation_next(h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    /// Edges as `(h, partner(h))` with `h < partner(h)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&h| h < self.partner(h))
            .map(|h| (h, self.partner(h)))
            .collect()
    }

    /// Index of the edge containing half-edge `h`, consistent with [`RibbonGraph::edges`].
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.partner.len()];
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            idx[a] = e;
            idx[b] = e;
        }
        idx
    }

    pub fn with_loops(mut self, loops: u32) -> Self {
        self.loops = loops;
        self
    }

    pub fn disjoint_union(&self, other: &RibbonGraph) -> RibbonGraph {
        let off = self.partner.len() as u32;
        let mut partner = self.partner.clone();
        partner.extend(other.partner.iter().map(|&p| p + off));
        RibbonGraph { partner, loops: self.loops + other.loops }
    }

    /// Vertex sets of the connected components (vertexless loops excluded),
    /// each sorted and listed in order of their smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let nv = self.vertex_count();
        let mut seen = vec![false; nv];
        let mut out = Vec::new();
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for s in 0..3 {
                    let w = self.partner(3 * v + s) / 3;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on a vertex set closed under adjacency, relabelled compactly.
    pub(crate) fn restrict(&self, vertices: &[usize]) -> RibbonGraph {
        let mut new_index = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            new_index[v] = i as u32;
        }
        let mut partner = Vec::with_capacity(3 * vertices.len());
        for &v in vertices {
            for s in 0..3 {
                let p = self.partner(3 * v + s);
                partner.push(3 * new_index[p / 3] + (p % 3) as u32);
            }
        }
        RibbonGraph { partner, loops: 0 }
    }

    /// Connected components; each vertexless loop is returned as its own `○`.
    pub fn components(&self) -> Vec<RibbonGraph> {
        let mut out: Vec<RibbonGraph> = self
            .component_vertex_sets()
            .iter()
            .map(|vs| self.restrict(vs))
            .collect();
        out.extend((0..self.loops).map(|_| RibbonGraph::circle_power(1)));
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Debug for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RibbonGraph(loops={}, partner={:?})", self.loops, self.partner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_from_rotations_is_valid() {
        let g = RibbonGraph::from_rotations(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[(1, 4), (2, 5), (3, 6)],
            0,
        )
        .unwrap();
        assert_eq!(g, RibbonGraph::theta());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn degree_two_vertex_is_rejected() {
        let err = RibbonGraph::from_rotations(&[vec![1, 2]], &[(1, 2)], 0).unwrap_err();
        assert_eq!(
            err,
            GraphError::NonCubicVertex { vertex: "0".into(), degree: 2 }
        );
    }

    #[test]
    fn fixed_point_pairing_is_rejected() {
        let err = RibbonGraph::from_rotations(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[(1, 1), (2, 5), (3, 6)],
            0,
        )
        .unwrap_err();
        assert_eq!(err, GraphError::PairingNotInvolution("1".into()));
        assert!(matches!(
            RibbonGraph::new(vec![0, 2, 1], 0),
            Err(GraphError::PairingNotInvolution(_))
        ));
    }

    #[test]
    fn dangling_half_edges_are_named() {
        let err = RibbonGraph::from_rotations(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[(1, 4), (2, 5)],
            0,
        )
        .unwrap_err();
        assert_eq!(err, GraphError::DanglingHalfEdge("3".into()));
        let err = RibbonGraph::from_rotations(&[vec![1, 2, 3]], &[(1, 9)], 0).unwrap_err();
        assert_eq!(err, GraphError::DanglingHalfEdge("9".into()));
    }

    #[test]
    fn double_pairing_is_rejected() {
        let err = RibbonGraph::from_rotations(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[(1, 4), (1, 5), (3, 6)],
            0,
        )
        .unwrap_err();
        assert_eq!(err, GraphError::PairingNotInvolution("1".into()));
    }

    #[test]
    fn components_split_unions_and_circles() {
        let tt = RibbonGraph::theta().disjoint_union(&RibbonGraph::theta());
        let comps = tt.components();
        assert_eq!(comps, vec![RibbonGraph::theta(), RibbonGraph::theta()]);

        let circles = RibbonGraph::circle_power(2).components();
        assert_eq!(circles.len(), 2);
        assert!(circles.iter().all(|c| c.vertex_count() == 0 && c.loops() == 1));
    }
}
