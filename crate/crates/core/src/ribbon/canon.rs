use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::RibbonGraph;

/// Isomorphism-class identifier of a cubic cyclic graph.
///
/// Each connected component is encoded by the partner array obtained from a
/// breadth-first relabelling of its half-edges, minimised over every starting
/// half-edge. The relabelling gives the entry half-edge of each newly reached
/// vertex slot 0 and follows the rotation for slots 1 and 2, so the code is
/// itself a compact graph. Component codes are kept sorted and the number of
/// vertexless loops is carried alongside.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CanonicalCode {
    components: Vec<Vec<u32>>,
    loops: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeParseError {
    #[error("canonical code must start with 'o<loops>': {0:?}")]
    MissingLoopPrefix(String),
    #[error("bad integer {0:?} in canonical code")]
    BadInteger(String),
    #[error("component {0:?} is not a valid connected cubic graph")]
    InvalidComponent(String),
    #[error("component {0:?} is not in canonical form")]
    NotCanonical(String),
}

fn compare_components(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Traversal code of a connected graph from one starting half-edge. Returns
/// `None` as soon as the code is known to exceed `best`.
fn traversal_code(g: &RibbonGraph, start: usize, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = g.half_edge_count();
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(n);
    let mut next_vertex = 0u32;
    let mut enter = |entry: usize, label: &mut Vec<u32>, order: &mut Vec<usize>| {
        let mut h = entry;
        for s in 0..3 {
            label[h] = 3 * next_vertex + s;
            order.push(h);
            h = RibbonGraph::rotation_next(h);
        }
        next_vertex += 1;
    };
    enter(start, &mut label, &mut order);
    let mut still_tied = best.is_some();
    let mut i = 0;
    while i < order.len() {
        let p = g.partner(order[i]);
        if label[p] == u32::MAX {
            enter(p, &mut label, &mut order);
        }
        let c = label[p];
        if still_tied {
            let b = best.unwrap()[i];
            match c.cmp(&b) {
                Ordering::Greater => return None,
                Ordering::Less => still_tied = false,
                Ordering::Equal => {}
            }
        }
        code.push(c);
        i += 1;
    }
    debug_assert_eq!(order.len(), n, "traversal_code needs a connected graph");
    Some(code)
}

/// Canonical partner array of a connected graph with at least one vertex.
pub(crate) fn connected_code(g: &RibbonGraph) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..g.half_edge_count() {
        if let Some(code) = traversal_code(g, start, best.as_deref()) {
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("connected_code on an empty graph")
}

impl RibbonGraph {
    pub fn canonical_code(&self) -> CanonicalCode {
        let mut components: Vec<Vec<u32>> = self
            .component_vertex_sets()
            .iter()
            .map(|vs| connected_code(&self.restrict(vs)))
            .collect();
        components.sort_by(|a, b| compare_components(a, b));
        CanonicalCode { components, loops: self.loops }
    }
}

impl CanonicalCode {
    pub fn empty() -> Self {
        CanonicalCode::default()
    }

    pub fn circle_power(m: u32) -> Self {
        CanonicalCode { components: Vec::new(), loops: m }
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|c| c.len() / 3).sum()
    }

    /// True when the monomial is a power of the vertexless loop.
    pub fn is_circle_power(&self) -> bool {
        self.components.is_empty()
    }

    /// Code of the disjoint union.
    pub fn merge(&self, other: &CanonicalCode) -> CanonicalCode {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        components.sort_by(|a, b| compare_components(a, b));
        CanonicalCode { components, loops: self.loops + other.loops }
    }

    /// The code of a single connected component, without loops.
    pub fn component_code(&self, i: usize) -> CanonicalCode {
        CanonicalCode { components: vec![self.components[i].clone()], loops: 0 }
    }

    /// A representative graph; its canonical code is `self`.
    pub fn to_graph(&self) -> RibbonGraph {
        let mut partner = Vec::with_capacity(3 * self.vertex_count());
        for comp in &self.components {
            let off = partner.len() as u32;
            partner.extend(comp.iter().map(|&p| p + off));
        }
        RibbonGraph::from_partner_unchecked(partner, self.loops)
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| self.loops.cmp(&other.loops))
            .then_with(|| self.components.len().cmp(&other.components.len()))
            .then_with(|| {
                for (a, b) in self.components.iter().zip(&other.components) {
                    let c = compare_components(a, b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.loops)?;
        for comp in &self.components {
            write!(f, "|")?;
            for (i, p) in comp.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self})")
    }
}

impl FromStr for CanonicalCode {
    type Err = CodeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split('|');
        let head = parts.next().unwrap_or_default();
        let loops = head
            .strip_prefix('o')
            .ok_or_else(|| CodeParseError::MissingLoopPrefix(s.to_string()))?
            .parse::<u32>()
            .map_err(|_| CodeParseError::BadInteger(head.to_string()))?;
        let mut components = Vec::new();
        for part in parts {
            let comp = part
                .split('.')
                .map(|t| t.parse::<u32>().map_err(|_| CodeParseError::BadInteger(t.to_string())))
                .collect::<Result<Vec<u32>, _>>()?;
            let g = RibbonGraph::new(comp.clone(), 0)
                .map_err(|_| CodeParseError::InvalidComponent(part.to_string()))?;
            if g.vertex_count() == 0 || !g.is_connected() {
                return Err(CodeParseError::InvalidComponent(part.to_string()));
            }
            if connected_code(&g) != comp {
                return Err(CodeParseError::NotCanonical(part.to_string()));
            }
            components.push(comp);
        }
        components.sort_by(|a, b| compare_components(a, b));
        Ok(CanonicalCode { components, loops })
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism: try every vertex bijection and every cyclic
    /// shift of each rotation.
    fn brute_isomorphic(a: &RibbonGraph, b: &RibbonGraph) -> bool {
        let nv = a.vertex_count();
        if nv != b.vertex_count() || a.loops() != b.loops() {
            return false;
        }
        fn rec(a: &RibbonGraph, b: &RibbonGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let v = map.len() / 3;
            if v == a.vertex_count() {
                return (0..map.len()).all(|h| map[a.partner(h)] == b.partner(map[h]));
            }
            for w in 0..b.vertex_count() {
                if used[w] {
                    continue;
                }
                used[w] = true;
                for shift in 0..3 {
                    for s in 0..3 {
                        map.push(3 * w + (s + shift) % 3);
                    }
                    if rec(a, b, map, used) {
                        return true;
                    }
                    map.truncate(3 * v);
                }
                used[w] = false;
            }
            false
        }
        rec(a, b, &mut Vec::new(), &mut vec![false; nv])
    }

    #[test]
    fn theta_variants_have_distinct_codes() {
        let t = RibbonGraph::theta();
        let r = RibbonGraph::theta_rev();
        assert!(!brute_isomorphic(&t, &r));
        assert_ne!(t.canonical_code(), r.canonical_code());
        assert_eq!(t.canonical_code().to_string(), "o0|3.4.5.0.1.2");
        assert_eq!(r.canonical_code().to_string(), "o0|3.5.4.0.2.1");
    }

    #[test]
    fn relabelled_theta_keeps_its_code() {
        let g = RibbonGraph::from_rotations(
            &[vec![60, 40, 50], vec![20, 30, 10]],
            &[(10, 50), (20, 60), (30, 40)],
            0,
        )
        .unwrap();
        assert!(brute_isomorphic(&g, &RibbonGraph::theta()));
        assert_eq!(g.canonical_code(), RibbonGraph::theta().canonical_code());
    }

    #[test]
    fn union_code_is_merge_of_component_codes() {
        let t = RibbonGraph::theta();
        let tt = t.disjoint_union(&t);
        let c = t.canonical_code();
        assert_ne!(tt.canonical_code(), c);
        assert_eq!(tt.canonical_code(), c.merge(&c));
        assert_eq!(tt.canonical_code().to_string(), "o0|3.4.5.0.1.2|3.4.5.0.1.2");
    }

    #[test]
    fn code_string_round_trip_and_rejections() {
        let code = RibbonGraph::theta_rev()
            .disjoint_union(&RibbonGraph::circle_power(2))
            .canonical_code();
        assert_eq!(code.to_string().parse::<CanonicalCode>().unwrap(), code);
        assert_eq!("o0".parse::<CanonicalCode>().unwrap(), CanonicalCode::empty());
        assert!(matches!(
            "x1".parse::<CanonicalCode>(),
            Err(CodeParseError::MissingLoopPrefix(_))
        ));
        // a valid theta written from a non-minimal start
        assert!(matches!(
            "o0|3.5.4.0.2.1|4.3.5.1.0.2".parse::<CanonicalCode>(),
            Err(CodeParseError::NotCanonical(_)) | Err(CodeParseError::InvalidComponent(_))
        ));
    }

    #[test]
    fn code_agrees_with_brute_force_on_two_vertex_graphs() {
        // all 15 pairings of 6 half-edges
        let mut graphs = Vec::new();
        fn pairings(rest: Vec<u32>, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 1..rest.len() {
                let mut r = rest.clone();
                let b = r.remove(i);
                let a = r.remove(0);
                cur.push((a, b));
                pairings(r, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        pairings((0..6).collect(), &mut Vec::new(), &mut all);
        for p in all {
            graphs.push(RibbonGraph::from_rotations(&[vec![0, 1, 2], vec![3, 4, 5]], &p, 0).unwrap());
        }
        for a in &graphs {
            for b in &graphs {
                assert_eq!(
                    a.canonical_code() == b.canonical_code(),
                    brute_isomorphic(a, b),
                    "{a:?} vs {b:?}"
                );
            }
        }
    }
}
