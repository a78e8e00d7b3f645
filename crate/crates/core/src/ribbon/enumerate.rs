use std::collections::BTreeSet;

use super::canon::connected_code;
use super::{CanonicalCode, GraphError, RibbonGraph};

pub const MAX_ENUMERATION_VERTICES: usize = 8;

/// All isomorphism classes of connected cubic cyclic graphs on exactly
/// `vertices` vertices, as canonical partner arrays.
///
/// Only partner arrays that are fixed by the traversal relabelling from
/// half-edge 0 are generated: half-edges are paired in traversal order, each
/// either to a later free half-edge of an already reached vertex or to slot 0
/// of the next new vertex. Every class appears once per starting half-edge
/// at most, and the survivors are deduplicated by canonical code.
pub fn enumerate_connected(vertices: usize) -> Result<Vec<Vec<u32>>, GraphError> {
    if vertices > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::CapExceeded {
            requested: vertices,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut found = BTreeSet::new();
    if vertices == 0 || vertices % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut partner = vec![u32::MAX; 3 * vertices];
    grow(&mut partner, 1, 0, vertices, &mut found);
    let mut out: Vec<Vec<u32>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn grow(
    partner: &mut Vec<u32>,
    reached: usize,
    cursor: usize,
    target: usize,
    found: &mut BTreeSet<Vec<u32>>,
) {
    let mut i = cursor;
    while i < partner.len() && partner[i] != u32::MAX {
        i += 1;
    }
    if i == partner.len() {
        if reached == target {
            let g = RibbonGraph::from_partner_unchecked(partner.clone(), 0);
            found.insert(connected_code(&g));
        }
        return;
    }
    if i >= 3 * reached {
        // traversal ran out of reached half-edges: disconnected
        return;
    }
    for j in i + 1..3 * reached {
        if partner[j] == u32::MAX {
            partner[i] = j as u32;
            partner[j] = i as u32;
            grow(partner, reached, i + 1, target, found);
            partner[i] = u32::MAX;
            partner[j] = u32::MAX;
        }
    }
    if reached < target {
        let j = 3 * reached;
        partner[i] = j as u32;
        partner[j] = i as u32;
        grow(partner, reached + 1, i + 1, target, found);
        partner[i] = u32::MAX;
        partner[j] = u32::MAX;
    }
}

/// All isomorphism classes of cubic cyclic graphs without vertexless loops
/// having between 1 and `max_vertices` vertices, sorted by code.
pub fn enumerate_cubic_cyclic(max_vertices: usize) -> Result<Vec<CanonicalCode>, GraphError> {
    if max_vertices > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::CapExceeded {
            requested: max_vertices,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    // connected classes, as single-component codes, ordered
    let mut connected: Vec<CanonicalCode> = Vec::new();
    for v in 1..=max_vertices {
        for comp in enumerate_connected(v)? {
            connected.push(CanonicalCode::from_component(comp));
        }
    }
    connected.sort();
    let mut out = BTreeSet::new();
    multisets(&connected, 0, &CanonicalCode::empty(), max_vertices, &mut out);
    out.remove(&CanonicalCode::empty());
    Ok(out.into_iter().collect())
}

fn multisets(
    connected: &[CanonicalCode],
    from: usize,
    current: &CanonicalCode,
    budget: usize,
    out: &mut BTreeSet<CanonicalCode>,
) {
    out.insert(current.clone());
    for (i, c) in connected.iter().enumerate().skip(from) {
        let nv = c.vertex_count();
        if nv <= budget {
            multisets(connected, i, &current.merge(c), budget - nv, out);
        }
    }
}

impl CanonicalCode {
    pub(crate) fn from_component(component: Vec<u32>) -> CanonicalCode {
        RibbonGraph::from_partner_unchecked(component, 0).canonical_code()
    }
}
