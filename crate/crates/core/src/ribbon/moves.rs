use super::{GraphError, RibbonGraph};

/// The three graphs of an IHX relation around one edge.
///
/// With the rotation at one endpoint read as `(x, a, b)` from the chosen
/// half-edge `x` and at the other as `(y, c, d)` from its partner `y`:
/// `i` keeps the legs `(a, b | c, d)`, `h` regroups them as `(a, c | b, d)`
/// and `x` as `(b, c | a, d)`. For an alternating Jacobi tensor,
/// `f(i) = f(h) - f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IhxTriple {
    pub i: RibbonGraph,
    pub h: RibbonGraph,
    pub x: RibbonGraph,
}

impl RibbonGraph {
    /// Reverses the cyclic order at vertex `v`.
    pub fn reverse_vertex(&self, v: usize) -> Result<RibbonGraph, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::IndexOutOfRange { index: v, limit: self.vertex_count() });
        }
        let swap = |h: usize| -> usize {
            if h == 3 * v + 1 {
                3 * v + 2
            } else if h == 3 * v + 2 {
                3 * v + 1
            } else {
                h
            }
        };
        let mut partner = vec![0u32; self.half_edge_count()];
        for h in 0..self.half_edge_count() {
            partner[swap(h)] = swap(self.partner(h)) as u32;
        }
        Ok(RibbonGraph::from_partner_unchecked(partner, self.loops()))
    }

    /// The IHX triple around the edge containing half-edge `half_edge`.
    pub fn ihx_expand(&self, half_edge: usize) -> Result<IhxTriple, GraphError> {
        if half_edge >= self.half_edge_count() {
            return Err(GraphError::IndexOutOfRange {
                index: half_edge,
                limit: self.half_edge_count(),
            });
        }
        let x = half_edge;
        let y = self.partner(x);
        if x / 3 == y / 3 {
            return Err(GraphError::LoopEdge(half_edge));
        }
        let a = Self::rotation_next(x);
        let b = Self::rotation_next(a);
        let c = Self::rotation_next(y);
        let d = Self::rotation_next(c);
        // slot order: the two free slots at x's vertex, then at y's vertex
        let slots = [a, b, c, d];
        let h = self.regroup(&slots, [a, c, b, d]);
        let xg = self.regroup(&slots, [b, c, a, d]);
        Ok(IhxTriple { i: self.clone(), h, x: xg })
    }

    /// Puts leg `legs[i]` into slot `slots[i]`, keeping everything else.
    fn regroup(&self, slots: &[usize; 4], legs: [usize; 4]) -> RibbonGraph {
        let mut partner = self.partners().to_vec();
        let pos = |h: usize| legs.iter().position(|&l| l == h).map(|i| slots[i]);
        for &leg in &legs {
            let here = pos(leg).unwrap();
            let target = self.partner(leg);
            match pos(target) {
                Some(there) => partner[here] = there as u32,
                None => {
                    partner[here] = target as u32;
                    partner[target] = here as u32;
                }
            }
        }
        RibbonGraph::from_partner_unchecked(partner, self.loops())
    }
}
