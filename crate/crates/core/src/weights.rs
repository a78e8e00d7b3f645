//! Weight-system axioms for partition functions: antisymmetry under vertex
//! reversal, the IHX relation, and the two sum-of-squares criteria that
//! characterise structure tensors of metric Lie algebras.

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::fixtures;
use crate::rational::{pq_string, to_pq, Rational};
use crate::ribbon::{enumerate_cubic_cyclic, RibbonGraph};
use crate::vmodel::{triples, Evaluator, VertexModel};

/// At most this many witnesses are kept per check.
pub const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// One failing instance of a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub check: &'static str,
    /// Canonical code of the graph, when the failure is graph-level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    /// Vertex, half-edge or (0-based) tensor index, depending on `check`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<usize>>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub ok: bool,
    pub instances: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckOutcome {
    fn new() -> Self {
        CheckOutcome { ok: true, instances: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, pass: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !pass {
            self.ok = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    pub antisymmetry_ok: bool,
    pub ihx_ok: bool,
    #[serde(with = "pq_string")]
    pub theta_sos: Rational,
    #[serde(with = "pq_string")]
    pub jacobi_sos: Rational,
    /// `(f(h4), 2 f(k4))`, present when `c` is alternating.
    pub h4_k4: Option<(String, String)>,
    pub witnesses: Vec<Witness>,
}

/// `Σ_{ijk} (c_{ijk} + c_{ikj})²`.
pub fn theta_sos(c: &VertexModel) -> Rational {
    triples(c.n())
        .map(|(i, j, k)| {
            let s = c.get(i, j, k) + c.get(i, k, j);
            &s * &s
        })
        .sum()
}

/// `Σ_{ijkl} (Σ_a c_{ija}c_{akl} + c_{ila}c_{ajk} + c_{ika}c_{alj})²`.
pub fn jacobi_sos(c: &VertexModel) -> Rational {
    let n = c.n();
    let mut total = Rational::zero();
    for (i, j, k) in triples(n) {
        for l in 0..n {
            let s: Rational = (0..n)
                .map(|a| {
                    c.get(i, j, a) * c.get(a, k, l)
                        + c.get(i, l, a) * c.get(a, j, k)
                        + c.get(i, k, a) * c.get(a, l, j)
                })
                .sum();
            total += &s * &s;
        }
    }
    total
}

/// Graph-level antisymmetry over every vertex of every graph, plus the
/// tensor-level test `c_{ikj} = −c_{ijk}`.
pub fn check_antisymmetry(c: &VertexModel, graphs: &[RibbonGraph]) -> CheckOutcome {
    let eval = Evaluator::new(c);
    let mut out = CheckOutcome::new();
    for g in graphs {
        let f = eval.graph(g);
        for v in 0..g.vertex_count() {
            let r = eval.graph(&g.reverse_vertex(v).expect("vertex in range"));
            out.record(r == -f.clone(), || Witness {
                check: "antisymmetry",
                graph: Some(g.canonical_code().to_string()),
                index: Some(vec![v]),
                lhs: to_pq(&r),
                rhs: to_pq(&-f.clone()),
            });
        }
    }
    for (i, j, k) in triples(c.n()) {
        let (a, b) = (c.get(i, k, j), -c.get(i, j, k));
        out.record(*a == b, || Witness {
            check: "alternating",
            graph: None,
            index: Some(vec![i, j, k]),
            lhs: to_pq(a),
            rhs: to_pq(&b),
        });
    }
    out
}

/// `(f(θ) + f(θ_rev), theta_constant · theta_sos)`; always equal.
pub fn check_theta_condition(c: &VertexModel) -> (Rational, Rational) {
    let eval = Evaluator::new(c);
    let lhs = eval.graph(&RibbonGraph::theta()) + eval.graph(&RibbonGraph::theta_rev());
    (lhs, fixtures::theta_constant() * theta_sos(c))
}

fn require_alternating(c: &VertexModel) -> Result<(), WeightError> {
    if c.is_alternating() {
        Ok(())
    } else {
        Err(WeightError::PreconditionFailed("tensor is not alternating".into()))
    }
}

/// `f(I) = f(H) − f(X)` around every non-loop edge of every graph.
pub fn check_ihx(c: &VertexModel, graphs: &[RibbonGraph]) -> Result<CheckOutcome, WeightError> {
    require_alternating(c)?;
    let eval = Evaluator::new(c);
    let mut out = CheckOutcome::new();
    for g in graphs {
        for (p, q) in g.edges() {
            if p / 3 == q / 3 {
                continue;
            }
            let t = g.ihx_expand(p).expect("non-loop edge");
            let lhs = eval.graph(&t.i);
            let rhs = eval.graph(&t.h) - eval.graph(&t.x);
            out.record(lhs == rhs, || Witness {
                check: "ihx",
                graph: Some(g.canonical_code().to_string()),
                index: Some(vec![p]),
                lhs: to_pq(&lhs),
                rhs: to_pq(&rhs),
            });
        }
    }
    Ok(out)
}

/// `(f(h4), 2 f(k4))`; for alternating `c` their difference is
/// `−jacobi_constant · jacobi_sos`.
pub fn check_h4_k4(c: &VertexModel) -> Result<(Rational, Rational), WeightError> {
    require_alternating(c)?;
    let eval = Evaluator::new(c);
    Ok((eval.graph(&fixtures::h4()), Rational::from_integer(2.into()) * eval.graph(&fixtures::k4())))
}

/// Every cubic cyclic graph on at most four vertices.
pub fn default_corpus() -> Vec<RibbonGraph> {
    enumerate_cubic_cyclic(4)
        .expect("within cap")
        .iter()
        .map(|code| code.to_graph())
        .collect()
}

/// Certifies `c` as the structure tensor of a metric Lie algebra: both sums
/// of squares vanish. The graph-level checks run on `graphs` and explain
/// failures with witnesses.
pub fn certify_lie_weight_system(c: &VertexModel, graphs: &[RibbonGraph]) -> (bool, WeightReport) {
    let anti = check_antisymmetry(c, graphs);
    let mut witnesses = anti.witnesses;
    let (ihx_ok, h4_k4) = match check_ihx(c, graphs) {
        Ok(ihx) => {
            witnesses.extend(ihx.witnesses);
            let (h, k) = check_h4_k4(c).expect("alternating checked");
            if h != k {
                witnesses.push(Witness {
                    check: "h4_k4",
                    graph: None,
                    index: None,
                    lhs: to_pq(&h),
                    rhs: to_pq(&k),
                });
            }
            (ihx.ok, Some((to_pq(&h), to_pq(&k))))
        }
        Err(_) => (false, None),
    };
    let report = WeightReport {
        antisymmetry_ok: anti.ok,
        ihx_ok,
        theta_sos: theta_sos(c),
        jacobi_sos: jacobi_sos(c),
        h4_k4,
        witnesses,
    };
    let certified = report.theta_sos.is_zero() && report.jacobi_sos.is_zero();
    (certified, report)
}
