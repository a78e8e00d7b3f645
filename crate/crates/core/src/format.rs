//! Line-oriented text formats for graphs and tensors.
//!
//! Graphs:
//! ```text
//! graph theta
//! loops 0
//! vertex u: 1 2 3
//! vertex w: 4 5 6
//! edge 1 4
//! edge 2 5
//! edge 3 6
//! end
//! ```
//! Tensors (1-based indices, unlisted entries zero):
//! ```text
//! tensor n=3 symmetrize=false
//! 1 2 3 1
//! ```
//! `#` starts a comment anywhere on a line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::rational::{parse_rational, to_pq, Rational};
use crate::ribbon::{GraphError, RibbonGraph};
use crate::vmodel::{triples, ModelError, VertexModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph '{name}' (line {line}): {source}")]
    Graph {
        name: String,
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: {source}")]
    Model {
        line: usize,
        #[source]
        source: ModelError,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("bad {what} '{tok}'")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: RibbonGraph,
}

struct Block {
    name: String,
    start: usize,
    loops: u32,
    names: Vec<String>,
    rotations: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
}

/// Parses every `graph ... end` block in `text`.
pub fn parse_graphs(text: &str) -> Result<Vec<NamedGraph>, ParseError> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    let mut last = 0;
    for (ln, l) in lines(text) {
        last = ln;
        let mut toks = l.split_whitespace();
        let head = toks.next().unwrap();
        match (head, cur.as_mut()) {
            ("graph", None) => {
                let name = toks.next().ok_or_else(|| syntax(ln, "graph needs a name"))?;
                cur = Some(Block {
                    name: name.to_string(),
                    start: ln,
                    loops: 0,
                    names: Vec::new(),
                    rotations: Vec::new(),
                    edges: Vec::new(),
                });
            }
            ("graph", Some(_)) => return Err(syntax(ln, "nested graph block (missing 'end')")),
            (_, None) => return Err(syntax(ln, format!("'{head}' outside a graph block"))),
            ("loops", Some(b)) => {
                let tok = toks.next().ok_or_else(|| syntax(ln, "loops needs a count"))?;
                b.loops = number(tok, ln, "loop count")?;
            }
            ("vertex", Some(b)) => {
                let rest = l["vertex".len()..].trim();
                let (id, hs) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(ln, "expected 'vertex <id>: <h1> <h2> <h3>'"))?;
                let hs: Vec<u32> = hs
                    .split_whitespace()
                    .map(|t| number(t, ln, "half-edge id"))
                    .collect::<Result<_, _>>()?;
                b.names.push(id.trim().to_string());
                b.rotations.push(hs);
            }
            ("edge", Some(b)) => {
                let hs: Vec<u32> =
                    toks.map(|t| number(t, ln, "half-edge id")).collect::<Result<_, _>>()?;
                if hs.len() != 2 {
                    return Err(syntax(ln, "expected 'edge <ha> <hb>'"));
                }
                b.edges.push((hs[0], hs[1]));
            }
            ("end", Some(_)) => {
                let b = cur.take().unwrap();
                let graph = RibbonGraph::from_named_rotations(&b.names, &b.rotations, &b.edges, b.loops)
                    .map_err(|source| ParseError::Graph { name: b.name.clone(), line: b.start, source })?;
                out.push(NamedGraph { name: b.name, graph });
            }
            (other, Some(_)) => return Err(syntax(ln, format!("unknown directive '{other}'"))),
        }
    }
    if cur.is_some() {
        return Err(syntax(last, "unterminated graph block"));
    }
    Ok(out)
}

/// Serialises a graph with vertices `v0, v1, …` and half-edges `3v+s+1`.
pub fn write_graph(name: &str, g: &RibbonGraph) -> String {
    let mut s = String::new();
    writeln!(s, "graph {name}").unwrap();
    writeln!(s, "loops {}", g.loops()).unwrap();
    for v in 0..g.vertex_count() {
        writeln!(s, "vertex v{v}: {} {} {}", 3 * v + 1, 3 * v + 2, 3 * v + 3).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(s, "edge {} {}", a + 1, b + 1).unwrap();
    }
    s.push_str("end\n");
    s
}

/// Parses a tensor file into an exact vertex model.
pub fn parse_tensor(text: &str) -> Result<VertexModel, ParseError> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| syntax(1, "empty tensor file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("tensor") {
        return Err(syntax(hl, "expected 'tensor n=<n> symmetrize=<true|false>'"));
    }
    let mut n: Option<usize> = None;
    let mut symmetrize = false;
    for t in toks {
        match t.split_once('=') {
            Some(("n", v)) => n = Some(number(v, hl, "dimension")?),
            Some(("symmetrize", v)) => symmetrize = number(v, hl, "symmetrize flag")?,
            _ => return Err(syntax(hl, format!("unknown header field '{t}'"))),
        }
    }
    let n = n.ok_or_else(|| syntax(hl, "header lacks n=<n>"))?;
    let mut raw = vec![Rational::from_integer(0.into()); n * n * n];
    let mut seen: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (ln, l) in it {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(syntax(ln, "expected '<i> <j> <k> <p>/<q>'"));
        }
        let mut idx = [0usize; 3];
        for (slot, tok) in idx.iter_mut().zip(&toks) {
            let i: usize = number(tok, ln, "index")?;
            if i == 0 || i > n {
                return Err(syntax(ln, format!("index {i} outside 1..={n}")));
            }
            *slot = i - 1;
        }
        let value = parse_rational(toks[3]).map_err(|e| syntax(ln, e.to_string()))?;
        let key = (idx[0], idx[1], idx[2]);
        if let Some(prev) = seen.insert(key, ln) {
            return Err(syntax(ln, format!("entry {} {} {} already set on line {prev}", toks[0], toks[1], toks[2])));
        }
        raw[(idx[0] * n + idx[1]) * n + idx[2]] = value;
    }
    if symmetrize {
        return VertexModel::project_c3(n, &raw).map_err(|source| ParseError::Model { line: hl, source });
    }
    VertexModel::new(n, raw).map_err(|source| {
        let line = match source {
            ModelError::NotCyclicInvariant(i, j, k) => {
                // point at whichever member of the orbit was written down
                [(i, j, k), (j, k, i), (k, i, j)]
                    .iter()
                    .find_map(|t| seen.get(t).copied())
                    .unwrap_or(hl)
            }
            _ => hl,
        };
        ParseError::Model { line, source: one_based(source) }
    })
}

fn one_based(e: ModelError) -> ModelError {
    match e {
        ModelError::NotCyclicInvariant(i, j, k) => ModelError::NotCyclicInvariant(i + 1, j + 1, k + 1),
        other => other,
    }
}

/// Serialises the nonzero entries of a model.
pub fn write_tensor(c: &VertexModel) -> String {
    let mut s = format!("tensor n={} symmetrize=false\n", c.n());
    for (i, j, k) in triples(c.n()) {
        let v = c.get(i, j, k);
        if *v != Rational::from_integer(0.into()) {
            writeln!(s, "{} {} {} {}", i + 1, j + 1, k + 1, to_pq(v)).unwrap();
        }
    }
    s
}
