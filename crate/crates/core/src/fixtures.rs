//! Reference graphs, tensors and pinned constants shipped with the crate.

use crate::format::{parse_graphs, parse_tensor, NamedGraph};
use crate::rational::{parse_rational, Rational};
use crate::ribbon::RibbonGraph;
use crate::vmodel::VertexModel;

pub const GRAPHS_TEXT: &str = include_str!("../fixtures/graphs.txt");
pub const SO3_TENSOR_TEXT: &str = include_str!("../fixtures/so3.tensor");
pub const NONJACOBI_TENSOR_TEXT: &str = include_str!("../fixtures/nonjacobi.tensor");
pub const SOS_CONSTANTS_TEXT: &str = include_str!("../fixtures/sos_constants.txt");

pub const GRAPH_NAMES: [&str; 5] = ["circle", "theta", "theta_rev", "h4", "k4"];
pub const TENSOR_NAMES: [&str; 2] = ["so3", "nonjacobi"];

pub fn graphs() -> Vec<NamedGraph> {
    parse_graphs(GRAPHS_TEXT).expect("bundled graph fixtures parse")
}

pub fn graph(name: &str) -> Option<RibbonGraph> {
    graphs().into_iter().find(|g| g.name == name).map(|g| g.graph)
}

pub fn h4() -> RibbonGraph {
    graph("h4").unwrap()
}

pub fn k4() -> RibbonGraph {
    graph("k4").unwrap()
}

pub fn tensor_text(name: &str) -> Option<&'static str> {
    match name {
        "so3" => Some(SO3_TENSOR_TEXT),
        "nonjacobi" => Some(NONJACOBI_TENSOR_TEXT),
        _ => None,
    }
}

pub fn tensor(name: &str) -> Option<VertexModel> {
    tensor_text(name).map(|t| parse_tensor(t).expect("bundled tensor fixtures parse"))
}

fn constant(key: &str) -> Rational {
    SOS_CONSTANTS_TEXT
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter_map(|l| l.split_once(char::is_whitespace))
        .find(|(k, _)| *k == key)
        .map(|(_, v)| parse_rational(v.trim()).expect("constant parses"))
        .unwrap_or_else(|| panic!("missing constant {key}"))
}

/// `f(θ) + f(θ_rev) = theta_constant() · theta_sos`.
pub fn theta_constant() -> Rational {
    constant("theta")
}

/// `2 f(k4) − f(h4) = jacobi_constant() · jacobi_sos` for alternating `c`.
pub fn jacobi_constant() -> Rational {
    constant("jacobi")
}
