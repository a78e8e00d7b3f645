//! Input resolution: a source is either a path on disk or the name of a
//! bundled fixture. Every resolved input is recorded with its digest.

use std::path::Path;

use rotor_core::fixtures;
use rotor_core::format::{parse_graphs, parse_tensor, write_graph, NamedGraph};
use rotor_core::VertexModel;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub source: &'static str,
    pub sha256: String,
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn tensor_fixture(name: &str) -> Option<&'static str> {
    match name {
        "eps" | "epsilon" | "so3" => fixtures::tensor_text("so3"),
        other => fixtures::tensor_text(other),
    }
}

/// Reads `spec` from disk if it names a file, else from the fixtures.
fn read(spec: &str, fixture: impl Fn(&str) -> Option<String>) -> Result<(String, InputDigest), CliError> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        let d = InputDigest { name: spec.to_string(), source: "file", sha256: digest(text.as_bytes()) };
        return Ok((text, d));
    }
    match fixture(spec) {
        Some(text) => {
            let d = InputDigest { name: spec.to_string(), source: "fixture", sha256: digest(text.as_bytes()) };
            Ok((text, d))
        }
        None => Err(CliError::Input(format!("'{spec}' is neither a file nor a known fixture"))),
    }
}

pub fn tensor(spec: &str) -> Result<(VertexModel, InputDigest), CliError> {
    let (text, d) = read(spec, |s| tensor_fixture(s).map(str::to_string))?;
    let c = parse_tensor(&text).map_err(|e| CliError::Parse(format!("{spec}: {e}")))?;
    Ok((c, d))
}

/// `all` or a fixture graph name, or a graph file; `path#name` picks one
/// graph out of a file.
pub fn graphs(spec: &str) -> Result<(Vec<NamedGraph>, InputDigest), CliError> {
    let (path, pick) = match spec.rsplit_once('#') {
        Some((p, n)) if Path::new(p).is_file() => (p, Some(n)),
        _ => (spec, None),
    };
    let fixture = |s: &str| -> Option<String> {
        if s == "all" {
            return Some(fixtures::GRAPHS_TEXT.to_string());
        }
        fixtures::graph(s).map(|g| write_graph(s, &g))
    };
    let (text, d) = read(path, fixture)?;
    let mut gs = parse_graphs(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    if let Some(name) = pick {
        gs.retain(|g| g.name == name);
        if gs.is_empty() {
            return Err(CliError::Input(format!("no graph named '{name}' in {path}")));
        }
    }
    if gs.is_empty() {
        return Err(CliError::Input(format!("{path}: no graphs")));
    }
    Ok((gs, d))
}

/// A single graph: the first one of the source.
pub fn graph(spec: &str) -> Result<(NamedGraph, InputDigest), CliError> {
    let (mut gs, d) = graphs(spec)?;
    Ok((gs.swap_remove(0), d))
}
