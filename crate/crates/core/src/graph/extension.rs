use serde::Serialize;

use super::FiniteGraph;
use crate::error::{Error, Result};

/// `delta` plus a fresh path `u1 - w0 - ... - w(m-1) - u2`.
#[derive(Debug, Clone)]
pub struct PathExtension {
    pub graph: FiniteGraph,
    /// Indices of `w0, ..., w(m-1)` in the new graph.
    pub path: Vec<usize>,
    pub report: ExtensionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub m: u64,
    pub old_pairs_checked: usize,
    pub old_distances_preserved: bool,
}

/// Joins `u1` and `u2`, which must lie at distance exactly `m`, by a new
/// path of length `m + 1`. Old distances are re-verified pair by pair.
pub fn vc_extension_graph(delta: &FiniteGraph, u1: usize, u2: usize, m: u64) -> Result<PathExtension> {
    if u1 >= delta.len() || u2 >= delta.len() || u1 == u2 {
        return Err(Error::PreconditionFailed(
            "the path endpoints must be two distinct vertices".into(),
        ));
    }
    if m == 0 || delta.distance(u1, u2) != Some(m) {
        return Err(Error::PreconditionFailed(format!(
            "d({}, {}) is {:?}, not {m}",
            delta.name(u1),
            delta.name(u2),
            delta.distance(u1, u2)
        )));
    }
    let n = delta.len();
    let mut names = delta.names().to_vec();
    for k in 0..m {
        let name = format!("w{k}");
        if delta.index_of(&name).is_some() {
            return Err(Error::InvalidInput(format!("vertex name {name} is already taken")));
        }
        names.push(name);
    }
    let path: Vec<usize> = (n..n + m as usize).collect();
    let mut edges = delta.edges();
    let mut prev = u1;
    for &w in &path {
        edges.push((prev, w));
        prev = w;
    }
    edges.push((prev, u2));
    let graph = FiniteGraph::new(names, &edges)?;
    let mut preserved = true;
    for a in 0..n {
        for b in 0..n {
            preserved &= graph.distance(a, b) == delta.distance(a, b);
        }
    }
    Ok(PathExtension {
        graph,
        path,
        report: ExtensionReport {
            m,
            old_pairs_checked: n * n,
            old_distances_preserved: preserved,
        },
    })
}
