//! Finite graphs with cached metrics, Cayley balls of length tables,
//! Extension Property checks and bounded universal-graph approximants.

mod cayley;
mod extension;
mod moss;


use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cayley::{cayley_ball, check_consistent, d_witness_search, DWitness};
pub use extension::{vc_extension_graph, ExtensionReport, PathExtension};
pub use moss::{moss_approximant, Demand, MossApproximant, MossParams, RoundReport};

const INF: u32 = u32::MAX;

/// A simple undirected graph with named vertices and an all-pairs distance
/// matrix kept in sync with the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
}

impl FiniteGraph {
    /// Builds a graph; duplicate edges are merged, loops and unknown
    /// endpoints are rejected.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex name {n:?}")));
            }
        }
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); names.len()];
        for &(i, j) in edges {
            if i >= names.len() || j >= names.len() {
                return Err(Error::InvalidInput(format!("edge ({i},{j}) has an unknown endpoint")));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("loop at vertex {i}")));
            }
            sets[i].insert(j);
            sets[j].insert(i);
        }
        let adj: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut g = FiniteGraph {
            names,
            index,
            adj,
            dist: Vec::new(),
        };
        g.recompute_distances();
        Ok(g)
    }

    /// The path `v1 - v2 - ... - vn`.
    pub fn path(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteGraph::new(names, &edges).expect("path is simple")
    }

    fn recompute_distances(&mut self) {
        self.dist = (0..self.len()).map(|s| self.bfs(s)).collect();
    }

    fn bfs(&self, s: usize) -> Vec<u32> {
        let mut d = vec![INF; self.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if d[w] == INF {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// Appends a vertex adjacent to `neighbors`, whose pairwise distances
    /// must be at most 2 so that no old distance changes.
    pub(crate) fn push_isometric(&mut self, name: String, neighbors: &[usize]) -> Result<usize> {
        for (k, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[k + 1..] {
                debug_assert!(self.dist[a][b] <= 2, "neighbor set must have diameter <= 2");
            }
        }
        if self.index.contains_key(&name) {
            return Err(Error::InvalidInput(format!("duplicate vertex name {name:?}")));
        }
        let v = self.len();
        let row: Vec<u32> = (0..v)
            .map(|x| {
                neighbors
                    .iter()
                    .map(|&n| self.dist[n][x])
                    .min()
                    .map_or(INF, |d| d.saturating_add(1))
            })
            .collect();
        for (x, r) in self.dist.iter_mut().enumerate() {
            r.push(row[x]);
        }
        let mut own = row;
        own.push(0);
        self.dist.push(own);
        self.index.insert(name.clone(), v);
        self.names.push(name);
        let mut nb = neighbors.to_vec();
        nb.sort_unstable();
        nb.dedup();
        for &n in &nb {
            self.adj[n].push(v);
        }
        self.adj.push(nb);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Shortest-path distance, `None` across components.
    pub fn distance(&self, a: usize, b: usize) -> Option<u64> {
        match self.dist[a][b] {
            INF => None,
            d => Some(d as u64),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.dist.first().is_none_or(|row| row.iter().all(|&d| d != INF))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            vertices: self.names.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            what: "graph",
            input: s.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|[i, j]| (*i, *j)).collect();
        FiniteGraph::new(raw.vertices, &edges)
    }

    /// Graphviz rendering with vertices in index order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, n) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label={n:?}];");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  {i} -- {j};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

/// All-pairs shortest-path distances, `None` for disconnected pairs.
pub fn graph_metric(g: &FiniteGraph) -> Vec<Vec<Option<u64>>> {
    (0..g.len())
        .map(|a| (0..g.len()).map(|b| g.distance(a, b)).collect())
        .collect()
}

/// An ordered tuple of vertices of one graph.
#[derive(Debug, Clone, Copy)]
pub struct VertexTuple<'g> {
    graph: &'g FiniteGraph,
    vertices: &'g [usize],
}

impl<'g> VertexTuple<'g> {
    pub fn new(graph: &'g FiniteGraph, vertices: &'g [usize]) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|&&v| v >= graph.len()) {
            return Err(Error::InvalidInput(format!("vertex {v} is not in the graph")));
        }
        Ok(VertexTuple { graph, vertices })
    }

    pub fn graph(&self) -> &'g FiniteGraph {
        self.graph
    }

    pub fn vertices(&self) -> &'g [usize] {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Resolves vertex names to indices.
pub fn resolve_names(g: &FiniteGraph, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| {
            g.index_of(n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {n:?}")))
        })
        .collect()
}

/// Whether the two tuples induce the same distances pairwise.
pub fn tuples_congruent(s: &VertexTuple<'_>, t: &VertexTuple<'_>) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    for i in 0..s.len() {
        for j in 0..s.len() {
            let ds = s.graph.distance(s.vertices[i], s.vertices[j]);
            let dt = t.graph.distance(t.vertices[i], t.vertices[j]);
            if ds != dt {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First vertex `v` with `d(v, a_i) = d_i` for every `i`.
pub fn ep_witness(a: &VertexTuple<'_>, d: &[u64]) -> Result<Option<usize>> {
    if a.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: d.len(),
        });
    }
    let g = a.graph;
    Ok((0..g.len()).find(|&v| {
        a.vertices
            .iter()
            .zip(d)
            .all(|(&ai, &di)| g.distance(v, ai) == Some(di))
    }))
}
