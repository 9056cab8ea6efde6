use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A simple undirected graph on the dense vertex set `0..vertex_count`.
///
/// Edge identity is the position in the edge list; every ordering of the
/// process is a permutation of these positions. Endpoints are stored with
/// the smaller label first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    lookup: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut graph = Graph {
            vertex_count,
            edges: Vec::new(),
            lookup: HashMap::new(),
        };
        for (u, v) in edges {
            graph.push_edge(u, v)?;
        }
        Ok(graph)
    }

    pub(crate) fn push_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::invalid(format!(
                "edge {u}-{v} has an endpoint outside 0..{}",
                self.vertex_count
            )));
        }
        let key = (u.min(v), u.max(v));
        if self.lookup.contains_key(&key) {
            return Err(Error::invalid(format!(
                "duplicate edge {}-{}",
                key.0, key.1
            )));
        }
        self.lookup.insert(key, self.edges.len());
        self.edges.push([key.0, key.1]);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> [usize; 2] {
        self.edges[index]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &[u, v] in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            Some(&d) if deg.iter().all(|&x| x == d) => Some(d),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &[u, v] in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// The spanning subgraph formed by the given edge positions, kept in the
    /// order they are listed.
    pub fn spanning_subgraph(&self, edge_indices: &[usize]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(edge_indices.len());
        for &i in edge_indices {
            let [u, v] = *self
                .edges
                .get(i)
                .ok_or_else(|| Error::invalid(format!("edge index {i} out of range")))?;
            edges.push((u, v));
        }
        Graph::new(self.vertex_count, edges)
    }

    /// Positions in `self` of every edge of `other`, or `None` if `other` is
    /// not an edge subset of `self` on the same vertex set.
    pub fn embed_edges(&self, other: &Graph) -> Option<Vec<usize>> {
        if other.vertex_count != self.vertex_count {
            return None;
        }
        other
            .edges
            .iter()
            .map(|&[u, v]| self.edge_index(u, v))
            .collect()
    }

    /// Serializes to the `V M` / `u v` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for [u, v] in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}
