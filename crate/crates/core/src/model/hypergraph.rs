use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An `r`-uniform hypergraph on `0..vertex_count`. Each edge is stored as a
/// sorted run of `arity` vertices in one flat buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    vertex_count: usize,
    arity: usize,
    vertices: Vec<usize>,
}

impl UniformHypergraph {
    pub fn new<I, E>(vertex_count: usize, arity: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if arity < 2 {
            return Err(Error::invalid(format!(
                "arity must be at least 2, got {arity}"
            )));
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut vertices = Vec::new();
        for edge in edges {
            let mut e = edge.as_ref().to_vec();
            if e.len() != arity {
                return Err(Error::invalid(format!(
                    "edge {e:?} has {} vertices, expected {arity}",
                    e.len()
                )));
            }
            if let Some(&bad) = e.iter().find(|&&x| x >= vertex_count) {
                return Err(Error::invalid(format!(
                    "vertex {bad} outside 0..{vertex_count}"
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("edge {e:?} repeats a vertex")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::invalid(format!("duplicate edge {e:?}")));
            }
            vertices.extend_from_slice(&e);
        }
        Ok(UniformHypergraph {
            vertex_count,
            arity,
            vertices,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() / self.arity
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.vertices[index * self.arity..(index + 1) * self.arity]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.vertices.chunks_exact(self.arity)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &v in &self.vertices {
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn sub_hypergraph(&self, edge_indices: &[usize]) -> Result<UniformHypergraph> {
        if let Some(&bad) = edge_indices.iter().find(|&&i| i >= self.edge_count()) {
            return Err(Error::invalid(format!("edge index {bad} out of range")));
        }
        UniformHypergraph::new(
            self.vertex_count,
            self.arity,
            edge_indices.iter().map(|&i| self.edge(i)),
        )
    }

    /// Serializes to the `V R M` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.vertex_count,
            self.arity,
            self.edge_count()
        );
        for e in self.edges() {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
