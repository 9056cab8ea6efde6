//! Constructors for the canonical ambient structures.

use super::{Graph, UniformHypergraph};
use crate::error::{Error, Result};

const MAX_BUILD_EDGES: usize = 1 << 24;

/// `K_{n,n}`: boys are `0..n`, girls `n..2n`; edge `(i, n + j)` sits at
/// position `i * n + j`.
pub fn build_complete_bipartite(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("K_{n,n} needs n >= 1"));
    }
    check_size(n.checked_mul(n))?;
    Graph::new(2 * n, (0..n).flat_map(|i| (0..n).map(move |j| (i, n + j))))
}

/// `K_m` with edges `(i, j)`, `i < j`, in lexicographic order.
pub fn build_complete(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::invalid("K_m needs m >= 1"));
    }
    check_size(m.checked_mul(m.saturating_sub(1)).map(|x| x / 2))?;
    Graph::new(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))))
}

/// The cycle `0 - 1 - ... - (n-1) - 0`.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("a path needs at least 1 vertex"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// The complete `r`-partite `r`-uniform hypergraph with parts of size `n`:
/// part `i` holds labels `i*n .. (i+1)*n`, and every transversal `r`-set is
/// an edge. Edges are listed in lexicographic order of their part offsets.
pub fn build_rpartite_hypergraph(n: usize, r: usize) -> Result<UniformHypergraph> {
    if n == 0 || r < 2 {
        return Err(Error::invalid(format!(
            "r-partite hypergraph needs n >= 1 and r >= 2 (got n={n}, r={r})"
        )));
    }
    let edge_count = u32::try_from(r).ok().and_then(|r| n.checked_pow(r));
    let edge_count = check_size(edge_count)?;
    let mut edges = Vec::with_capacity(edge_count);
    let mut offsets = vec![0usize; r];
    for _ in 0..edge_count {
        edges.push(
            offsets
                .iter()
                .enumerate()
                .map(|(part, &j)| part * n + j)
                .collect::<Vec<_>>(),
        );
        for slot in offsets.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    UniformHypergraph::new(r * n, r, edges)
}

/// All `r`-subsets of `0..r*n`, in lexicographic order.
pub fn build_complete_hypergraph(n: usize, r: usize) -> Result<UniformHypergraph> {
    if n == 0 || r < 2 {
        return Err(Error::invalid(format!(
            "complete hypergraph needs n >= 1 and r >= 2 (got n={n}, r={r})"
        )));
    }
    let v = r
        .checked_mul(n)
        .ok_or_else(|| Error::invalid("vertex count overflows"))?;
    let count = crate::formulas::binomial(v as u64, r as u64);
    let count = usize::try_from(&count).ok();
    check_size(count)?;
    let mut edges = Vec::new();
    let mut comb: Vec<usize> = (0..r).collect();
    loop {
        edges.push(comb.clone());
        // advance to the next combination
        let mut i = r;
        while i > 0 && comb[i - 1] == v - r + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        comb[i - 1] += 1;
        for j in i..r {
            comb[j] = comb[j - 1] + 1;
        }
    }
    UniformHypergraph::new(v, r, edges)
}

fn check_size(edges: Option<usize>) -> Result<usize> {
    match edges {
        Some(m) if m <= MAX_BUILD_EDGES => Ok(m),
        Some(m) => Err(Error::invalid(format!(
            "{m} edges exceeds the builder limit of {MAX_BUILD_EDGES}"
        ))),
        None => Err(Error::invalid("edge count overflows")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_small() {
        let g = build_complete_bipartite(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = build_complete_bipartite(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(g.regular_degree(), Some(2));
        let g = build_complete_bipartite(3).unwrap();
        assert_eq!((g.edge_count(), g.regular_degree()), (9, Some(3)));
        assert_eq!(g.edge(5), [1, 5]);
        assert!(build_complete_bipartite(0).is_err());
    }

    #[test]
    fn complete_bipartite_is_regular_up_to_64() {
        for n in 1..=64 {
            let g = build_complete_bipartite(n).unwrap();
            assert!(g.degrees().iter().all(|&d| d == n), "n={n}");
        }
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(build_complete(3).unwrap().edge_count(), 3);
        assert_eq!(build_complete(2).unwrap().edge_count(), 1);
        let k4 = build_complete(4).unwrap();
        assert_eq!((k4.edge_count(), k4.regular_degree()), (6, Some(3)));
        assert_eq!(build_complete(1).unwrap().edge_count(), 0);
        assert!(build_complete(0).is_err());
    }

    #[test]
    fn rpartite_counts() {
        assert_eq!(build_rpartite_hypergraph(2, 2).unwrap().edge_count(), 4);
        let h = build_rpartite_hypergraph(2, 3).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (6, 8));
        let h = build_rpartite_hypergraph(1, 4).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edge(0), &[0, 1, 2, 3]);
        assert!(build_rpartite_hypergraph(0, 3).is_err());
        assert!(build_rpartite_hypergraph(2, 1).is_err());
    }

    #[test]
    fn rpartite_every_vertex_in_n_pow_r_minus_1_edges() {
        for n in 1..=4usize {
            for r in 2..=4usize {
                let h = build_rpartite_hypergraph(n, r).unwrap();
                assert_eq!(h.edge_count(), n.pow(r as u32));
                let per_vertex = n.pow(r as u32 - 1);
                assert!(h.degrees().iter().all(|&d| d == per_vertex), "n={n} r={r}");
                // every edge is a transversal
                for e in h.edges() {
                    for (part, &v) in e.iter().enumerate() {
                        assert_eq!(v / n, part);
                    }
                }
            }
        }
    }

    #[test]
    fn complete_hypergraph_counts() {
        assert_eq!(build_complete_hypergraph(1, 2).unwrap().edge_count(), 1);
        assert_eq!(build_complete_hypergraph(2, 2).unwrap().edge_count(), 6);
        let h = build_complete_hypergraph(2, 3).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (6, 20));
        assert!(build_complete_hypergraph(1, 1).is_err());
    }

    #[test]
    fn constructors_round_trip_through_text() {
        use crate::model::parse::{parse_graph, parse_hypergraph};
        for g in [
            build_complete_bipartite(3).unwrap(),
            build_complete(5).unwrap(),
            build_cycle(6).unwrap(),
        ] {
            let text = g.to_text();
            let back = parse_graph(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.to_text(), text);
        }
        for h in [
            build_rpartite_hypergraph(2, 3).unwrap(),
            build_complete_hypergraph(2, 3).unwrap(),
        ] {
            let text = h.to_text();
            let back = parse_hypergraph(&text).unwrap();
            assert_eq!(back, h);
            assert_eq!(back.to_text(), text);
        }
    }
}
