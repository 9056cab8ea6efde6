//! Text formats.
//!
//! Graph: a header `V M` followed by `M` lines `u v`.
//! Hypergraph: a header `V R M` followed by `M` lines of `R` vertices.
//! Vertices are 0-based, tokens are whitespace separated, and anything after
//! `#` on a line is ignored, as are blank lines.

use super::{Ambient, Graph, UniformHypergraph};
use crate::error::{Error, Result};

/// Non-empty content lines as `(1-based line number, tokens)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_num(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {token:?}"),
    })
}

fn parse_row(line: usize, tokens: &[&str], width: usize, what: &str) -> Result<Vec<usize>> {
    if tokens.len() != width {
        return Err(Error::Parse {
            line,
            message: format!("expected {width} fields for {what}, found {}", tokens.len()),
        });
    }
    tokens.iter().map(|t| parse_num(line, t)).collect()
}

fn attach_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::InvalidParameter(message) => Error::Parse { line, message },
        other => other,
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let header = parse_row(hline, &header, 2, "graph header `V M`")?;
    let (vertex_count, edge_count) = (header[0], header[1]);
    let mut graph = Graph::new(vertex_count, std::iter::empty())?;
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if graph.edge_count() == edge_count {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {edge_count} edges"),
            });
        }
        let row = parse_row(line, &tokens, 2, "an edge `u v`")?;
        graph.push_edge(row[0], row[1]).map_err(attach_line(line))?;
    }
    if graph.edge_count() < edge_count {
        return Err(Error::Parse {
            line: last_line,
            message: format!(
                "declared {edge_count} edges but found {}",
                graph.edge_count()
            ),
        });
    }
    Ok(graph)
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let header = parse_row(hline, &header, 3, "hypergraph header `V R M`")?;
    let (vertex_count, arity, edge_count) = (header[0], header[1], header[2]);
    if arity < 2 {
        return Err(Error::Parse {
            line: hline,
            message: format!("arity must be at least 2, got {arity}"),
        });
    }
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(edge_count);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if edges.len() == edge_count {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {edge_count} edges"),
            });
        }
        let row = parse_row(line, &tokens, arity, "a hyperedge")?;
        UniformHypergraph::new(vertex_count, arity, [&row]).map_err(attach_line(line))?;
        let mut key = row.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {row:?}"),
            });
        }
        edges.push(row);
    }
    if edges.len() < edge_count {
        return Err(Error::Parse {
            line: last_line,
            message: format!("declared {edge_count} edges but found {}", edges.len()),
        });
    }
    UniformHypergraph::new(vertex_count, arity, &edges)
}

/// Reads either format, choosing by the width of the header line.
pub fn parse_ambient(text: &str) -> Result<Ambient> {
    let width = content_lines(text).next().map(|(_, t)| t.len());
    match width {
        Some(3) => parse_hypergraph(text).map(Ambient::Hypergraph),
        _ => parse_graph(text).map(Ambient::Graph),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k2_and_k3() {
        let g = parse_graph("2 1\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edges()), (2, &[[0, 1]][..]));
        let g = parse_graph("3 3\n0 1\n0 2\n1 2").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# triangle\n3 3 # header\n\n0 1\n1 2 # second\n2 0\n").unwrap();
        assert_eq!(g.edges(), &[[0, 1], [1, 2], [0, 2]]);
    }

    #[test]
    fn duplicate_edge_names_its_line() {
        let err = parse_graph("3 2\n0 1\n0 1").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_graph("3 2\n0 1\n1 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_graph("3 1\n1 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph("3 2\n0 1"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn hypergraph_format() {
        let h = parse_hypergraph("6 3 2\n0 1 2\n5 4 3\n").unwrap();
        assert_eq!(h.edge(1), &[3, 4, 5]);
        assert!(matches!(
            parse_hypergraph("6 3 2\n0 1 2\n2 1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_hypergraph("6 3 1\n0 0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_ambient("6 3 1\n0 1 2\n"),
            Ok(Ambient::Hypergraph(_))
        ));
        assert!(matches!(parse_ambient("2 1\n0 1\n"), Ok(Ambient::Graph(_))));
    }
}
