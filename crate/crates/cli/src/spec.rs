//! Ambient builder specs: `knn:N`, `kn:N`, `rpartite:N:R`, `krn:N:R`, or a
//! path to a graph or hypergraph file.

use mindeg_core::model::{
    build_complete, build_complete_bipartite, build_complete_hypergraph, build_rpartite_hypergraph,
    parse_ambient,
};
use mindeg_core::Ambient;

use crate::commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builder {
    Knn(usize),
    Kn(usize),
    Rpartite(usize, usize),
    Krn(usize, usize),
    File,
}

pub fn resolve(spec: &str) -> Result<(Builder, Ambient), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<usize, CliError> {
        s.parse()
            .map_err(|_| CliError::usage(format!("bad number {s:?} in ambient spec {spec:?}")))
    };
    let builder = match parts.as_slice() {
        ["knn", n] => Builder::Knn(num(n)?),
        ["kn", n] => Builder::Kn(num(n)?),
        ["rpartite", n, r] => Builder::Rpartite(num(n)?, num(r)?),
        ["krn", n, r] => Builder::Krn(num(n)?, num(r)?),
        [name, ..] if ["knn", "kn", "rpartite", "krn"].contains(name) => {
            return Err(CliError::usage(format!("malformed ambient spec {spec:?}")))
        }
        _ => Builder::File,
    };
    let ambient = match builder {
        Builder::Knn(n) => build_complete_bipartite(n)?.into(),
        Builder::Kn(n) => build_complete(n)?.into(),
        Builder::Rpartite(n, r) => build_rpartite_hypergraph(n, r)?.into(),
        Builder::Krn(n, r) => build_complete_hypergraph(n, r)?.into(),
        Builder::File => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| CliError::usage(format!("cannot read {spec:?}: {e}")))?;
            parse_ambient(&text)?
        }
    };
    Ok((builder, ambient))
}
