//! Exact counters for the target structures.
//!
//! All counters return exact integers and do not depend on the order in
//! which the input lists its edges.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Ambient, Graph, UniformHypergraph};

/// Largest side for the permanent.
pub const MAX_PERMANENT_SIDE: usize = 30;
/// Largest vertex count for bitmask backtracking.
pub const MAX_MASK_VERTICES: usize = 64;
/// Largest vertex count for the Hamiltonian-cycle subset DP.
pub const MAX_HAMILTONIAN_VERTICES: usize = 20;
/// Largest vertex count for the generic copy enumerator.
pub const MAX_GENERIC_COPY_VERTICES: usize = 10;
/// Largest vertex count for the specialised copy enumerators.
pub const MAX_SPECIAL_COPY_VERTICES: usize = 24;

/// Perfect matchings of a bipartite graph with parts `0..left_size` and
/// `left_size..V`: the permanent of its biadjacency matrix, by Ryser's
/// inclusion-exclusion over column subsets visited in Gray-code order.
pub fn count_bipartite_matchings(g: &Graph, left_size: usize) -> Result<BigUint> {
    let n = left_size;
    if g.vertex_count() != 2 * n {
        return Err(Error::invalid(format!(
            "parts must have equal size: left {n}, right {}",
            g.vertex_count().saturating_sub(n)
        )));
    }
    if n > MAX_PERMANENT_SIDE {
        return Err(Error::size_cap("permanent side", MAX_PERMANENT_SIDE, n));
    }
    let mut rows = vec![0u64; n];
    for &[u, v] in g.edges() {
        // u < v, so a crossing edge has u on the left
        if u >= n || v < n {
            return Err(Error::invalid(format!(
                "edge {u}-{v} does not cross the bipartition"
            )));
        }
        rows[u] |= 1 << (v - n);
    }
    Ok(ryser_permanent(&rows, n))
}

fn ryser_permanent(rows: &[u64], n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut row_sums = vec![0i64; n];
    let mut in_set = 0u64;
    let mut total = BigInt::zero();
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let bit = 1u64 << col;
        in_set ^= bit;
        let sign = if in_set & bit != 0 { 1 } else { -1 };
        for (sum, &row) in row_sums.iter_mut().zip(rows) {
            if row & bit != 0 {
                *sum += sign;
            }
        }
        let product = product_of(&row_sums);
        if product.is_zero() {
            continue;
        }
        if in_set.count_ones().is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    total
        .to_biguint()
        .expect("a permanent of a 0/1 matrix is nonnegative")
}

fn product_of(values: &[i64]) -> BigInt {
    let mut acc: i128 = 1;
    for (i, &x) in values.iter().enumerate() {
        if x == 0 {
            return BigInt::zero();
        }
        match acc.checked_mul(x as i128) {
            Some(p) => acc = p,
            None => {
                return values[i..]
                    .iter()
                    .fold(BigInt::from(acc), |p, &y| p * BigInt::from(y))
            }
        }
    }
    BigInt::from(acc)
}

fn adjacency_masks(g: &Graph) -> Result<Vec<u64>> {
    if g.vertex_count() > MAX_MASK_VERTICES {
        return Err(Error::size_cap(
            "vertex count",
            MAX_MASK_VERTICES,
            g.vertex_count(),
        ));
    }
    let mut adj = vec![0u64; g.vertex_count()];
    for &[u, v] in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Perfect matchings of a general graph by backtracking on the lowest
/// uncovered vertex. Odd vertex counts give zero.
pub fn count_perfect_matchings(g: &Graph) -> Result<BigUint> {
    if g.vertex_count() % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let adj = adjacency_masks(g)?;
    fn rec(uncovered: u64, adj: &[u64]) -> u128 {
        if uncovered == 0 {
            return 1;
        }
        let v = uncovered.trailing_zeros() as usize;
        let rest = uncovered & !(1 << v);
        let mut partners = adj[v] & rest;
        let mut count = 0;
        while partners != 0 {
            let w = partners.trailing_zeros();
            partners &= partners - 1;
            count += rec(rest & !(1 << w), adj);
        }
        count
    }
    Ok(BigUint::from(rec(full_mask(g.vertex_count()), &adj)))
}

/// Undirected Hamiltonian cycles, each counted once, by a subset DP over
/// paths leaving vertex 0. Fewer than three vertices give zero.
pub fn count_hamiltonian_cycles(g: &Graph) -> Result<BigUint> {
    let v = g.vertex_count();
    if v < 3 {
        return Ok(BigUint::zero());
    }
    if v > MAX_HAMILTONIAN_VERTICES {
        return Err(Error::size_cap("vertex count", MAX_HAMILTONIAN_VERTICES, v));
    }
    let adj = adjacency_masks(g)?;
    // vertices 1..v are bits 0..v-1 of the subset index
    let m = v - 1;
    let states = 1usize << m;
    let mut paths = vec![0u64; states * m];
    for end in 0..m {
        if adj[0] & (1 << (end + 1)) != 0 {
            paths[(1 << end) * m + end] = 1;
        }
    }
    for set in 1..states {
        for end in 0..m {
            let here = paths[set * m + end];
            if here == 0 {
                continue;
            }
            let mut next = (adj[end + 1] >> 1) & !(set as u64) & full_mask(m);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                paths[(set | 1 << w) * m + w] += here;
            }
        }
    }
    let full = states - 1;
    let closing: u128 = (0..m)
        .filter(|&end| adj[0] & (1 << (end + 1)) != 0)
        .map(|end| paths[full * m + end] as u128)
        .sum();
    Ok(BigUint::from(closing / 2))
}

/// Perfect matchings (vertex partitions into edges) of a uniform hypergraph.
/// Zero when the arity does not divide the vertex count.
pub fn count_hypergraph_matchings(hg: &UniformHypergraph) -> Result<BigUint> {
    let v = hg.vertex_count();
    if !v.is_multiple_of(hg.arity()) {
        return Ok(BigUint::zero());
    }
    if v > MAX_MASK_VERTICES {
        return Err(Error::size_cap("vertex count", MAX_MASK_VERTICES, v));
    }
    let mut by_low = vec![Vec::new(); v];
    for e in hg.edges() {
        let mask = e.iter().fold(0u64, |m, &x| m | 1 << x);
        // edges are sorted, so e[0] is the lowest vertex
        by_low[e[0]].push(mask);
    }
    fn rec(uncovered: u64, by_low: &[Vec<u64>]) -> u128 {
        if uncovered == 0 {
            return 1;
        }
        let v = uncovered.trailing_zeros() as usize;
        by_low[v]
            .iter()
            .filter(|&&e| e & !uncovered == 0)
            .map(|&e| rec(uncovered & !e, by_low))
            .sum()
    }
    Ok(BigUint::from(rec(full_mask(v), &by_low)))
}

/// What to count inside a stopped graph or hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Perfect matchings of a bipartite graph with left part `0..left_size`.
    BipartiteMatchings {
        left_size: usize,
    },
    PerfectMatchings,
    HamiltonianCycles,
    HypergraphMatchings,
}

const SIMULATION_HINT: &str =
    "; estimate the inclusion probability of one copy and scale by the copy count instead";

impl Target {
    /// Checks that the target applies to `ambient` and that counting it on
    /// every sampled subgraph stays within the per-trial size caps.
    pub fn check(&self, ambient: &Ambient) -> Result<()> {
        let v = ambient.vertex_count();
        let (what, limit, size) = match (self, ambient) {
            (Target::HypergraphMatchings, Ambient::Hypergraph(_)) => ("vertex count", 24, v),
            (Target::HypergraphMatchings, Ambient::Graph(_)) => {
                return Err(Error::invalid(
                    "hypergraph matchings need a hypergraph ambient",
                ))
            }
            (_, Ambient::Hypergraph(_)) => {
                return Err(Error::invalid(format!("{self:?} needs a graph ambient")))
            }
            (Target::BipartiteMatchings { left_size }, Ambient::Graph(g)) => {
                if 2 * left_size != g.vertex_count() {
                    return Err(Error::invalid(format!(
                        "left part {left_size} is not half of {} vertices",
                        g.vertex_count()
                    )));
                }
                ("permanent side", 20, *left_size)
            }
            (Target::PerfectMatchings, Ambient::Graph(_)) => ("vertex count", 24, v),
            (Target::HamiltonianCycles, Ambient::Graph(_)) => ("vertex count", 16, v),
        };
        if size > limit {
            return Err(Error::SizeCap {
                what,
                limit,
                actual: size,
                hint: SIMULATION_HINT,
            });
        }
        Ok(())
    }

    /// Count of the target in the spanning sub-structure of `ambient` formed
    /// by the given edge positions.
    pub fn count_in(&self, ambient: &Ambient, edges: &[usize]) -> Result<BigUint> {
        match (self, ambient) {
            (Target::HypergraphMatchings, Ambient::Hypergraph(h)) => {
                count_hypergraph_matchings(&h.sub_hypergraph(edges)?)
            }
            (Target::BipartiteMatchings { left_size }, Ambient::Graph(g)) => {
                count_bipartite_matchings(&g.spanning_subgraph(edges)?, *left_size)
            }
            (Target::PerfectMatchings, Ambient::Graph(g)) => {
                count_perfect_matchings(&g.spanning_subgraph(edges)?)
            }
            (Target::HamiltonianCycles, Ambient::Graph(g)) => {
                count_hamiltonian_cycles(&g.spanning_subgraph(edges)?)
            }
            _ => Err(Error::invalid(format!(
                "{self:?} does not apply to this ambient"
            ))),
        }
    }

    /// Count in the whole ambient structure.
    pub fn count_total(&self, ambient: &Ambient) -> Result<BigUint> {
        let all: Vec<usize> = (0..ambient.edge_count()).collect();
        self.count_in(ambient, &all)
    }
}

/// Shapes with a dedicated copy enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternShape {
    PerfectMatching,
    HamiltonianCycle,
    HamiltonianPath,
    Other,
}

pub fn classify_pattern(h: &Graph) -> PatternShape {
    let v = h.vertex_count();
    let deg = h.degrees();
    if v >= 2 && v.is_multiple_of(2) && deg.iter().all(|&d| d == 1) {
        return PatternShape::PerfectMatching;
    }
    if v >= 3 && deg.iter().all(|&d| d == 2) && is_connected(h) {
        return PatternShape::HamiltonianCycle;
    }
    if v >= 2 && h.edge_count() == v - 1 && deg.iter().all(|&d| d <= 2) && is_connected(h) {
        return PatternShape::HamiltonianPath;
    }
    PatternShape::Other
}

fn is_connected(g: &Graph) -> bool {
    let v = g.vertex_count();
    if v == 0 {
        return true;
    }
    let adj = g.neighbors();
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every spanning subgraph of `g` isomorphic to `h`, each given as the
/// sorted list of its `g`-edge positions. The result is deduplicated and in
/// lexicographic order.
pub fn enumerate_spanning_copies(g: &Graph, h: &Graph) -> Result<Vec<Vec<usize>>> {
    if g.vertex_count() != h.vertex_count() {
        return Err(Error::invalid(format!(
            "vertex counts differ: G has {}, H has {}",
            g.vertex_count(),
            h.vertex_count()
        )));
    }
    let shape = classify_pattern(h);
    let v = g.vertex_count();
    let copies = match shape {
        PatternShape::Other => {
            if v > MAX_GENERIC_COPY_VERTICES {
                return Err(Error::size_cap(
                    "vertex count for generic copy enumeration",
                    MAX_GENERIC_COPY_VERTICES,
                    v,
                ));
            }
            generic_copies(g, h)
        }
        _ if v > MAX_SPECIAL_COPY_VERTICES => {
            return Err(Error::size_cap(
                "vertex count for copy enumeration",
                MAX_SPECIAL_COPY_VERTICES,
                v,
            ))
        }
        PatternShape::PerfectMatching => matching_copies(g),
        PatternShape::HamiltonianCycle => hamiltonian_copies(g, true),
        PatternShape::HamiltonianPath => hamiltonian_copies(g, false),
    };
    Ok(copies.into_iter().collect())
}

/// Number of listed copies through each edge of `g`; every edge appears.
pub fn copies_through_edge(g: &Graph, copies: &[Vec<usize>]) -> BTreeMap<usize, BigUint> {
    let mut counts: BTreeMap<usize, BigUint> =
        (0..g.edge_count()).map(|e| (e, BigUint::zero())).collect();
    for copy in copies {
        for &e in copy {
            *counts.entry(e).or_default() += 1u32;
        }
    }
    counts
}

fn sorted(mut edges: Vec<usize>) -> Vec<usize> {
    edges.sort_unstable();
    edges
}

fn matching_copies(g: &Graph) -> BTreeSet<Vec<usize>> {
    let adj = g.neighbors();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        uncovered: &mut Vec<bool>,
        g: &Graph,
        adj: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let Some(v) = uncovered.iter().position(|&u| u) else {
            out.insert(sorted(chosen.clone()));
            return;
        };
        uncovered[v] = false;
        for &w in &adj[v] {
            if uncovered[w] {
                uncovered[w] = false;
                chosen.push(g.edge_index(v, w).expect("adjacent"));
                rec(uncovered, g, adj, chosen, out);
                chosen.pop();
                uncovered[w] = true;
            }
        }
        uncovered[v] = true;
    }
    if g.vertex_count().is_multiple_of(2) {
        let mut uncovered = vec![true; g.vertex_count()];
        rec(&mut uncovered, g, &adj, &mut chosen, &mut out);
    }
    out
}

/// Hamiltonian cycles (`closed`) or paths. Cycles are rooted at vertex 0 and
/// kept when the second vertex is smaller than the last; paths are kept when
/// the start is smaller than the end.
fn hamiltonian_copies(g: &Graph, closed: bool) -> BTreeSet<Vec<usize>> {
    let v = g.vertex_count();
    let adj = g.neighbors();
    let mut out = BTreeSet::new();
    let mut visited = vec![false; v];
    let mut path = Vec::with_capacity(v);

    fn extend(
        g: &Graph,
        adj: &[Vec<usize>],
        closed: bool,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let v = visited.len();
        let last = *path.last().expect("nonempty path");
        if path.len() == v {
            let keep = if closed {
                path[1] < path[v - 1] && g.has_edge(last, path[0])
            } else {
                path[0] < last
            };
            if keep {
                let mut edges: Vec<usize> = path
                    .windows(2)
                    .map(|w| g.edge_index(w[0], w[1]).expect("adjacent"))
                    .collect();
                if closed {
                    edges.push(g.edge_index(last, path[0]).expect("adjacent"));
                }
                out.insert(sorted(edges));
            }
            return;
        }
        for &w in &adj[last] {
            if !visited[w] {
                visited[w] = true;
                path.push(w);
                extend(g, adj, closed, visited, path, out);
                path.pop();
                visited[w] = false;
            }
        }
    }

    let starts: Vec<usize> = if closed { vec![0] } else { (0..v).collect() };
    for s in starts {
        visited[s] = true;
        path.push(s);
        extend(g, &adj, closed, &mut visited, &mut path, &mut out);
        path.pop();
        visited[s] = false;
    }
    out
}

/// Injective maps of `h`'s vertices into `g`'s that carry edges to edges,
/// pruned by degree; each image edge set is one copy.
fn generic_copies(g: &Graph, h: &Graph) -> BTreeSet<Vec<usize>> {
    let v = g.vertex_count();
    let g_deg = g.degrees();
    let h_deg = h.degrees();
    let h_adj = h.neighbors();
    // place high-degree pattern vertices first
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(h_deg[x]));
    let mut image = vec![usize::MAX; v];
    let mut used = vec![false; v];
    let mut out = BTreeSet::new();

    struct Ctx<'a> {
        g: &'a Graph,
        h: &'a Graph,
        g_deg: Vec<usize>,
        h_deg: Vec<usize>,
        h_adj: Vec<Vec<usize>>,
        order: Vec<usize>,
    }

    fn place(
        ctx: &Ctx,
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if depth == ctx.order.len() {
            let edges = ctx
                .h
                .edges()
                .iter()
                .map(|&[a, b]| ctx.g.edge_index(image[a], image[b]).expect("checked"))
                .collect();
            out.insert(sorted(edges));
            return;
        }
        let x = ctx.order[depth];
        for y in 0..used.len() {
            if used[y] || ctx.g_deg[y] < ctx.h_deg[x] {
                continue;
            }
            let fits = ctx.h_adj[x]
                .iter()
                .all(|&n| image[n] == usize::MAX || ctx.g.has_edge(y, image[n]));
            if !fits {
                continue;
            }
            used[y] = true;
            image[x] = y;
            place(ctx, depth + 1, image, used, out);
            image[x] = usize::MAX;
            used[y] = false;
        }
    }

    let ctx = Ctx {
        g,
        h,
        g_deg,
        h_deg,
        h_adj,
        order,
    };
    place(&ctx, 0, &mut image, &mut used, &mut out);
    out
}
