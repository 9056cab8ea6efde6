//! Closed-form expectations, evaluated exactly.
//!
//! Every value here is an [`ExactRational`]; no floating point enters any of
//! these paths. Binomials with a lower index outside `0..=a` are zero.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::rational::{from_biguint, reciprocal};
use crate::model::{ExactRational, FormulaInputs, Graph, KDistribution};

/// `C(a, b)` for `a >= 0`; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    binomial_big(&BigUint::from(a), b)
}

/// `C(a, b)` over signed arguments: zero for `b < 0` or `b > a`, an error
/// for `a < 0`.
pub fn binomial_checked(a: i64, b: i64) -> Result<BigUint> {
    if a < 0 {
        return Err(Error::invalid(format!(
            "binomial top index {a} is negative"
        )));
    }
    if b < 0 {
        return Ok(BigUint::zero());
    }
    Ok(binomial(a as u64, b as u64))
}

/// `C(a, b)` with a big top index and a machine-sized bottom index.
pub fn binomial_big(a: &BigUint, b: u64) -> BigUint {
    let b_big = BigUint::from(b);
    if &b_big > a {
        return BigUint::zero();
    }
    // use the smaller of b and a - b
    let complement = a - &b_big;
    let k = if complement < b_big {
        // complement < b fits in u64
        u64::try_from(&complement).expect("complement below a u64")
    } else {
        b
    };
    let base = a - BigUint::from(k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (&base + BigUint::from(i)) / BigUint::from(i);
    }
    acc
}

fn binomial_or_zero(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 {
        BigUint::zero()
    } else {
        binomial(a as u64, b as u64)
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Probability that a fixed copy of an `h`-edge, δ-regular target survives
/// into the stopped graph when the ambient graph is `(δ + Δ)`-regular:
/// `2 / C(h+Δ, h) - 1 / C(h+2Δ, h)`.
///
/// This is only correct for δ-regular targets; see [`general_copy_probability`]
/// for targets whose minimum degree is δ but that are not regular.
pub fn thm1_fraction(h: u64, big_delta: u64) -> Result<ExactRational> {
    if h == 0 {
        return Err(Error::invalid("h must be at least 1"));
    }
    Ok(two_over_minus_one_over(
        &binomial(h + big_delta, h),
        &binomial(h + 2 * big_delta, h),
    ))
}

fn two_over_minus_one_over(first: &BigUint, second: &BigUint) -> ExactRational {
    let two = ExactRational::from_integer(BigInt::from(2));
    two * reciprocal(first) - reciprocal(second)
}

/// Expected number of perfect matchings in the stopped subgraph of `K_{n,n}`
/// with δ = 1: `n! (2 / C(2n-1, n) - 1 / C(3n-2, n))`.
pub fn cor1_expected_matchings(n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let fraction = two_over_minus_one_over(&binomial(2 * n - 1, n), &binomial(3 * n - 2, n));
    Ok(from_biguint(&factorial(n)) * fraction)
}

/// Fraction of the perfect matchings of a `d`-regular graph on `2n` vertices
/// expected in the stopped subgraph, δ = 1.
pub fn cor2_matching_fraction(n: u64, d: u64) -> Result<ExactRational> {
    if n == 0 || d == 0 {
        return Err(Error::invalid(format!(
            "need n >= 1 and d >= 1 (got n={n}, d={d})"
        )));
    }
    if d > 2 * n - 1 {
        return Err(Error::invalid(format!(
            "no simple {d}-regular graph on {} vertices",
            2 * n
        )));
    }
    Ok(two_over_minus_one_over(
        &binomial(n + d - 1, n),
        &binomial(n + 2 * d - 2, n),
    ))
}

/// Fraction of the Hamiltonian cycles of a `d`-regular graph on `n` vertices
/// expected in the stopped subgraph, δ = 2.
pub fn cor3_hamcycle_fraction(n: u64, d: u64) -> Result<ExactRational> {
    if n < 3 || d < 2 {
        return Err(Error::invalid(format!(
            "need n >= 3 and d >= 2 (got n={n}, d={d})"
        )));
    }
    if d > n - 1 {
        return Err(Error::invalid(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    Ok(two_over_minus_one_over(
        &binomial(n + d - 2, n),
        &binomial(n + 2 * d - 4, n),
    ))
}

fn check_hyper_params(n: u64, r: u64) -> Result<()> {
    if n == 0 || r < 2 {
        return Err(Error::invalid(format!(
            "need n >= 1 and r >= 2 (got n={n}, r={r})"
        )));
    }
    Ok(())
}

fn alternating_sum(r: u64, term: impl Fn(u64) -> ExactRational) -> ExactRational {
    (1..=r).map(term).sum()
}

/// Signed `i`-th inclusion-exclusion term of the probability that a fixed
/// matching of the complete `r`-partite hypergraph survives:
/// `(-1)^(i-1) C(r, i) / C(n^r - (n-1)^i n^(r-i) + n - 1, n)`.
pub(crate) fn thm2_term(n: u64, r: u64, i: u64) -> ExactRational {
    let nb = BigUint::from(n);
    let r32 = r as u32;
    let i32_ = i as u32;
    let top = nb.pow(r32) - BigUint::from(n - 1).pow(i32_) * nb.pow(r32 - i32_) + &nb - 1u32;
    signed_term(r, i, &binomial_big(&top, n))
}

/// Signed `i`-th term for the complete `r`-uniform hypergraph on `rn`
/// vertices: `(-1)^(i-1) C(r, i) / C(C(nr, r) - C(nr-i, r) + n - 1, n)`.
pub(crate) fn thm3_term(n: u64, r: u64, i: u64) -> ExactRational {
    let top = binomial(n * r, r) - binomial(n * r - i, r) + BigUint::from(n - 1);
    signed_term(r, i, &binomial_big(&top, n))
}

fn signed_term(r: u64, i: u64, denominator: &BigUint) -> ExactRational {
    let magnitude = from_biguint(&binomial(r, i)) * reciprocal(denominator);
    if i % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// Expected number of perfect matchings in the stopped sub-hypergraph of the
/// complete `r`-partite `r`-uniform hypergraph with parts of size `n`, δ = 1.
pub fn thm2_expected_matchings(n: u64, r: u64) -> Result<ExactRational> {
    check_hyper_params(n, r)?;
    let total = factorial(n).pow(r as u32 - 1);
    Ok(from_biguint(&total) * alternating_sum(r, |i| thm2_term(n, r, i)))
}

/// Expected number of perfect matchings in the stopped sub-hypergraph of the
/// complete `r`-uniform hypergraph on `rn` vertices, δ = 1.
pub fn thm3_expected_matchings(n: u64, r: u64) -> Result<ExactRational> {
    check_hyper_params(n, r)?;
    let total = factorial(r * n) / (factorial(r).pow(n as u32) * factorial(n));
    Ok(from_biguint(&total) * alternating_sum(r, |i| thm3_term(n, r, i)))
}

/// Probability that a fixed `h`-edge copy `J` lies in the stopped graph with
/// `uv` as the stopping edge, where both endpoints have degree δ in `J` and
/// surpluses `Δ(u) = deg_G(u) - δ`, `Δ(v) = deg_G(v) - δ`:
///
/// `(1/h) (1/C(h+Δ(u), h) + 1/C(h+Δ(v), h) - 1/C(h+Δ(u)+Δ(v), h))`.
///
/// For `Δ(u) = Δ(v)` this is `(1/h)(2/C(h+Δ, h) - 1/C(h+2Δ, h))`.
pub fn per_edge_last_probability(h: u64, delta_u: u64, delta_v: u64) -> Result<ExactRational> {
    if h == 0 {
        return Err(Error::invalid("h must be at least 1"));
    }
    Ok(last_edge_probability(h, Some(delta_u), Some(delta_v)))
}

/// Same as [`per_edge_last_probability`], but an endpoint passed as `None`
/// cannot be the one that completes the minimum degree, so its term (and the
/// joint term) is dropped.
fn last_edge_probability(h: u64, delta_u: Option<u64>, delta_v: Option<u64>) -> ExactRational {
    let one_end = |d: u64| reciprocal(&binomial(h + d, h));
    let mut p = ExactRational::zero();
    if let Some(du) = delta_u {
        p += one_end(du);
    }
    if let Some(dv) = delta_v {
        p += one_end(dv);
    }
    if let (Some(du), Some(dv)) = (delta_u, delta_v) {
        p -= one_end(du + dv);
    }
    p / ExactRational::from_integer(BigInt::from(h))
}

/// Expected number of copies of a δ-regular `pattern` in the stopped
/// subgraph of an arbitrary `g`, given for each edge of `g` the number of
/// copies of the pattern passing through it.
pub fn remark_nonregular_expectation(
    g: &Graph,
    pattern: &Graph,
    delta: u32,
    copies_through_edge: &BTreeMap<usize, BigUint>,
) -> Result<ExactRational> {
    if delta == 0 {
        return Err(Error::invalid("δ must be at least 1"));
    }
    if pattern.vertex_count() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "pattern has {} vertices but the graph has {}",
            pattern.vertex_count(),
            g.vertex_count()
        )));
    }
    check_regular_pattern(pattern, delta)?;
    let delta = delta as usize;
    let min_degree = g.min_degree();
    if min_degree < delta {
        return Err(Error::precondition(format!(
            "graph minimum degree {min_degree} is below δ={delta}"
        )));
    }
    let h = pattern.edge_count() as u64;
    if h == 0 {
        return Err(Error::invalid("pattern has no edges"));
    }
    let deg = g.degrees();
    let mut total = ExactRational::zero();
    for (index, &[u, v]) in g.edges().iter().enumerate() {
        let count = copies_through_edge.get(&index).ok_or_else(|| {
            Error::invalid(format!("no copy count supplied for edge {index} ({u}-{v})"))
        })?;
        if count.is_zero() {
            continue;
        }
        let p = per_edge_last_probability(h, (deg[u] - delta) as u64, (deg[v] - delta) as u64)?;
        total += p * from_biguint(count);
    }
    Ok(total)
}

/// Fails with a precondition error unless every vertex of `pattern` has
/// degree exactly δ.
pub fn check_regular_pattern(pattern: &Graph, delta: u32) -> Result<()> {
    let delta = delta as usize;
    if pattern.degrees().iter().any(|&d| d != delta) {
        return Err(Error::precondition(format!(
            "the pattern must be {delta}-regular; for targets that are merely of minimum \
             degree {delta} the per-edge formula overcounts (K_3 with a spanning path, \
             δ=1: true probability 1/3, formula 1/2); use general_copy_probability per copy"
        )));
    }
    Ok(())
}

/// Exact `Pr(J ⊆ G_ω)` for a spanning subgraph `j` of `g` with minimum degree
/// at least δ.
///
/// `J` survives exactly when the process stops on the arrival of the last
/// edge of `J`. If that edge is `uv`, the process stops there iff `u` (or
/// `v`) reaches degree δ at that moment, which needs `deg_J(u) = δ` and every
/// other `G`-edge at `u` to arrive later. Endpoints with `deg_J > δ` therefore
/// contribute nothing, and the joint term applies only when both endpoints
/// sit at δ.
pub fn general_copy_probability(g: &Graph, j: &Graph, delta: u32) -> Result<ExactRational> {
    let (j_deg, h) = check_copy(g, j, delta)?;
    let g_deg = g.degrees();
    let delta = delta as usize;
    let mut total = ExactRational::zero();
    for &[u, v] in j.edges() {
        let surplus = |w: usize| {
            let at_threshold = cfg!(feature = "disable-threshold-correction") || j_deg[w] == delta;
            at_threshold.then(|| (g_deg[w] - delta) as u64)
        };
        total += last_edge_probability(h, surplus(u), surplus(v));
    }
    Ok(total)
}

/// The per-edge sum without the degree-δ condition on the endpoints. Agrees
/// with [`general_copy_probability`] for δ-regular `j` and overcounts
/// otherwise.
pub fn uncorrected_copy_probability(g: &Graph, j: &Graph, delta: u32) -> Result<ExactRational> {
    let (_, h) = check_copy(g, j, delta)?;
    let g_deg = g.degrees();
    let delta = delta as usize;
    let mut total = ExactRational::zero();
    for &[u, v] in j.edges() {
        total += last_edge_probability(
            h,
            Some((g_deg[u] - delta) as u64),
            Some((g_deg[v] - delta) as u64),
        );
    }
    Ok(total)
}

fn check_copy(g: &Graph, j: &Graph, delta: u32) -> Result<(Vec<usize>, u64)> {
    if delta == 0 {
        return Err(Error::invalid("δ must be at least 1"));
    }
    if g.embed_edges(j).is_none() {
        return Err(Error::precondition(
            "J is not a spanning subgraph of G (vertex count or edge set mismatch)",
        ));
    }
    let j_deg = j.degrees();
    let min_j = j_deg.iter().copied().min().unwrap_or(0);
    if min_j < delta as usize {
        return Err(Error::precondition(format!(
            "J has minimum degree {min_j}, below δ={delta}"
        )));
    }
    Ok((j_deg, j.edge_count() as u64))
}

/// `Pr(J ⊆ {e_1..e_k} and k(ω) = k)` for a fixed δ-regular copy `J` with `h`
/// edges inside a regular graph with `E` edges and surplus `Δ`:
///
/// `h (2 C(E-h-Δ, k-h) - C(E-h-2Δ, k-h)) / (E C(E-1, k-1))`,
///
/// the factorial form `(k-1)! (E-k)! / E!` cancelled to `1 / (E C(E-1, k-1))`.
/// A negative top index contributes zero.
pub fn contribution_at_k(edge_total: u64, h: u64, big_delta: u64, k: u64) -> Result<ExactRational> {
    let inputs = FormulaInputs::new(edge_total, h, big_delta)?;
    if !inputs.k_range().contains(&k) {
        return Err(Error::invalid(format!("k={k} outside [{h}, {edge_total}]")));
    }
    Ok(contribution_unchecked(inputs, k))
}

fn contribution_unchecked(inputs: FormulaInputs, k: u64) -> ExactRational {
    let FormulaInputs {
        edge_total: e,
        h,
        big_delta: d,
    } = inputs;
    let (e, h, d, k) = (e as i64, h as i64, d as i64, k as i64);
    let single = binomial_or_zero(e - h - d, k - h);
    let double = binomial_or_zero(e - h - 2 * d, k - h);
    // single >= double whenever single > 0, and both vanish together otherwise
    let numer = BigUint::from(h as u64) * (BigUint::from(2u32) * single - double);
    let denom = BigUint::from(e as u64) * binomial((e - 1) as u64, (k - 1) as u64);
    ExactRational::new(numer.into(), denom.into())
}

/// [`contribution_at_k`] for every `k` in `[h, E]`, zeros included.
pub fn contribution_distribution(edge_total: u64, h: u64, big_delta: u64) -> Result<KDistribution> {
    let inputs = FormulaInputs::new(edge_total, h, big_delta)?;
    let mut dist = KDistribution::new();
    for k in inputs.k_range() {
        dist.insert(k, contribution_unchecked(inputs, k));
    }
    Ok(dist)
}

/// Smallest `k` maximizing [`contribution_at_k`].
pub fn argmax_contribution(edge_total: u64, h: u64, big_delta: u64) -> Result<u64> {
    let dist = contribution_distribution(edge_total, h, big_delta)?;
    Ok(dist.argmax().expect("k range is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::{from_int, ratio};
    use crate::model::{build_complete, build_complete_bipartite, build_path};

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(1, 2), BigUint::zero());
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
        assert!(binomial_checked(-1, 0).is_err());
        assert_eq!(binomial_checked(4, -1).unwrap(), BigUint::zero());
        assert_eq!(binomial_checked(4, 2).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigUint::one()];
        for a in 1..=40u64 {
            let mut next = vec![BigUint::one(); a as usize + 1];
            for b in 1..a as usize {
                next[b] = &row[b - 1] + &row[b];
            }
            row = next;
            for b in 0..=a + 2 {
                let expected = row.get(b as usize).cloned().unwrap_or_default();
                assert_eq!(binomial(a, b), expected, "C({a},{b})");
            }
        }
    }

    #[test]
    fn thm1_examples() {
        assert_eq!(thm1_fraction(2, 0).unwrap(), from_int(1));
        assert_eq!(thm1_fraction(2, 1).unwrap(), ratio(1, 2));
        assert_eq!(thm1_fraction(4, 1).unwrap(), ratio(1, 3));
        assert_eq!(thm1_fraction(6, 5).unwrap(), ratio(101, 24024));
        assert!(thm1_fraction(0, 3).is_err());
    }

    #[test]
    fn thm1_strictly_decreasing_in_surplus() {
        for h in 1..=20 {
            let mut prev = thm1_fraction(h, 0).unwrap();
            assert_eq!(prev, from_int(1));
            for d in 1..=40 {
                let cur = thm1_fraction(h, d).unwrap();
                assert!(cur < prev, "h={h} Δ={d}");
                assert!(cur > ExactRational::zero());
                prev = cur;
            }
        }
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(cor1_expected_matchings(1).unwrap(), from_int(1));
        assert_eq!(cor1_expected_matchings(2).unwrap(), from_int(1));
        assert_eq!(cor1_expected_matchings(3).unwrap(), ratio(36, 35));
        assert_eq!(cor1_expected_matchings(4).unwrap(), ratio(44, 35));
        assert!(cor1_expected_matchings(0).is_err());

        assert_eq!(cor2_matching_fraction(1, 1).unwrap(), from_int(1));
        assert_eq!(cor2_matching_fraction(2, 3).unwrap(), ratio(4, 15));
        assert_eq!(cor2_matching_fraction(3, 3).unwrap(), ratio(6, 35));
        assert_eq!(
            cor2_matching_fraction(3, 3).unwrap(),
            cor1_expected_matchings(3).unwrap() / from_int(6)
        );
        assert!(cor2_matching_fraction(0, 1).is_err());
        assert!(cor2_matching_fraction(2, 0).is_err());

        assert_eq!(cor3_hamcycle_fraction(3, 2).unwrap(), from_int(1));
        assert_eq!(cor3_hamcycle_fraction(4, 3).unwrap(), ratio(1, 3));
        assert_eq!(cor3_hamcycle_fraction(5, 4).unwrap(), ratio(11, 126));
        assert_eq!(ratio(2, 21) - ratio(1, 126), ratio(11, 126));
        assert!(cor3_hamcycle_fraction(2, 2).is_err());
        assert!(cor3_hamcycle_fraction(5, 1).is_err());
    }

    #[test]
    fn hypergraph_theorems() {
        for r in 2..=6 {
            assert_eq!(thm2_expected_matchings(1, r).unwrap(), from_int(1));
            assert_eq!(thm3_expected_matchings(1, r).unwrap(), from_int(1));
        }
        assert_eq!(thm2_expected_matchings(2, 3).unwrap(), ratio(27, 35));
        assert_eq!(thm3_expected_matchings(2, 2).unwrap(), ratio(4, 5));
        assert!(thm2_expected_matchings(0, 3).is_err());
        assert!(thm3_expected_matchings(2, 1).is_err());
    }

    #[test]
    fn thm2_terms_sum_to_per_matching_probability() {
        // (2,3): 3/10 - 3/21 + 1/28
        assert_eq!(thm2_term(2, 3, 1), ratio(3, 10));
        assert_eq!(thm2_term(2, 3, 2), ratio(-1, 7));
        assert_eq!(thm2_term(2, 3, 3), ratio(1, 28));
        let p: ExactRational = (1..=3).map(|i| thm2_term(2, 3, i)).sum();
        assert_eq!(p * from_int(4), ratio(27, 35));
    }

    #[test]
    fn hypergraph_theorems_reduce_to_graph_case() {
        for n in 1..=30 {
            assert_eq!(
                thm2_expected_matchings(n, 2).unwrap(),
                cor1_expected_matchings(n).unwrap(),
                "n={n}"
            );
        }
        for n in 1..=15u64 {
            let matchings = factorial(2 * n) / (BigUint::from(2u32).pow(n as u32) * factorial(n));
            assert_eq!(
                thm3_expected_matchings(n, 2).unwrap(),
                from_biguint(&matchings) * cor2_matching_fraction(n, 2 * n - 1).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn per_edge_last_probability_examples() {
        assert_eq!(per_edge_last_probability(1, 0, 0).unwrap(), from_int(1));
        assert_eq!(per_edge_last_probability(2, 1, 1).unwrap(), ratio(1, 4));
        for h in 1..=8u64 {
            for d in 0..=6u64 {
                let per = per_edge_last_probability(h, d, d).unwrap();
                assert_eq!(per * from_int(h), thm1_fraction(h, d).unwrap());
            }
        }
        assert!(per_edge_last_probability(0, 1, 1).is_err());
        // symmetric in the two surpluses
        assert_eq!(
            per_edge_last_probability(3, 1, 4).unwrap(),
            per_edge_last_probability(3, 4, 1).unwrap()
        );
    }

    #[test]
    fn general_copy_probability_examples() {
        let k3 = build_complete(3).unwrap();
        assert_eq!(general_copy_probability(&k3, &k3, 2).unwrap(), from_int(1));

        let k22 = build_complete_bipartite(2).unwrap();
        let matching = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(
            general_copy_probability(&k22, &matching, 1).unwrap(),
            ratio(1, 2)
        );

        let path = build_path(3).unwrap();
        if cfg!(feature = "disable-threshold-correction") {
            assert_eq!(
                general_copy_probability(&k3, &path, 1).unwrap(),
                ratio(1, 2)
            );
        } else {
            assert_eq!(
                general_copy_probability(&k3, &path, 1).unwrap(),
                ratio(1, 3)
            );
        }
        assert_eq!(
            uncorrected_copy_probability(&k3, &path, 1).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(thm1_fraction(2, 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn general_copy_probability_errors() {
        let k3 = build_complete(3).unwrap();
        let path = build_path(3).unwrap();
        // J has a degree-1 vertex
        assert!(matches!(
            general_copy_probability(&k3, &path, 2),
            Err(Error::Precondition(_))
        ));
        let outside = build_path(4).unwrap();
        assert!(general_copy_probability(&k3, &outside, 1).is_err());
        let c4 = crate::model::build_cycle(4).unwrap();
        let k22 = build_complete_bipartite(2).unwrap();
        // 0-1 is not an edge of K_{2,2}
        assert!(general_copy_probability(&k22, &c4, 2).is_err());
        assert!(general_copy_probability(&k3, &k3, 0).is_err());
    }

    #[test]
    fn remark_matches_regular_case() {
        let k22 = build_complete_bipartite(2).unwrap();
        let pattern = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let counts: BTreeMap<usize, BigUint> = (0..4).map(|e| (e, BigUint::one())).collect();
        assert_eq!(
            remark_nonregular_expectation(&k22, &pattern, 1, &counts).unwrap(),
            from_int(1)
        );
        // regular reduction: c |E| / h * per-edge = total copies * fraction
        let k4 = build_complete(4).unwrap();
        let cycle = crate::model::build_cycle(4).unwrap();
        let counts: BTreeMap<usize, BigUint> = (0..6).map(|e| (e, BigUint::from(2u32))).collect();
        assert_eq!(
            remark_nonregular_expectation(&k4, &cycle, 2, &counts).unwrap(),
            from_int(3) * thm1_fraction(4, 1).unwrap()
        );
    }

    #[test]
    fn remark_errors() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let counts: BTreeMap<usize, BigUint> = (0..3).map(|e| (e, BigUint::one())).collect();
        let err = remark_nonregular_expectation(&star, &star, 1, &counts).unwrap_err();
        assert!(
            matches!(&err, Error::Precondition(m) if m.contains("K_3")),
            "{err}"
        );

        let k22 = build_complete_bipartite(2).unwrap();
        let pattern = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let partial: BTreeMap<usize, BigUint> = (0..3).map(|e| (e, BigUint::one())).collect();
        assert!(matches!(
            remark_nonregular_expectation(&k22, &pattern, 1, &partial),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(contribution_at_k(4, 2, 1, 2).unwrap(), ratio(1, 6));
        assert_eq!(contribution_at_k(4, 2, 1, 3).unwrap(), ratio(1, 3));
        assert_eq!(contribution_at_k(4, 2, 1, 4).unwrap(), from_int(0));
        assert!(contribution_at_k(4, 2, 1, 1).is_err());
        assert!(contribution_at_k(4, 2, 1, 5).is_err());

        let dist = contribution_distribution(4, 2, 1).unwrap();
        assert_eq!(dist.len(), 3);
        assert_eq!(dist.total(), ratio(1, 2));
        let single = contribution_distribution(5, 5, 0).unwrap();
        assert_eq!(single.iter().collect::<Vec<_>>(), vec![(5, &from_int(1))]);

        assert_eq!(argmax_contribution(4, 2, 1).unwrap(), 3);
        assert_eq!(argmax_contribution(7, 7, 0).unwrap(), 7);
    }

    #[test]
    fn contribution_totals_match_thm1_on_feasible_grid() {
        for h in 1..=12u64 {
            for d in 0..=12u64 {
                let expected = thm1_fraction(h, d).unwrap();
                for e in (h + 2 * d)..=60 {
                    let dist = contribution_distribution(e, h, d).unwrap();
                    assert_eq!(dist.total(), expected, "E={e} h={h} Δ={d}");
                }
            }
        }
    }

    #[test]
    fn argmax_is_a_true_maximum() {
        let k = argmax_contribution(100, 10, 9).unwrap();
        let predicted = 10.0 * 100.0 / 19.0;
        assert!((k as f64 - predicted).abs() <= 3.0, "k={k}");
        let dist = contribution_distribution(100, 10, 9).unwrap();
        let best = dist.get(k);
        for (j, q) in dist.iter() {
            assert!(q <= &best);
            if j < k {
                assert!(q < &best);
            }
        }
    }
}
