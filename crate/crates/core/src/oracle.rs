//! Ground truth by exhaustive enumeration of every ordering of a tiny
//! ambient edge set.
//!
//! Orderings are visited in plain lexicographic order, one contiguous block
//! per leading edge, and each is walked until it stops. The only thing kept
//! per ordering is the set of edges in its stopped prefix, tallied as an
//! exact count; every probability is a tally divided once by `m!`.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::counting::Target;
use crate::error::{Error, Result};
use crate::formulas::factorial;
use crate::model::{Ambient, ExactRational, KDistribution, ThresholdParams};

/// Largest edge count for inclusion probabilities and graph targets.
pub const MAX_ORACLE_EDGES: usize = 10;
/// Largest edge count when counting hypergraph targets per prefix.
pub const MAX_ORACLE_HYPERGRAPH_EDGES: usize = 8;

/// Number of orderings whose stopped prefix is exactly each edge subset,
/// indexed by subset bitmask. Sums to `m!`.
pub fn prefix_set_counts(ambient: &Ambient, delta: u32) -> Result<Vec<u64>> {
    let m = ambient.edge_count();
    if m > MAX_ORACLE_EDGES {
        return Err(Error::size_cap("oracle edge count", MAX_ORACLE_EDGES, m));
    }
    let params = ThresholdParams::new(delta)?;
    ambient.check_threshold(params)?;
    let delta = delta as usize;
    let edges: Vec<Vec<usize>> = (0..m).map(|e| ambient.edge_vertices(e).to_vec()).collect();
    let vertex_count = ambient.vertex_count();

    let count_block = |first: usize| -> Vec<u64> {
        let mut counts = vec![0u64; 1 << m];
        let mut order: Vec<usize> = std::iter::once(first)
            .chain((0..m).filter(|&e| e != first))
            .collect();
        let mut degree = vec![0usize; vertex_count];
        loop {
            degree.iter_mut().for_each(|d| *d = 0);
            let mut below = vertex_count;
            let mut mask = 0usize;
            for &e in &order {
                if below == 0 {
                    break;
                }
                mask |= 1 << e;
                for &v in &edges[e] {
                    degree[v] += 1;
                    if degree[v] == delta {
                        below -= 1;
                    }
                }
            }
            counts[mask] += 1;
            if !next_permutation(&mut order[1..]) {
                break;
            }
        }
        counts
    };

    if m == 0 {
        let mut counts = vec![0u64; 1];
        counts[0] = 1;
        return Ok(counts);
    }
    Ok((0..m).into_par_iter().map(count_block).reduce(
        || vec![0u64; 1 << m],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}

/// Rearranges into the next lexicographic permutation; false after the last.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len())
        .rev()
        .find(|&j| xs[j] > xs[i])
        .expect("pivot");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

fn edge_set_mask(ambient: &Ambient, j: &[usize]) -> Result<usize> {
    ambient.check_edge_indices(j)?;
    Ok(j.iter().fold(0usize, |m, &e| m | 1 << e))
}

fn over_orderings(tally: BigUint, m: usize) -> ExactRational {
    ExactRational::new(tally.into(), factorial(m as u64).into())
}

/// `Pr(J ⊆ G_ω)` by counting orderings.
pub fn exhaustive_inclusion_probability(
    ambient: &Ambient,
    delta: u32,
    j: &[usize],
) -> Result<ExactRational> {
    let counts = prefix_set_counts(ambient, delta)?;
    let want = edge_set_mask(ambient, j)?;
    let hits: u64 = counts
        .iter()
        .enumerate()
        .filter(|&(mask, _)| mask & want == want)
        .map(|(_, &c)| c)
        .sum();
    Ok(over_orderings(BigUint::from(hits), ambient.edge_count()))
}

/// Expected count of `target` in the stopped structure, averaged over all
/// orderings.
pub fn exhaustive_expected_count(
    ambient: &Ambient,
    delta: u32,
    target: Target,
) -> Result<ExactRational> {
    let m = ambient.edge_count();
    if matches!(ambient, Ambient::Hypergraph(_)) && m > MAX_ORACLE_HYPERGRAPH_EDGES {
        return Err(Error::size_cap(
            "oracle hypergraph edge count",
            MAX_ORACLE_HYPERGRAPH_EDGES,
            m,
        ));
    }
    target.check(ambient)?;
    let counts = prefix_set_counts(ambient, delta)?;
    let mut total = BigUint::zero();
    for (mask, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let edges: Vec<usize> = (0..m).filter(|&e| mask & (1 << e) != 0).collect();
        total += target.count_in(ambient, &edges)? * c;
    }
    Ok(over_orderings(total, m))
}

/// `k ↦ Pr(J ⊆ G_ω and k(ω) = k)`, listing only stopping times with
/// positive mass.
pub fn exhaustive_k_distribution(
    ambient: &Ambient,
    delta: u32,
    j: &[usize],
) -> Result<KDistribution> {
    let counts = prefix_set_counts(ambient, delta)?;
    let want = edge_set_mask(ambient, j)?;
    let m = ambient.edge_count();
    let mut by_k = vec![0u64; m + 1];
    for (mask, &c) in counts.iter().enumerate() {
        if mask & want == want {
            by_k[mask.count_ones() as usize] += c;
        }
    }
    let mut dist = KDistribution::new();
    for (k, &c) in by_k.iter().enumerate() {
        if c > 0 {
            dist.insert(k as u64, over_orderings(BigUint::from(c), m));
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{contribution_distribution, thm1_fraction};
    use crate::model::rational::{from_int, ratio};
    use crate::model::{build_complete, build_complete_bipartite, build_cycle};

    fn k22() -> Ambient {
        build_complete_bipartite(2).unwrap().into()
    }

    #[test]
    fn lexicographic_permutations_are_complete() {
        let mut xs = vec![0, 1, 2, 3];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            assert!(seen.last().unwrap() < &xs);
            seen.push(xs.clone());
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn prefix_counts_total_m_factorial() {
        let k3: Ambient = build_complete(3).unwrap().into();
        let counts = prefix_set_counts(&k3, 1).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), 6);
        // every 2-edge subset is the stopped prefix of exactly 2 orderings
        for mask in [0b011, 0b101, 0b110] {
            assert_eq!(counts[mask], 2);
        }
        let k4: Ambient = build_complete(4).unwrap().into();
        assert_eq!(prefix_set_counts(&k4, 2).unwrap().iter().sum::<u64>(), 720);
    }

    #[test]
    fn inclusion_examples() {
        // edges of K_{2,2}: 0=(0,2) 1=(0,3) 2=(1,2) 3=(1,3)
        assert_eq!(
            exhaustive_inclusion_probability(&k22(), 1, &[0, 3]).unwrap(),
            ratio(1, 2)
        );
        let k3: Ambient = build_complete(3).unwrap().into();
        assert_eq!(
            exhaustive_inclusion_probability(&k3, 1, &[0, 1]).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            exhaustive_inclusion_probability(&k3, 2, &[0, 1, 2]).unwrap(),
            from_int(1)
        );
        assert_eq!(
            exhaustive_inclusion_probability(&k3, 1, &[]).unwrap(),
            from_int(1)
        );
        assert!(exhaustive_inclusion_probability(&k3, 1, &[3]).is_err());
    }

    #[test]
    fn size_caps_and_thresholds() {
        let k5: Ambient = build_complete(5).unwrap().into();
        assert!(exhaustive_inclusion_probability(&k5, 1, &[]).is_ok());
        let k6: Ambient = build_complete(6).unwrap().into();
        assert!(matches!(
            exhaustive_inclusion_probability(&k6, 1, &[]),
            Err(Error::SizeCap { .. })
        ));
        assert!(matches!(
            exhaustive_inclusion_probability(&k5, 5, &[]),
            Err(Error::UnreachableThreshold { .. })
        ));
    }

    #[test]
    fn k_distributions() {
        let d = exhaustive_k_distribution(&k22(), 1, &[0, 3]).unwrap();
        assert_eq!(
            d.iter().collect::<Vec<_>>(),
            vec![(2, &ratio(1, 6)), (3, &ratio(1, 3))]
        );
        assert!(d.same_masses(&contribution_distribution(4, 2, 1).unwrap()));
        let k3: Ambient = build_complete(3).unwrap().into();
        let d = exhaustive_k_distribution(&k3, 2, &[0, 1, 2]).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(3, &from_int(1))]);
        assert_eq!(
            d.total(),
            exhaustive_inclusion_probability(&k3, 2, &[0, 1, 2]).unwrap()
        );
    }

    #[test]
    fn hamiltonian_cycle_in_k4_matches_closed_form() {
        let k4 = build_complete(4).unwrap();
        let c4 = build_cycle(4).unwrap();
        let j = k4.embed_edges(&c4).unwrap();
        let amb: Ambient = k4.into();
        assert_eq!(
            exhaustive_inclusion_probability(&amb, 2, &j).unwrap(),
            thm1_fraction(4, 1).unwrap()
        );
        assert!(exhaustive_k_distribution(&amb, 2, &j)
            .unwrap()
            .same_masses(&contribution_distribution(6, 4, 1).unwrap()));
        assert_eq!(
            exhaustive_expected_count(&amb, 2, Target::HamiltonianCycles).unwrap(),
            from_int(1)
        );
    }

    #[test]
    fn expected_counts() {
        let k4: Ambient = build_complete(4).unwrap().into();
        assert_eq!(
            exhaustive_expected_count(&k4, 1, Target::PerfectMatchings).unwrap(),
            ratio(4, 5)
        );
        assert_eq!(
            exhaustive_expected_count(&k22(), 1, Target::BipartiteMatchings { left_size: 2 })
                .unwrap(),
            from_int(1)
        );
    }
}
