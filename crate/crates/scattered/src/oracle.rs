//! Brute-force reference solvers and seeded random graphs.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, VertexSet, WeightedGraph};

pub const MAX_BRUTE_MAX: usize = 22;
pub const MAX_BRUTE_COUNT: usize = 20;

/// Parameters for [`gen_random_graph`].
///
/// The stream is ChaCha8 (`rand_chacha` 0.3) seeded with `seed_from_u64(seed)`.
/// Pairs `(u, v)`, `u < v`, are visited lexicographically; each draws
/// `gen_range(0..den) < num` for the edge and, if present, `gen_range(1..=max_weight)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub edge_probability: Ratio<u64>,
    pub max_weight: u64,
    pub seed: u64,
}

pub fn gen_random_graph(spec: &RandomSpec) -> Result<WeightedGraph> {
    let (num, den) = (*spec.edge_probability.numer(), *spec.edge_probability.denom());
    if num > den {
        return Err(Error::Precondition("edge probability above 1".into()));
    }
    if spec.max_weight == 0 {
        return Err(Error::Precondition("max_weight must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = WeightedGraph::new(spec.n)?;
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if rng.gen_range(0..den) < num {
                let w = rng.gen_range(1..=spec.max_weight);
                g.add_edge(u, v, w)?;
            }
        }
    }
    Ok(g)
}

fn conflict_masks(g: &WeightedGraph, d: u64) -> Result<Vec<u32>> {
    let apd = all_pairs_distances(g)?;
    let n = g.n();
    Ok((0..n)
        .map(|u| (0..n).filter(|&v| v != u && apd.get(u, v) < d).fold(0u32, |m, v| m | (1 << v)))
        .collect())
}

/// Maximum d-scattered set by branch and bound over subsets.
pub fn brute_force_max(g: &WeightedGraph, d: u64) -> Result<(usize, VertexSet)> {
    if g.n() > MAX_BRUTE_MAX {
        return Err(Error::TooLarge(format!("brute force limited to n <= {MAX_BRUTE_MAX}")));
    }
    let conflict = conflict_masks(g, d)?;
    let n = g.n();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = 0u32;
    let mut best_size = 0;
    fn go(cand: u32, chosen: u32, conflict: &[u32], best: &mut u32, best_size: &mut u32) {
        let size = chosen.count_ones();
        if size + cand.count_ones() <= *best_size {
            return;
        }
        if cand == 0 {
            *best = chosen;
            *best_size = size;
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(cand & !(1 << v) & !conflict[v], chosen | (1 << v), conflict, best, best_size);
        go(cand & !(1 << v), chosen, conflict, best, best_size);
    }
    go(full, 0, &conflict, &mut best, &mut best_size);
    let witness: VertexSet = (0..n).filter(|&v| best & (1 << v) != 0).collect();
    Ok((witness.len(), witness))
}

/// Number of d-scattered sets of each size `0..=k`.
pub fn brute_force_count(g: &WeightedGraph, d: u64, k: usize) -> Result<Vec<u64>> {
    if g.n() > MAX_BRUTE_COUNT {
        return Err(Error::TooLarge(format!("brute force counting limited to n <= {MAX_BRUTE_COUNT}")));
    }
    let conflict = conflict_masks(g, d)?;
    let mut counts = vec![0u64; k + 1];
    fn go(cand: u32, size: usize, conflict: &[u32], counts: &mut [u64]) {
        counts[size] += 1;
        if size + 1 >= counts.len() {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            go(rest & !conflict[v as usize], size + 1, conflict, counts);
        }
    }
    let n = g.n();
    go(((1u64 << n) - 1) as u32, 0, &conflict, &mut counts);
    Ok(counts)
}

/// Independent-set counts per size by plain mask enumeration over edges.
pub fn independent_set_counts(g: &WeightedGraph) -> Result<Vec<u64>> {
    if g.n() > MAX_BRUTE_COUNT {
        return Err(Error::TooLarge(format!("enumeration limited to n <= {MAX_BRUTE_COUNT}")));
    }
    let n = g.n();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u64..(1 << n) {
        let independent = g.edges().iter().all(|&(u, v, _)| mask >> u & 1 == 0 || mask >> v & 1 == 0);
        if independent {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// Maximum independent set size via [`independent_set_counts`].
pub fn max_independent_set_size(g: &WeightedGraph) -> Result<usize> {
    let counts = independent_set_counts(g)?;
    Ok(counts.iter().rposition(|&c| c > 0).unwrap_or(0))
}
