#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BTreeSet;

use num_rational::Ratio;
use scattered::graph_core::all_pairs_distances;
use scattered::oracle::{gen_random_graph, RandomSpec};
use scattered::{WeightedGraph, INF};

/// `count` seeded random graphs with `min_n..=max_n` vertices and weights up to `max_weight`.
pub fn corpus(count: u64, min_n: usize, max_n: usize, max_weight: u64) -> Vec<(u64, WeightedGraph)> {
    (0..count)
        .map(|seed| {
            let n = min_n + (seed as usize) % (max_n - min_n + 1);
            let spec = RandomSpec { n, edge_probability: Ratio::new(1 + seed % 4, 6), max_weight, seed };
            (seed, gen_random_graph(&spec).unwrap())
        })
        .collect()
}

/// Largest finite pairwise distance (0 for edgeless graphs).
pub fn finite_diameter(g: &WeightedGraph) -> u64 {
    let apd = all_pairs_distances(g).unwrap();
    (0..g.n()).flat_map(|u| apd.row(u).iter().copied().filter(|&x| x != INF).collect::<Vec<_>>()).max().unwrap_or(0)
}

/// Min-degree elimination ordering, ties broken by the highest vertex id.
pub fn min_degree_ordering(g: &WeightedGraph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().map(|&(u, _)| u).collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].len(), Reverse(v))).unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            adj[a].extend(nb.iter().copied().filter(|&b| b != a));
        }
        alive[v] = false;
        order.push(v);
    }
    order
}
