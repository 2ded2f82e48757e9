use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graph_core::{VertexSet, WeightedGraph};

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Min-fill elimination ordering, ties broken by lowest vertex id.
pub fn min_fill_ordering(g: &WeightedGraph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().map(|&(u, _)| u).collect()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = *alive.iter().min_by_key(|&&v| (fill[v], v)).unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        alive.remove(&v);
        order.push(v);
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for &a in &nb {
            touched.insert(a);
            touched.extend(adj[a].iter().copied());
        }
        for a in touched {
            fill[a] = fill_in(&adj, a);
        }
    }
    order
}

/// Tree decomposition from an elimination ordering.
pub fn decomposition_from_ordering(g: &WeightedGraph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().map(|&(u, _)| u).collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for (x, &a) in later.iter().enumerate() {
            for &b in &later[x + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent[i] = later.iter().map(|&u| pos[u]).min();
        let mut bag = later.clone();
        bag.push(v);
        bags.push(VertexSet::from(bag));
    }
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for i in 0..n {
        match parent[i] {
            Some(p) => tree_edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, tree_edges, root: *roots.last().unwrap() }
}

/// Decomposition from the min-fill elimination ordering.
pub fn heuristic_decomposition(g: &WeightedGraph) -> TreeDecomposition {
    decomposition_from_ordering(g, &min_fill_ordering(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::validate_decomposition;

    #[test]
    fn tree_has_width_one() {
        let g = WeightedGraph::unit(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let td = heuristic_decomposition(&g);
        assert_eq!(validate_decomposition(&g, &td), Ok(1));
    }

    #[test]
    fn clique_and_cycle() {
        let k4 = WeightedGraph::complete(4);
        assert_eq!(validate_decomposition(&k4, &heuristic_decomposition(&k4)), Ok(3));
        let c5 = WeightedGraph::cycle(5);
        assert_eq!(validate_decomposition(&c5, &heuristic_decomposition(&c5)), Ok(2));
    }

    #[test]
    fn disconnected_and_single() {
        let g = WeightedGraph::unit(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(validate_decomposition(&g, &heuristic_decomposition(&g)), Ok(1));
        let one = WeightedGraph::new(1).unwrap();
        let td = heuristic_decomposition(&one);
        assert_eq!(td.bags, vec![VertexSet::from([0])]);
    }

    #[test]
    fn ties_go_to_lowest_id() {
        assert_eq!(min_fill_ordering(&WeightedGraph::path(4)), vec![0, 1, 2, 3]);
    }
}
