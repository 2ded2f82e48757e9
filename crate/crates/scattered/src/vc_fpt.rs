//! Unit-weight d-Scattered Set for d ≥ 3, parameterized by vertex cover: a reduction
//! to partial set packing over the cover, solved by a DP over per-element
//! coefficient maxima (3 codes for even d, 4 for odd d).

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, VertexSet, WeightedGraph, INF};

fn need_unit(g: &WeightedGraph) -> Result<()> {
    if g.is_unit() {
        Ok(())
    } else {
        Err(Error::Precondition("unit edge weights required".into()))
    }
}

fn is_cover(g: &WeightedGraph, c: &VertexSet) -> bool {
    g.edges().iter().all(|&(u, v, _)| c.contains(u) || c.contains(v))
}

fn cover_within(adj: &[Vec<usize>], removed: &mut Vec<bool>, budget: usize, chosen: &mut Vec<usize>) -> bool {
    let deg = |v: usize, removed: &Vec<bool>| adj[v].iter().filter(|&&u| !removed[u]).count();
    let pick = (0..adj.len())
        .filter(|&v| !removed[v])
        .map(|v| (deg(v, removed), v))
        .filter(|&(k, _)| k > 0)
        .max_by_key(|&(k, v)| (k, std::cmp::Reverse(v)));
    let Some((k, v)) = pick else { return true };
    if budget == 0 {
        return false;
    }
    removed[v] = true;
    chosen.push(v);
    if cover_within(adj, removed, budget - 1, chosen) {
        return true;
    }
    chosen.pop();
    removed[v] = false;
    if k > budget {
        return false;
    }
    let nbrs: Vec<usize> = adj[v].iter().copied().filter(|&u| !removed[u]).collect();
    for &u in &nbrs {
        removed[u] = true;
    }
    let before = chosen.len();
    chosen.extend(&nbrs);
    removed[v] = true;
    if cover_within(adj, removed, budget - k, chosen) {
        return true;
    }
    removed[v] = false;
    chosen.truncate(before);
    for &u in &nbrs {
        removed[u] = false;
    }
    false
}

/// Minimum vertex cover by branching on a maximum-degree vertex (lowest id on ties):
/// either it joins the cover or all of its neighbours do.
pub fn compute_vertex_cover(g: &WeightedGraph) -> VertexSet {
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().map(|&(u, _)| u).collect()).collect();
    for budget in 0.. {
        let mut removed = vec![false; g.n()];
        let mut chosen = Vec::new();
        if cover_within(&adj, &mut removed, budget, &mut chosen) {
            return VertexSet::from(chosen);
        }
    }
    unreachable!()
}

/// One representative (lowest id) per distinct neighbourhood among vertices outside `c`.
pub fn neighborhood_classes(g: &WeightedGraph, c: &VertexSet) -> Result<VertexSet> {
    if !is_cover(g, c) {
        return Err(Error::Precondition("not a vertex cover".into()));
    }
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for v in (0..g.n()).filter(|&v| !c.contains(v)) {
        let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&(u, _)| u).collect();
        nb.sort_unstable();
        seen.entry(nb).or_insert(v);
    }
    Ok(seen.into_values().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingSet {
    pub origin: usize,
    /// Per-element code: multiples of 1/2 for even d, of 1/3 for odd d.
    pub codes: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingInstance {
    /// Cover vertices, one element each.
    pub elements: Vec<usize>,
    pub even: bool,
    pub sets: Vec<PackingSet>,
}

impl PackingInstance {
    pub fn universe_size(&self) -> usize {
        self.elements.len()
    }

    /// Largest code; two codes are compatible iff their sum is at most this.
    pub fn unit(&self) -> u8 {
        if self.even {
            2
        } else {
            3
        }
    }

    pub fn coefficient(&self, set: usize, element: usize) -> Ratio<u32> {
        Ratio::new(self.sets[set].codes[element] as u32, self.unit() as u32)
    }
}

pub fn reduce_to_packing(g: &WeightedGraph, c: &VertexSet, y: &VertexSet, d: u64) -> Result<PackingInstance> {
    if d < 3 {
        return Err(Error::Precondition("d must be at least 3 here; use the tree-decomposition solver for d = 2".into()));
    }
    need_unit(g)?;
    let dist = all_pairs_distances(g)?;
    let even = d % 2 == 0;
    let (lo, hi) = (d / 2, d.div_ceil(2));
    let code = |x: u64| -> u8 {
        if x == INF {
            0
        } else if even {
            match x {
                x if x < lo => 2,
                x if x == lo => 1,
                _ => 0,
            }
        } else {
            match x {
                x if x < lo => 3,
                x if x == lo => 2,
                x if x == hi => 1,
                _ => 0,
            }
        }
    };
    let sets = c
        .members()
        .iter()
        .chain(y.members())
        .map(|&v| PackingSet { origin: v, codes: c.members().iter().map(|&u| code(dist.get(u, v))).collect() })
        .collect();
    Ok(PackingInstance { elements: c.members().to_vec(), even, sets })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingSolution {
    pub size: usize,
    /// Origin vertices of the chosen sets, in instance order.
    pub chosen: Vec<usize>,
    /// Distinct coefficient profiles reached.
    pub visited_profiles: usize,
}

/// Maximum subfamily in which, per element, the two largest chosen coefficients sum to at most 1.
pub fn solve_packing(inst: &PackingInstance) -> Result<PackingSolution> {
    let u = inst.universe_size();
    if u > 64 {
        return Err(Error::TooLarge(format!("{u} packing elements")));
    }
    let unit = inst.unit() as u128;
    let get = |p: u128, e: usize| (p >> (2 * e)) & 3;
    // layers[j]: profile -> (best count, predecessor profile, took set j-1)
    let mut layers: Vec<HashMap<u128, (usize, u128, bool)>> = vec![HashMap::from([(0, (0, 0, false))])];
    for set in &inst.sets {
        let prev = layers.last().unwrap();
        let mut next: HashMap<u128, (usize, u128, bool)> = HashMap::new();
        let mut offer = |p: u128, val: (usize, u128, bool)| {
            let e = next.entry(p).or_insert(val);
            if val.0 > e.0 {
                *e = val;
            }
        };
        let mut keys: Vec<u128> = prev.keys().copied().collect();
        keys.sort_unstable();
        for p in keys {
            let best = prev[&p].0;
            offer(p, (best, p, false));
            if (0..u).all(|e| get(p, e) + set.codes[e] as u128 <= unit) {
                let mut q = p;
                for e in 0..u {
                    let c = set.codes[e] as u128;
                    if c > get(q, e) {
                        q = (q & !(3 << (2 * e))) | (c << (2 * e));
                    }
                }
                offer(q, (best + 1, p, true));
            }
        }
        layers.push(next);
    }
    let visited_profiles = layers.iter().flat_map(|l| l.keys()).collect::<std::collections::HashSet<_>>().len();
    let last = layers.last().unwrap();
    let (&(mut p), &(size, _, _)) = last.iter().max_by_key(|(&p, v)| (v.0, std::cmp::Reverse(p))).unwrap();
    let mut chosen = Vec::new();
    for j in (1..layers.len()).rev() {
        let (_, prev, took) = layers[j][&p];
        if took {
            chosen.push(inst.sets[j - 1].origin);
        }
        p = prev;
    }
    chosen.reverse();
    Ok(PackingSolution { size, chosen, visited_profiles })
}

/// Maximum d-scattered set of a unit-weight graph, `d ≥ 3`, using `cover` or a computed minimum cover.
pub fn max_scattered_vc(g: &WeightedGraph, d: u64, cover: Option<&VertexSet>) -> Result<(usize, VertexSet)> {
    need_unit(g)?;
    if d < 3 {
        return Err(Error::Precondition("d must be at least 3 here; use the tree-decomposition solver for d = 2".into()));
    }
    let c = match cover {
        Some(c) => c.clone(),
        None => compute_vertex_cover(g),
    };
    let y = neighborhood_classes(g, &c)?;
    let inst = reduce_to_packing(g, &c, &y, d)?;
    let sol = solve_packing(&inst)?;
    let mut witness = VertexSet::from(sol.chosen);
    for v in 0..g.n() {
        if g.degree(v) == 0 && !y.contains(v) && !c.contains(v) {
            witness.insert(v);
        }
    }
    Ok((witness.len(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::is_scattered;

    fn p4() -> WeightedGraph {
        WeightedGraph::path(4)
    }

    #[test]
    fn covers() {
        assert_eq!(compute_vertex_cover(&p4()), VertexSet::from([1, 2]));
        assert_eq!(compute_vertex_cover(&WeightedGraph::star(3)), VertexSet::from([0]));
        assert_eq!(compute_vertex_cover(&WeightedGraph::new(3).unwrap()), VertexSet::new());
        assert_eq!(compute_vertex_cover(&WeightedGraph::cycle(7)).len(), 4);
    }

    #[test]
    fn classes() {
        assert_eq!(neighborhood_classes(&WeightedGraph::star(3), &VertexSet::from([0])).unwrap().len(), 1);
        assert_eq!(neighborhood_classes(&p4(), &VertexSet::from([1, 2])).unwrap(), VertexSet::from([0, 3]));
        let k3 = WeightedGraph::complete(3);
        assert_eq!(neighborhood_classes(&k3, &VertexSet::from([0, 1, 2])).unwrap(), VertexSet::new());
        assert!(neighborhood_classes(&p4(), &VertexSet::from([1])).is_err());
    }

    #[test]
    fn reductions() {
        let star = WeightedGraph::star(3);
        let c = VertexSet::from([0]);
        let inst = reduce_to_packing(&star, &c, &neighborhood_classes(&star, &c).unwrap(), 4).unwrap();
        assert!(inst.even);
        assert_eq!(inst.sets.iter().map(|s| s.codes.clone()).collect::<Vec<_>>(), vec![vec![2], vec![2]]);
        assert_eq!(solve_packing(&inst).unwrap().size, 1);

        let c = VertexSet::from([1, 2]);
        let inst = reduce_to_packing(&p4(), &c, &VertexSet::from([0, 3]), 3).unwrap();
        let s0 = inst.sets.iter().position(|s| s.origin == 0).unwrap();
        assert_eq!(inst.coefficient(s0, 0), Ratio::new(2, 3));
        assert_eq!(inst.coefficient(s0, 1), Ratio::new(1, 3));
        let sol = solve_packing(&inst).unwrap();
        assert_eq!((sol.size, sol.chosen), (2, vec![0, 3]));
        assert!(reduce_to_packing(&p4(), &c, &VertexSet::new(), 2).is_err());
    }

    #[test]
    fn all_zero_sets() {
        let inst = PackingInstance {
            elements: vec![0, 1],
            even: true,
            sets: (0..5).map(|i| PackingSet { origin: i, codes: vec![0, 0] }).collect(),
        };
        assert_eq!(solve_packing(&inst).unwrap().size, 5);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(max_scattered_vc(&WeightedGraph::star(3), 4, None).unwrap().0, 1);
        assert_eq!(max_scattered_vc(&p4(), 3, None).unwrap(), (2, VertexSet::from([0, 3])));
        let c6 = WeightedGraph::cycle(6);
        let (s, w) = max_scattered_vc(&c6, 3, None).unwrap();
        assert_eq!(s, 2);
        assert!(is_scattered(&c6, &w, 3));
        let g = WeightedGraph::unit(6, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(max_scattered_vc(&g, 5, None).unwrap().0, 4);
        assert!(max_scattered_vc(&p4(), 2, None).is_err());
    }
}
