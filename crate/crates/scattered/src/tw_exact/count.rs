use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::table::CountTable;
use super::transform::{forward_state_transform, from_mixed, inverse_state_transform, rank, to_mixed};
use crate::error::{Error, Result};
use crate::graph_core::DistanceOracle;

// State of an unselected bag vertex: distance to the nearest selected vertex already
// forgotten below this node, capped at d-1 (which reads "at least d-1").

fn cap(d: u32, x: u64) -> u32 {
    x.min((d - 1) as u64) as u32
}

pub fn leaf(v: usize, d: u32, k: usize) -> Result<CountTable> {
    let mut t = CountTable::new(vec![v], d, k)?;
    t.set(0, &[d - 1], BigInt::from(1));
    if k >= 1 {
        t.set(1, &[0], BigInt::from(1));
    }
    Ok(t)
}

pub fn introduce(child: &CountTable, v: usize, dist: &DistanceOracle) -> Result<CountTable> {
    let d = child.d;
    let p = child.bag.partition_point(|&u| u < v);
    let mut bag = child.bag.clone();
    bag.insert(p, v);
    let mut out = CountTable::new(bag, d, child.k)?;
    for (&code, vals) in &child.entries {
        let states = child.codec.decode(code);
        let mut s_new = d - 1;
        let mut can_select = true;
        for (&s, &u) in states.iter().zip(&child.bag) {
            let duv = dist.get(u, v);
            if s == 0 {
                can_select &= duv >= d as u64;
            } else {
                s_new = s_new.min(cap(d, duv.saturating_add(s as u64)));
                can_select &= duv.saturating_add(s as u64) >= d as u64;
            }
        }
        let mut next = states.clone();
        next.insert(p, s_new);
        out.add_code(out.codec.encode(&next), vals);
        if can_select {
            next[p] = 0;
            let mut shifted = vec![BigInt::zero(); child.k + 1];
            shifted[1..].clone_from_slice(&vals[..child.k]);
            if shifted.iter().any(|x| !x.is_zero()) {
                out.add_code(out.codec.encode(&next), &shifted);
            }
        }
    }
    Ok(out)
}

pub fn forget(child: &CountTable, x: usize, dist: &DistanceOracle) -> Result<CountTable> {
    let d = child.d;
    let p = child.bag.binary_search(&x).map_err(|_| Error::Decomposition(format!("forgotten vertex {x} not in bag")))?;
    let mut bag = child.bag.clone();
    bag.remove(p);
    let mut out = CountTable::new(bag, d, child.k)?;
    for (&code, vals) in &child.entries {
        let mut states = child.codec.decode(code);
        if states[p] == 0 {
            for (j, &u) in child.bag.iter().enumerate() {
                if j != p && states[j] != 0 {
                    states[j] = states[j].min(cap(d, dist.get(x, u)));
                }
            }
        }
        states.remove(p);
        out.add_code(out.codec.encode(&states), vals);
    }
    out.prune();
    Ok(out)
}

/// Split a table by rank.
fn by_rank(t: &CountTable, dist: &DistanceOracle) -> Vec<CountTable> {
    let mut parts = vec![t.empty_like(); t.bag.len() + 1];
    for (&code, vals) in &t.entries {
        let r = rank(t, &t.codec.decode(code), dist);
        parts[r].entries.insert(code, vals.clone());
    }
    parts
}

/// Entry-wise product with κ convolution, corrected by the number of shared selections.
pub(crate) fn product(l: &CountTable, r: &CountTable, acc: &mut CountTable) {
    let k = l.k;
    for (&code, lv) in &l.entries {
        let Some(rv) = r.entries.get(&code) else { continue };
        let shared = l.codec.decode(code).iter().filter(|&&s| s == 0).count();
        let mut out = vec![BigInt::zero(); k + 1];
        for (a, x) in lv.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rv.iter().enumerate() {
                if a + b < shared || a + b - shared > k {
                    continue;
                }
                out[a + b - shared] += x * y;
            }
        }
        acc.add_code(code, &out);
    }
}

/// Join of two tables over the same bag. Each unselected coordinate becomes the minimum
/// of the two sides, restricted to pairs whose states sum to at least d.
pub fn join(l: &CountTable, r: &CountTable, dist: &DistanceOracle) -> Result<CountTable> {
    if l.bag != r.bag || l.d != r.d || l.k != r.k {
        return Err(Error::Decomposition("join children have different bags".into()));
    }
    let lp: Vec<CountTable> =
        by_rank(&to_mixed(l), dist).iter().map(|t| forward_state_transform(t, dist)).collect();
    let rp: Vec<CountTable> =
        by_rank(&to_mixed(r), dist).iter().map(|t| forward_state_transform(t, dist)).collect();
    let width = l.bag.len();
    let mut mixed = l.empty_like();
    for q in 0..=width {
        let mut acc = l.empty_like();
        for a in 0..=q {
            product(&lp[a], &rp[q - a], &mut acc);
        }
        let back = inverse_state_transform(&acc, dist);
        for (&code, vals) in &back.entries {
            if rank(&back, &back.codec.decode(code), dist) == q {
                mixed.add_code(code, vals);
            }
        }
    }
    Ok(from_mixed(&mixed))
}

/// Direct quadratic join with the same meaning as [`join`]; used as a cross-check.
pub fn join_direct(l: &CountTable, r: &CountTable) -> Result<CountTable> {
    if l.bag != r.bag {
        return Err(Error::Decomposition("join children have different bags".into()));
    }
    let d = l.d;
    let mut out = l.empty_like();
    let mut right: HashMap<Vec<bool>, Vec<(Vec<u32>, &Vec<BigInt>)>> = HashMap::new();
    for (&code, vals) in &r.entries {
        let s = r.codec.decode(code);
        right.entry(s.iter().map(|&x| x == 0).collect()).or_default().push((s, vals));
    }
    for (&code, lv) in &l.entries {
        let sl = l.codec.decode(code);
        let zeros: Vec<bool> = sl.iter().map(|&x| x == 0).collect();
        let shared = zeros.iter().filter(|&&z| z).count();
        let Some(bucket) = right.get(&zeros) else { continue };
        'pair: for (sr, rv) in bucket {
            let mut merged = sl.clone();
            for j in 0..sl.len() {
                if sl[j] != 0 {
                    if sl[j] + sr[j] < d {
                        continue 'pair;
                    }
                    merged[j] = sl[j].min(sr[j]);
                }
            }
            let mut vals = vec![BigInt::zero(); l.k + 1];
            for (a, x) in lv.iter().enumerate() {
                for (b, y) in rv.iter().enumerate() {
                    if a + b >= shared && a + b - shared <= l.k {
                        vals[a + b - shared] += x * y;
                    }
                }
            }
            out.add_code(out.codec.encode(&merged), &vals);
        }
    }
    out.prune();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{all_pairs_distances, WeightedGraph};
    use crate::oracle::{gen_random_graph, RandomSpec};
    use num_rational::Ratio;

    fn chain(vs: &[usize], d: u32, k: usize, dist: &DistanceOracle) -> CountTable {
        let mut t = leaf(vs[0], d, k).unwrap();
        for &v in &vs[1..] {
            t = introduce(&t, v, dist).unwrap();
        }
        t
    }

    #[test]
    fn star_join() {
        let g = WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let dist = all_pairs_distances(&g).unwrap();
        let left = forget(&chain(&[0, 1], 2, 2, &dist), 0, &dist).unwrap();
        let right = forget(&chain(&[1, 2], 2, 2, &dist), 2, &dist).unwrap();
        let j = join(&left, &right, &dist).unwrap();
        assert_eq!(j.get(2, &[1]), BigInt::from(1));
        assert_eq!(j.get(1, &[1]), BigInt::from(2));
        assert_eq!(j.get(1, &[0]), BigInt::from(1));
    }

    #[test]
    fn identity_right_child() {
        let g = WeightedGraph::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let dist = all_pairs_distances(&g).unwrap();
        let left = forget(&chain(&[0, 1, 2], 3, 3, &dist), 0, &dist).unwrap();
        let left = forget(&introduce(&left, 3, &dist).unwrap(), 1, &dist).unwrap();
        let ident = chain(&[2, 3], 3, 3, &dist);
        assert!(join(&left, &ident, &dist).unwrap().same_as(&left));
    }

    #[test]
    fn zero_tables_and_commutativity() {
        let g = WeightedGraph::path(3);
        let dist = all_pairs_distances(&g).unwrap();
        let z = CountTable::new(vec![0, 1], 4, 2).unwrap();
        assert!(join(&z, &z, &dist).unwrap().entries.is_empty());
        for seed in 0..20 {
            let spec = RandomSpec { n: 7, edge_probability: Ratio::new(2, 5), max_weight: 3, seed };
            let g = gen_random_graph(&spec).unwrap();
            let dist = all_pairs_distances(&g).unwrap();
            for d in 2..6 {
                let a = forget(&chain(&[0, 1, 2, 3], d, 4, &dist), 0, &dist).unwrap();
                let a = forget(&introduce(&a, 4, &dist).unwrap(), 4, &dist).unwrap();
                let b = forget(&chain(&[1, 2, 3, 5, 6], d, 4, &dist), 5, &dist).unwrap();
                let b = forget(&b, 6, &dist).unwrap();
                let ab = join(&a, &b, &dist).unwrap();
                assert!(ab.same_as(&join(&b, &a, &dist).unwrap()));
                assert!(ab.same_as(&join_direct(&a, &b).unwrap()), "seed {seed} d {d}");
            }
        }
    }
}
