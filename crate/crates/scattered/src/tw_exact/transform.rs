use num_bigint::BigInt;

use super::table::CountTable;
use crate::graph_core::DistanceOracle;

/// Low states with a distinct symmetric partner `d - s`.
fn paired_low(d: u32, s: u32) -> bool {
    s >= 1 && s <= d / 2 && 2 * s != d
}

fn step(t: &mut CountTable, pos: usize, dist: &DistanceOracle, sign: i8) {
    let d = t.d;
    let moves: Vec<(u128, Vec<BigInt>)> = t
        .entries
        .iter()
        .filter_map(|(&code, vals)| {
            let h = t.codec.get(code, pos);
            if h == 0 || !paired_low(d, d - h) || h <= d / 2 {
                return None;
            }
            let states = t.codec.decode(code);
            if !t.unjustified(&states, pos, dist) {
                return None;
            }
            Some((t.codec.set(code, pos, d - h), vals.clone()))
        })
        .collect();
    for (target, vals) in moves {
        if sign > 0 {
            t.add_code(target, &vals);
        } else {
            t.sub_code(target, &vals);
        }
    }
}

/// State change before a join: for every unjustified low state `s` with `s != d - s`,
/// add the entry at `d - s` into the entry at `s`, one bag position at a time.
pub fn forward_state_transform(t: &CountTable, dist: &DistanceOracle) -> CountTable {
    let mut out = t.clone();
    for pos in 0..out.bag.len() {
        step(&mut out, pos, dist, 1);
    }
    out.prune();
    out
}

/// Exact inverse of [`forward_state_transform`] by mirrored subtraction.
pub fn inverse_state_transform(t: &CountTable, dist: &DistanceOracle) -> CountTable {
    let mut out = t.clone();
    for pos in (0..out.bag.len()).rev() {
        step(&mut out, pos, dist, -1);
    }
    out.prune();
    out
}

/// Number of positions holding an unjustified paired low state.
pub(crate) fn rank(t: &CountTable, states: &[u32], dist: &DistanceOracle) -> usize {
    (0..states.len())
        .filter(|&p| paired_low(t.d, states[p]) && t.unjustified(states, p, dist))
        .count()
}

/// First state read as a lower bound rather than an exact distance.
pub(crate) fn cumulative_from(d: u32) -> u32 {
    d.div_ceil(2)
}

/// Exact distance states to mixed form: states from `⌈d/2⌉` upward become suffix sums.
pub(crate) fn to_mixed(t: &CountTable) -> CountTable {
    let c0 = cumulative_from(t.d);
    let mut cur = t.clone();
    for pos in 0..cur.bag.len() {
        let mut next = cur.empty_like();
        for (&code, vals) in &cur.entries {
            let u = cur.codec.get(code, pos);
            if u >= c0 {
                for s in c0..=u {
                    next.add_code(cur.codec.set(code, pos, s), vals);
                }
            } else {
                next.add_code(code, vals);
            }
        }
        cur = next;
    }
    cur
}

/// Inverse of [`to_mixed`].
pub(crate) fn from_mixed(t: &CountTable) -> CountTable {
    let c0 = cumulative_from(t.d);
    let mut cur = t.clone();
    for pos in 0..cur.bag.len() {
        let mut next = cur.clone();
        for (&code, vals) in &cur.entries {
            let u = cur.codec.get(code, pos);
            if u > c0 {
                next.sub_code(cur.codec.set(code, pos, u - 1), vals);
            }
        }
        cur = next;
    }
    cur.prune();
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{all_pairs_distances, WeightedGraph};
    use num_bigint::BigInt;

    fn single(d: u32) -> (CountTable, DistanceOracle) {
        let g = WeightedGraph::new(1).unwrap();
        (CountTable::new(vec![0], d, 1).unwrap(), all_pairs_distances(&g).unwrap())
    }

    #[test]
    fn self_symmetric_state_is_untouched() {
        let (mut t, dist) = single(2);
        t.k = 1;
        t.set(0, &[1], BigInt::from(1));
        t.set(1, &[0], BigInt::from(1));
        t.set(1, &[1], BigInt::from(1));
        assert!(forward_state_transform(&t, &dist).same_as(&t));
    }

    #[test]
    fn one_addition_step() {
        let (mut t, dist) = single(4);
        t.set(0, &[1], BigInt::from(5));
        t.set(0, &[3], BigInt::from(7));
        let f = forward_state_transform(&t, &dist);
        assert_eq!(f.get(0, &[1]), BigInt::from(12));
        assert_eq!(f.get(0, &[3]), BigInt::from(7));
        assert!(inverse_state_transform(&f, &dist).same_as(&t));
    }

    #[test]
    fn inverse_on_zero_and_high_tables() {
        let (t, dist) = single(5);
        assert!(inverse_state_transform(&t, &dist).same_as(&t));
        let (mut h, _) = single(5);
        h.set(1, &[4], BigInt::from(3));
        let inv = inverse_state_transform(&h, &dist);
        assert_eq!(inv.get(1, &[4]), BigInt::from(3));
        assert_eq!(inv.get(1, &[1]), BigInt::from(-3));
        assert!(forward_state_transform(&inv, &dist).same_as(&h));
    }

    #[test]
    fn justified_positions_are_skipped() {
        let g = WeightedGraph::path(2);
        let dist = all_pairs_distances(&g).unwrap();
        let mut t = CountTable::new(vec![0, 1], 5, 1).unwrap();
        t.set(1, &[0, 4], BigInt::from(2));
        assert!(forward_state_transform(&t, &dist).same_as(&t));
    }

    #[test]
    fn mixed_roundtrip() {
        let (mut t, _) = single(6);
        for s in 1..6 {
            t.set(0, &[s], BigInt::from(s));
        }
        let m = to_mixed(&t);
        assert_eq!(m.get(0, &[3]), BigInt::from(3 + 4 + 5));
        assert_eq!(m.get(0, &[2]), BigInt::from(2));
        assert!(from_mixed(&m).same_as(&t));
    }
}
