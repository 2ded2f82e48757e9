//! Unrepaired transition rules kept for comparison; composing them overcounts.
//!
//! Here a state is read against every selected vertex, in or below the bag, and the
//! join multiplies transformed tables without any rank bookkeeping.

use num_bigint::BigInt;
use num_traits::Zero;

use super::count::product;
use super::table::CountTable;
use super::transform::{forward_state_transform, inverse_state_transform};
use crate::error::{Error, Result};
use crate::graph_core::DistanceOracle;

pub fn leaf_table(v: usize, d: u32, k: usize) -> Result<CountTable> {
    let mut t = CountTable::new(vec![v], d, k)?;
    if k >= 1 {
        t.set(1, &[0], BigInt::from(1));
    }
    for s in 1..d {
        t.set(0, &[s], BigInt::from(1));
    }
    Ok(t)
}

pub fn introduce_transition(child: &CountTable, v: usize, dist: &DistanceOracle) -> Result<CountTable> {
    let d = child.d;
    let half = (d / 2) as u64;
    let p = child.bag.partition_point(|&u| u < v);
    let mut bag = child.bag.clone();
    bag.insert(p, v);
    let mut out = CountTable::new(bag, d, child.k)?;
    for (&code, vals) in &child.entries {
        let states = child.codec.decode(code);
        let bound = states
            .iter()
            .zip(&child.bag)
            .map(|(&s, &u)| dist.get(u, v).saturating_add(s as u64))
            .min()
            .unwrap_or(u64::MAX);
        for s_new in 1..d {
            if s_new as u64 <= bound {
                let mut next = states.clone();
                next.insert(p, s_new);
                out.add_code(out.codec.encode(&next), vals);
            }
        }
        let mut next = states.clone();
        let mut ok = true;
        for (j, &u) in child.bag.iter().enumerate() {
            let duv = dist.get(u, v);
            if states[j] == 0 {
                ok &= duv >= d as u64;
            } else if duv <= half {
                let sigma = d - states[j];
                ok &= sigma as u64 <= duv;
                next[j] = sigma;
            }
        }
        if ok {
            next.insert(p, 0);
            let mut shifted = vec![BigInt::zero(); child.k + 1];
            shifted[1..].clone_from_slice(&vals[..child.k]);
            out.add_code(out.codec.encode(&next), &shifted);
        }
    }
    out.prune();
    Ok(out)
}

/// Sum over the forgotten position; after a leaf only states 0 and 1 are summed.
pub fn forget_transition(child: &CountTable, position: usize, child_was_leaf: bool) -> Result<CountTable> {
    if position >= child.bag.len() {
        return Err(Error::Decomposition(format!("no bag position {position}")));
    }
    let mut bag = child.bag.clone();
    bag.remove(position);
    let mut out = CountTable::new(bag, child.d, child.k)?;
    for (&code, vals) in &child.entries {
        let mut states = child.codec.decode(code);
        if child_was_leaf && states[position] > 1 {
            continue;
        }
        states.remove(position);
        out.add_code(out.codec.encode(&states), vals);
    }
    out.prune();
    Ok(out)
}

pub fn join_transition(l: &CountTable, r: &CountTable, dist: &DistanceOracle) -> Result<CountTable> {
    if l.bag != r.bag {
        return Err(Error::Decomposition("join children have different bags".into()));
    }
    let mut acc = l.empty_like();
    product(&forward_state_transform(l, dist), &forward_state_transform(r, dist), &mut acc);
    Ok(inverse_state_transform(&acc, dist))
}
