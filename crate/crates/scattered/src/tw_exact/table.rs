use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::codec::Codec;
use crate::error::Result;
use crate::graph_core::DistanceOracle;

/// Counting table: state-vector code to counts indexed by κ = 0..=k.
/// Absent codes and missing κ entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub bag: Vec<usize>,
    pub d: u32,
    pub k: usize,
    pub codec: Codec,
    pub entries: HashMap<u128, Vec<BigInt>>,
}

impl CountTable {
    pub fn new(bag: Vec<usize>, d: u32, k: usize) -> Result<Self> {
        let codec = Codec::new(d, bag.len())?;
        Ok(CountTable { bag, d, k, codec, entries: HashMap::new() })
    }

    pub fn empty_like(&self) -> Self {
        CountTable { bag: self.bag.clone(), d: self.d, k: self.k, codec: self.codec, entries: HashMap::new() }
    }

    pub fn get(&self, kappa: usize, states: &[u32]) -> BigInt {
        self.entries
            .get(&self.codec.encode(states))
            .and_then(|v| v.get(kappa).cloned())
            .unwrap_or_default()
    }

    pub fn set(&mut self, kappa: usize, states: &[u32], value: BigInt) {
        let code = self.codec.encode(states);
        let k = self.k;
        self.entries.entry(code).or_insert_with(|| vec![BigInt::zero(); k + 1])[kappa] = value;
    }

    pub fn add_code(&mut self, code: u128, values: &[BigInt]) {
        let k = self.k;
        let slot = self.entries.entry(code).or_insert_with(|| vec![BigInt::zero(); k + 1]);
        for (a, b) in slot.iter_mut().zip(values) {
            *a += b;
        }
    }

    pub fn sub_code(&mut self, code: u128, values: &[BigInt]) {
        let k = self.k;
        let slot = self.entries.entry(code).or_insert_with(|| vec![BigInt::zero(); k + 1]);
        for (a, b) in slot.iter_mut().zip(values) {
            *a -= b;
        }
    }

    /// Drop all-zero entries.
    pub fn prune(&mut self) {
        self.entries.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }

    /// Entries as sorted `(κ, states, value)` triples with nonzero value.
    pub fn nonzero(&self) -> Vec<(usize, Vec<u32>, BigInt)> {
        let mut out = Vec::new();
        for (&code, vals) in &self.entries {
            for (kappa, v) in vals.iter().enumerate() {
                if !v.is_zero() {
                    out.push((kappa, self.codec.decode(code), v.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Same nonzero content, ignoring explicitly stored zeros.
    pub fn same_as(&self, other: &CountTable) -> bool {
        self.bag == other.bag && self.nonzero() == other.nonzero()
    }

    /// A bag position is unjustified when no selected bag vertex lies within ⌊d/2⌋ of it.
    pub fn unjustified(&self, states: &[u32], pos: usize, dist: &DistanceOracle) -> bool {
        let half = (self.d / 2) as u64;
        let v = self.bag[pos];
        states
            .iter()
            .zip(&self.bag)
            .all(|(&s, &u)| s != 0 || dist.get(u, v) > half)
    }
}
