use std::collections::HashMap;

use super::codec::Codec;
use crate::decomp::{NiceDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph_core::{DistanceOracle, VertexSet};

/// State alphabet for the maximization DP. State 0 marks a selected bag vertex; any
/// other state bounds from below the distance of an unselected bag vertex to the
/// selected vertices already forgotten. States are ordered so that `min` is the merge.
pub trait StateSpace {
    fn radix(&self) -> u32;
    /// State of an unselected vertex with nothing selected below it.
    fn top(&self) -> u32;
    /// State of a vertex at `dist` from an unselected vertex in state `s`.
    fn extend(&self, s: u32, dist: u64) -> u32;
    /// State of a vertex at `dist` from a selected vertex.
    fn from_dist(&self, dist: u64) -> u32;
    /// May a vertex be selected at `dist` from an unselected vertex in state `s`?
    fn select_ok(&self, s: u32, dist: u64) -> bool;
    /// May two selected vertices lie at `dist`?
    fn zero_ok(&self, dist: u64) -> bool;
    /// May the two sides of a join carry states `a` and `b` at the same vertex?
    fn pair_ok(&self, a: u32, b: u32) -> bool;
}

/// Integer distances capped at `d - 1`.
#[derive(Clone, Copy, Debug)]
pub struct ExactStates {
    pub d: u32,
}

impl StateSpace for ExactStates {
    fn radix(&self) -> u32 {
        self.d
    }
    fn top(&self) -> u32 {
        self.d - 1
    }
    fn extend(&self, s: u32, dist: u64) -> u32 {
        dist.saturating_add(s as u64).min(self.d as u64 - 1) as u32
    }
    fn from_dist(&self, dist: u64) -> u32 {
        dist.min(self.d as u64 - 1) as u32
    }
    fn select_ok(&self, s: u32, dist: u64) -> bool {
        dist.saturating_add(s as u64) >= self.d as u64
    }
    fn zero_ok(&self, dist: u64) -> bool {
        dist >= self.d as u64
    }
    fn pair_ok(&self, a: u32, b: u32) -> bool {
        a + b >= self.d
    }
}

#[derive(Clone, Debug)]
pub struct MaxTable {
    pub bag: Vec<usize>,
    pub codec: Codec,
    pub entries: HashMap<u128, usize>,
}

impl MaxTable {
    fn new(bag: Vec<usize>, radix: u32) -> Result<Self> {
        let codec = Codec::new(radix, bag.len())?;
        Ok(MaxTable { bag, codec, entries: HashMap::new() })
    }

    fn offer(&mut self, states: &[u32], size: usize) {
        let e = self.entries.entry(self.codec.encode(states)).or_insert(size);
        *e = (*e).max(size);
    }

    fn sorted(&self) -> Vec<(u128, usize)> {
        let mut v: Vec<(u128, usize)> = self.entries.iter().map(|(&c, &s)| (c, s)).collect();
        v.sort_unstable();
        v
    }
}

/// Result of the maximization DP. `trace` lists, for every node on the witness
/// reconstruction, the node id and the state vector chosen there.
#[derive(Clone, Debug)]
pub struct MaxOutcome {
    pub size: usize,
    pub witness: VertexSet,
    pub trace: Vec<(usize, Vec<u32>)>,
}

pub struct Engine<'a, S: StateSpace> {
    pub space: &'a S,
    pub dist: &'a DistanceOracle,
}

impl<S: StateSpace> Engine<'_, S> {
    fn introduced(&self, states: &[u32], bag: &[usize], v: usize) -> (u32, bool) {
        let mut s_new = self.space.top();
        let mut ok = true;
        for (&s, &u) in states.iter().zip(bag) {
            let duv = self.dist.get(u, v);
            if s == 0 {
                ok &= self.space.zero_ok(duv);
            } else {
                s_new = s_new.min(self.space.extend(s, duv));
                ok &= self.space.select_ok(s, duv);
            }
        }
        (s_new, ok)
    }

    fn forgotten(&self, states: &[u32], bag: &[usize], p: usize) -> Vec<u32> {
        let mut out = states.to_vec();
        if states[p] == 0 {
            for (j, &u) in bag.iter().enumerate() {
                if j != p && out[j] != 0 {
                    out[j] = out[j].min(self.space.from_dist(self.dist.get(bag[p], u)));
                }
            }
        }
        out.remove(p);
        out
    }

    fn merged(&self, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
        let mut out = a.to_vec();
        for j in 0..a.len() {
            if (a[j] == 0) != (b[j] == 0) {
                return None;
            }
            if a[j] != 0 {
                if !self.space.pair_ok(a[j], b[j]) {
                    return None;
                }
                out[j] = a[j].min(b[j]);
            }
        }
        Some(out)
    }

    pub fn leaf(&self, v: usize) -> Result<MaxTable> {
        let mut t = MaxTable::new(vec![v], self.space.radix())?;
        t.offer(&[self.space.top()], 0);
        t.offer(&[0], 1);
        Ok(t)
    }

    pub fn introduce(&self, child: &MaxTable, v: usize) -> Result<MaxTable> {
        let p = child.bag.partition_point(|&u| u < v);
        let mut bag = child.bag.clone();
        bag.insert(p, v);
        let mut out = MaxTable::new(bag, self.space.radix())?;
        for (&code, &size) in &child.entries {
            let mut states = child.codec.decode(code);
            let (s_new, ok) = self.introduced(&states, &child.bag, v);
            states.insert(p, s_new);
            out.offer(&states, size);
            if ok {
                states[p] = 0;
                out.offer(&states, size + 1);
            }
        }
        Ok(out)
    }

    pub fn forget(&self, child: &MaxTable, x: usize) -> Result<MaxTable> {
        let p = child.bag.binary_search(&x).map_err(|_| Error::Decomposition(format!("forgotten vertex {x} not in bag")))?;
        let mut bag = child.bag.clone();
        bag.remove(p);
        let mut out = MaxTable::new(bag, self.space.radix())?;
        for (&code, &size) in &child.entries {
            out.offer(&self.forgotten(&child.codec.decode(code), &child.bag, p), size);
        }
        Ok(out)
    }

    pub fn join(&self, l: &MaxTable, r: &MaxTable) -> Result<MaxTable> {
        if l.bag != r.bag {
            return Err(Error::Decomposition("join children have different bags".into()));
        }
        let mut out = MaxTable::new(l.bag.clone(), self.space.radix())?;
        let mut buckets: HashMap<Vec<bool>, Vec<(Vec<u32>, usize)>> = HashMap::new();
        for (&code, &size) in &r.entries {
            let s = r.codec.decode(code);
            buckets.entry(s.iter().map(|&x| x == 0).collect()).or_default().push((s, size));
        }
        for (&code, &ls) in &l.entries {
            let a = l.codec.decode(code);
            let zeros: Vec<bool> = a.iter().map(|&x| x == 0).collect();
            let shared = zeros.iter().filter(|&&z| z).count();
            for (b, rs) in buckets.get(&zeros).into_iter().flatten() {
                if let Some(m) = self.merged(&a, b) {
                    out.offer(&m, ls + rs - shared);
                }
            }
        }
        Ok(out)
    }

    /// Run the DP bottom-up and reconstruct a maximum witness.
    pub fn solve(&self, nd: &NiceDecomposition) -> Result<MaxOutcome> {
        let mut tables: Vec<Option<MaxTable>> = vec![None; nd.nodes.len()];
        for (i, node) in nd.nodes.iter().enumerate() {
            let child = |c: usize| tables[node.children[c]].as_ref().expect("children precede parents");
            let t = match node.kind {
                NodeKind::Leaf => self.leaf(node.bag.members()[0])?,
                NodeKind::Introduce(v) => self.introduce(child(0), v)?,
                NodeKind::Forget(x) => self.forget(child(0), x)?,
                NodeKind::Join => self.join(child(0), child(1))?,
            };
            tables[i] = Some(t);
        }
        let table = |i: usize| tables[i].as_ref().unwrap();
        let root = table(nd.root);
        let (&code, &size) = root.entries.iter().max_by_key(|(&c, &s)| (s, std::cmp::Reverse(c))).unwrap();
        let mut witness = Vec::new();
        let mut trace = Vec::new();
        let mut stack = vec![(nd.root, code, size)];
        while let Some((i, code, size)) = stack.pop() {
            let node = &nd.nodes[i];
            let t = table(i);
            let states = t.codec.decode(code);
            trace.push((i, states.clone()));
            match node.kind {
                NodeKind::Leaf => {
                    if states[0] == 0 {
                        witness.push(t.bag[0]);
                    }
                }
                NodeKind::Introduce(v) => {
                    let c = node.children[0];
                    let p = t.bag.binary_search(&v).unwrap();
                    let mut below = states.clone();
                    let selected = below.remove(p) == 0;
                    if selected {
                        witness.push(v);
                    }
                    let cc = table(c).codec.encode(&below);
                    stack.push((c, cc, size - selected as usize));
                }
                NodeKind::Forget(x) => {
                    let c = node.children[0];
                    let ct = table(c);
                    let p = ct.bag.binary_search(&x).unwrap();
                    let (cc, cs) = ct
                        .sorted()
                        .into_iter()
                        .find(|&(cc, cs)| cs == size && self.forgotten(&ct.codec.decode(cc), &ct.bag, p) == states)
                        .ok_or_else(|| Error::Decomposition(format!("no predecessor at node {i}")))?;
                    stack.push((c, cc, cs));
                }
                NodeKind::Join => {
                    let (lt, rt) = (table(node.children[0]), table(node.children[1]));
                    let shared = states.iter().filter(|&&s| s == 0).count();
                    let rs = rt.sorted();
                    let mut found = None;
                    'outer: for (lc, ls) in lt.sorted() {
                        let a = lt.codec.decode(lc);
                        for &(rc, rsz) in &rs {
                            if ls + rsz == size + shared && self.merged(&a, &rt.codec.decode(rc)).as_deref() == Some(&states[..]) {
                                found = Some(((lc, ls), (rc, rsz)));
                                break 'outer;
                            }
                        }
                    }
                    let ((lc, ls), (rc, rsz)) =
                        found.ok_or_else(|| Error::Decomposition(format!("no predecessor at node {i}")))?;
                    stack.push((node.children[0], lc, ls));
                    stack.push((node.children[1], rc, rsz));
                }
            }
        }
        let witness = VertexSet::from(witness);
        debug_assert_eq!(witness.len(), size);
        Ok(MaxOutcome { size, witness, trace })
    }
}
