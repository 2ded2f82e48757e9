//! Exact dynamic programming over nice tree decompositions: counting d-scattered
//! sets by size, and maximization with a witness.

mod codec;
mod count;
pub mod literal;
pub mod maxdp;
mod table;
mod transform;

use num_bigint::BigInt;

pub use codec::Codec;
pub use count::{forget, introduce, join, join_direct, leaf};
pub use maxdp::{Engine, ExactStates, MaxOutcome, MaxTable, StateSpace};
pub use table::CountTable;
pub use transform::{forward_state_transform, inverse_state_transform};

use crate::decomp::{heuristic_decomposition, make_nice, NiceDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, diameter_of, DistanceOracle, VertexSet, WeightedGraph};

pub(crate) fn checked_d(d: u64) -> Result<u32> {
    if d < 2 {
        return Err(Error::Precondition(format!("d must be at least 2, got {d}")));
    }
    u32::try_from(d).map_err(|_| Error::TooLarge(format!("d = {d}")))
}

/// Per-node counting tables, children before parents.
pub fn count_tables(g: &WeightedGraph, nd: &NiceDecomposition, dist: &DistanceOracle, d: u64, k: usize) -> Result<Vec<CountTable>> {
    let d = checked_d(d)?;
    nd.validate(g)?;
    let mut tables: Vec<CountTable> = Vec::with_capacity(nd.nodes.len());
    for node in &nd.nodes {
        let child = |c: usize| &tables[node.children[c]];
        let t = match node.kind {
            NodeKind::Leaf => leaf(node.bag.members()[0], d, k)?,
            NodeKind::Introduce(v) => introduce(child(0), v, dist)?,
            NodeKind::Forget(x) => forget(child(0), x, dist)?,
            NodeKind::Join => join(child(0), child(1), dist)?,
        };
        tables.push(t);
    }
    Ok(tables)
}

/// Table of the subtree at `node`; the two sides of a join run through `rayon::join`.
fn subtree_table(nd: &NiceDecomposition, node: usize, dist: &DistanceOracle, d: u32, k: usize) -> Result<CountTable> {
    let mut chain = Vec::new();
    let mut cur = node;
    while matches!(nd.nodes[cur].kind, NodeKind::Introduce(_) | NodeKind::Forget(_)) {
        chain.push(cur);
        cur = nd.nodes[cur].children[0];
    }
    let bottom = &nd.nodes[cur];
    let mut t = match bottom.kind {
        NodeKind::Join => {
            let (l, r) = rayon::join(
                || subtree_table(nd, bottom.children[0], dist, d, k),
                || subtree_table(nd, bottom.children[1], dist, d, k),
            );
            join(&l?, &r?, dist)?
        }
        _ => leaf(bottom.bag.members()[0], d, k)?,
    };
    for &x in chain.iter().rev() {
        t = match nd.nodes[x].kind {
            NodeKind::Introduce(v) => introduce(&t, v, dist)?,
            NodeKind::Forget(v) => forget(&t, v, dist)?,
            _ => unreachable!(),
        };
    }
    Ok(t)
}

/// Number of d-scattered sets of each size `0..=k`. Sibling subtrees are processed
/// concurrently on the current rayon pool.
pub fn count_scattered(g: &WeightedGraph, nd: &NiceDecomposition, d: u64, k: usize) -> Result<Vec<BigInt>> {
    let d = checked_d(d)?;
    nd.validate(g)?;
    let dist = all_pairs_distances(g)?;
    let root = subtree_table(nd, nd.root, &dist, d, k)?;
    Ok((0..=k).map(|kappa| root.get(kappa, &[])).collect())
}

/// Maximum d-scattered set, with the full reconstruction trace.
pub fn max_scattered_outcome(g: &WeightedGraph, nd: &NiceDecomposition, d: u64) -> Result<MaxOutcome> {
    let space = ExactStates { d: checked_d(d)? };
    nd.validate(g)?;
    let dist = all_pairs_distances(g)?;
    Engine { space: &space, dist: &dist }.solve(nd)
}

/// Maximum d-scattered set and a witness.
pub fn max_scattered(g: &WeightedGraph, nd: &NiceDecomposition, d: u64) -> Result<(usize, VertexSet)> {
    let out = max_scattered_outcome(g, nd, d)?;
    Ok((out.size, out.witness))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthSolution {
    pub size: usize,
    pub witness: VertexSet,
    /// False when every component was settled by the diameter shortcut.
    pub used_dp: bool,
}

/// Unit-weight solver: a component whose diameter is below `d` contributes one vertex,
/// any other component goes through the decomposition DP.
pub fn solve_via_treedepth(g: &WeightedGraph, d: u64) -> Result<TreedepthSolution> {
    if !g.is_unit() {
        return Err(Error::Precondition("unit edge weights required".into()));
    }
    checked_d(d)?;
    let mut size = 0;
    let mut witness = Vec::new();
    let mut used_dp = false;
    for comp in g.components() {
        let h = g.induced(&comp);
        let dist = all_pairs_distances(&h)?;
        if d > diameter_of(&dist) {
            size += 1;
            witness.push(comp[0]);
            continue;
        }
        used_dp = true;
        let nd = make_nice(&heuristic_decomposition(&h))?;
        let (s, w) = max_scattered(&h, &nd, d)?;
        size += s;
        witness.extend(w.members().iter().map(|&i| comp[i]));
    }
    Ok(TreedepthSolution { size, witness: VertexSet::from(witness), used_dp })
}
