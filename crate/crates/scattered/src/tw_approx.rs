//! Approximation over rounded distance states: the maximization DP re-run with
//! states restricted to `{0} ∪ {(1+δ)^l ≤ d}` on a balanced decomposition.
//! The result is `d/(1+ε)`-scattered and at least as large as a d-optimum.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decomp::{balance, make_nice, NiceDecomposition, NodeKind, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, DistanceOracle, VertexSet, WeightedGraph, INF};
use crate::tw_exact::{Engine, StateSpace};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Parse `p/q`, an integer, or a decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Precondition(format!("not a rational number: {text}"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((a, b)) = t.split_once('.') {
        let digits = format!("{a}{b}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        return Ok(Rational::new(p, BigInt::from(10u32).pow(b.len() as u32)));
    }
    Ok(Rational::from_integer(t.parse().map_err(|_| bad())?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedDomain {
    pub delta: Rational,
    /// `0, 1, (1+δ), (1+δ)², ...` up to `d`, strictly increasing.
    pub values: Vec<Rational>,
}

impl RoundedDomain {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the largest domain value `≤ x`.
    pub fn floor_index(&self, x: &Rational) -> usize {
        self.values.partition_point(|v| v <= x) - 1
    }
}

pub fn build_rounded_domain(d: u64, delta: &Rational) -> Result<RoundedDomain> {
    if d < 2 || !delta.is_positive() {
        return Err(Error::Precondition("need d ≥ 2 and δ > 0".into()));
    }
    let base = Rational::one() + delta;
    let top = int(d);
    let mut values = vec![Rational::zero()];
    let mut p = Rational::one();
    while p <= top {
        values.push(p.clone());
        p *= &base;
    }
    Ok(RoundedDomain { delta: delta.clone(), values })
}

/// `x1 ⊕ x2`: the largest domain value not exceeding `x1 + x2` (0 when both are 0).
pub fn round_add(x1: &Rational, x2: &Rational, dom: &RoundedDomain) -> Rational {
    dom.values[dom.floor_index(&(x1 + x2))].clone()
}

pub fn choose_delta(epsilon: &Rational, depth: usize) -> Rational {
    epsilon / int(depth.max(1) as u64)
}

/// Rounded states used by the maximization engine; index 0 is "selected".
pub struct RoundedStates {
    pub dom: RoundedDomain,
    d: u64,
    one_plus_eps: Rational,
    memo: RefCell<HashMap<(u32, u64), u32>>,
}

impl RoundedStates {
    pub fn new(dom: RoundedDomain, d: u64, epsilon: &Rational) -> Self {
        RoundedStates { dom, d, one_plus_eps: Rational::one() + epsilon, memo: RefCell::new(HashMap::new()) }
    }

    /// `x ≥ d/(1+ε)`, exactly.
    fn far(&self, x: Rational) -> bool {
        x * &self.one_plus_eps >= int(self.d)
    }

    fn add_index(&self, s: u32, dist: u64) -> u32 {
        if dist == INF || dist >= self.d {
            return self.top();
        }
        *self
            .memo
            .borrow_mut()
            .entry((s, dist))
            .or_insert_with(|| self.dom.floor_index(&(&self.dom.values[s as usize] + int(dist))) as u32)
    }
}

impl StateSpace for RoundedStates {
    fn radix(&self) -> u32 {
        self.dom.len() as u32
    }
    fn top(&self) -> u32 {
        self.dom.len() as u32 - 1
    }
    fn extend(&self, s: u32, dist: u64) -> u32 {
        self.add_index(s, dist)
    }
    fn from_dist(&self, dist: u64) -> u32 {
        self.add_index(0, dist)
    }
    fn select_ok(&self, s: u32, dist: u64) -> bool {
        dist == INF || self.far(&self.dom.values[s as usize] + int(dist))
    }
    fn zero_ok(&self, dist: u64) -> bool {
        dist == INF || self.far(int(dist))
    }
    fn pair_ok(&self, a: u32, b: u32) -> bool {
        self.far(&self.dom.values[a as usize] + &self.dom.values[b as usize])
    }
}

/// Longest number of roundings a state can accumulate: one per introduce node on a
/// root-to-leaf path, plus the rounding of the initial distance.
pub fn rounding_chain(nd: &NiceDecomposition) -> usize {
    let mut h = vec![0usize; nd.nodes.len()];
    for (i, node) in nd.nodes.iter().enumerate() {
        let below = node.children.iter().map(|&c| h[c]).max().unwrap_or(0);
        h[i] = below + matches!(node.kind, NodeKind::Introduce(_)) as usize;
    }
    h[nd.root] + 1
}

/// Halve `ε/h` until `(1+δ)^h ≤ 1+ε`, checked exactly.
pub fn safe_delta(epsilon: &Rational, h: usize) -> Rational {
    let bound = Rational::one() + epsilon;
    let mut delta = choose_delta(epsilon, h);
    loop {
        let base = Rational::one() + &delta;
        let mut p = Rational::one();
        for _ in 0..h {
            p *= &base;
        }
        if p <= bound {
            return delta;
        }
        delta /= int(2);
    }
}

#[derive(Clone, Debug)]
pub struct ApproxRun {
    pub size: usize,
    pub witness: VertexSet,
    pub delta: Rational,
    pub domain: RoundedDomain,
    pub nice: NiceDecomposition,
    /// Node ids and rounded state indices visited while reconstructing the witness.
    pub trace: Vec<(usize, Vec<u32>)>,
}

pub fn approx_run(g: &WeightedGraph, td: &TreeDecomposition, d: u64, epsilon: &Rational) -> Result<ApproxRun> {
    if d < 2 {
        return Err(Error::Precondition(format!("d must be at least 2, got {d}")));
    }
    if !epsilon.is_positive() {
        return Err(Error::Precondition("ε must be positive".into()));
    }
    let nd = make_nice(&balance(td, g)?)?;
    let delta = safe_delta(epsilon, rounding_chain(&nd));
    let domain = build_rounded_domain(d, &delta)?;
    let dist: DistanceOracle = all_pairs_distances(g)?;
    let space = RoundedStates::new(domain.clone(), d, epsilon);
    let out = Engine { space: &space, dist: &dist }.solve(&nd)?;
    Ok(ApproxRun { size: out.size, witness: out.witness, delta, domain, nice: nd, trace: out.trace })
}

/// A `d/(1+ε)`-scattered set at least as large as any d-scattered set.
pub fn approx_max_scattered(g: &WeightedGraph, td: &TreeDecomposition, d: u64, epsilon: &Rational) -> Result<(usize, VertexSet)> {
    let run = approx_run(g, td, d, epsilon)?;
    Ok((run.size, run.witness))
}

/// Exact check that `(1+ε)·dist(u,v) ≥ d` for every pair of `k`.
pub fn satisfies_slack(dist: &DistanceOracle, k: &VertexSet, d: u64, epsilon: &Rational) -> bool {
    let m = k.members();
    let scale = Rational::one() + epsilon;
    m.iter().enumerate().all(|(i, &u)| {
        m[i + 1..].iter().all(|&v| {
            let duv = dist.get(u, v);
            duv == INF || int(duv) * &scale >= int(d)
        })
    })
}
