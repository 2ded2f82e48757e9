//! Generators for the hardness-reduction instances: the weighted vertex-cover and
//! unweighted feedback-vertex-set constructions from multicolored independent set,
//! the treewidth construction from q-SAT and the tree-depth construction from 3-SAT.
//! Each emits the graph, `d`, the target size, a canonical witness when a solution
//! of the source instance is supplied, and a structural certificate.

mod formats;
mod seth;
mod td_eth;
mod w1;

use std::collections::BTreeMap;

pub use formats::{parse_cnf, parse_literals, parse_mcis, parse_selection, CnfFormula, McisInstance};
pub use seth::{gen_seth, seth_parameters, SethParams};
pub use td_eth::{gen_td_eth, TD_ETH_BASE};
pub use w1::{gen_fvs_unweighted, gen_w1_vc};

use crate::error::Result;
use crate::graph_core::{VertexSet, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    VertexCover,
    FeedbackVertexSet,
    None,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::VertexCover => "vertex-cover",
            CertificateKind::FeedbackVertexSet => "feedback-vertex-set",
            CertificateKind::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GadgetOutput {
    pub graph: WeightedGraph,
    pub d: u64,
    pub target_size: usize,
    pub witness: Option<VertexSet>,
    /// Why a requested witness was not produced.
    pub refusal: Option<String>,
    pub certificate: VertexSet,
    pub certificate_kind: CertificateKind,
    pub params: BTreeMap<String, String>,
}

impl GadgetOutput {
    /// Does the certificate do what its kind claims?
    pub fn certificate_holds(&self) -> bool {
        let c = &self.certificate;
        match self.certificate_kind {
            CertificateKind::VertexCover => self.graph.edges().iter().all(|&(u, v, _)| c.contains(u) || c.contains(v)),
            CertificateKind::FeedbackVertexSet => self.graph.is_forest_without(c.members()),
            CertificateKind::None => true,
        }
    }
}

/// Incremental graph construction with fresh vertex ids.
#[derive(Default)]
pub(crate) struct Builder {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl Builder {
    pub fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn vertices(&mut self, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.vertex()).collect()
    }

    pub fn edge(&mut self, u: usize, v: usize, w: u64) {
        self.edges.push((u, v, w));
    }

    /// Unit-weight path of `len` edges from `u` to `v`; returns the inner vertices in order.
    pub fn path(&mut self, u: usize, v: usize, len: u64) -> Vec<usize> {
        let inner = self.vertices(len as usize - 1);
        let mut prev = u;
        for &x in &inner {
            self.edge(prev, x, 1);
            prev = x;
        }
        self.edge(prev, v, 1);
        inner
    }

    /// Chain of `count` new vertices hanging off `from`; returns them in order.
    pub fn tail(&mut self, from: usize, count: usize) -> Vec<usize> {
        let vs = self.vertices(count);
        let mut prev = from;
        for &x in &vs {
            self.edge(prev, x, 1);
            prev = x;
        }
        vs
    }

    pub fn clique(&mut self, vs: &[usize]) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.edge(a, b, 1);
            }
        }
    }

    pub fn finish(self) -> Result<WeightedGraph> {
        WeightedGraph::from_edges(self.n.max(1), &self.edges)
    }
}
