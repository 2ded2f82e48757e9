use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{pow, Signed};

use super::formats::literal_true;
use super::{Builder, CertificateKind, CnfFormula, GadgetOutput};
use crate::error::{Error, Result};
use crate::graph_core::VertexSet;
use crate::tw_approx::{int, Rational};

/// Largest group size for which the generator will enumerate partial assignments.
const MAX_GROUP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SethParams {
    pub d: u64,
    pub epsilon: Rational,
    /// Paths per group gadget; the least p with `d^p ≥ 2·(d−ε)^p`.
    pub p: usize,
    /// Variables per group; the largest γ with `2^γ ≤ d^p`.
    pub gamma: usize,
    pub t: usize,
    pub columns: usize,
    pub target: usize,
}

pub fn seth_parameters(d: u64, epsilon: &Rational, n: usize, m: usize) -> Result<SethParams> {
    if d < 3 {
        return Err(Error::Precondition(format!("d must exceed 2, got {d}")));
    }
    if !epsilon.is_positive() || epsilon > &int(1) {
        return Err(Error::Precondition(format!("ε must lie in (0, 1], got {epsilon}")));
    }
    if n == 0 || m == 0 {
        return Err(Error::Precondition("formula needs at least one variable and one clause".into()));
    }
    let (dd, lower) = (int(d), int(d) - epsilon);
    let mut p = 1;
    while pow(dd.clone(), p) < int(2) * pow(lower.clone(), p) {
        p += 1;
    }
    let gamma = (pow(BigUint::from(d), p).bits() - 1) as usize;
    let t = n.div_ceil(gamma);
    let columns = m * (t * p * (d as usize - 1) + 1);
    Ok(SethParams { d, epsilon: epsilon.clone(), p, gamma, t, columns, target: (t * p + 2) * columns })
}

struct Shape<'a> {
    phi: &'a CnfFormula,
    pr: &'a SethParams,
}

impl Shape<'_> {
    fn group_of(&self, var: usize) -> (usize, usize) {
        ((var - 1) / self.pr.gamma, (var - 1) % self.pr.gamma)
    }

    fn group_len(&self, tau: usize) -> usize {
        (self.phi.num_vars - tau * self.pr.gamma).min(self.pr.gamma)
    }

    /// Position (0-based) of the selected vertex on path `l` for assignment code `alpha`.
    fn digit(&self, alpha: usize, l: usize) -> usize {
        (alpha / (self.pr.d as usize).pow(l as u32)) % self.pr.d as usize
    }

    /// Inputs of the clause gadget for clause `mu`: `(literal index, group, alpha)`.
    fn inputs(&self, mu: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (li, &lit) in self.phi.clauses[mu].iter().enumerate() {
            let (tau, bit) = self.group_of(lit.unsigned_abs() as usize);
            for alpha in 0..1usize << self.group_len(tau) {
                if ((alpha >> bit) & 1 == 1) == (lit > 0) {
                    out.push((li, tau, alpha));
                }
            }
        }
        out
    }

    fn alpha_of(&self, tau: usize, values: &[bool]) -> usize {
        (0..self.group_len(tau)).filter(|&b| values[tau * self.pr.gamma + b]).map(|b| 1 << b).sum()
    }
}

/// Columns of `t` gadgets of `p` paths on `d` vertices chained into `tp` long paths, one
/// clause gadget per column, and connectors that put each clause input at distance
/// `d−1` from every path vertex outside its assignment's selection.
pub fn gen_seth(phi: &CnfFormula, d: u64, epsilon: &Rational, assignment: Option<&[bool]>) -> Result<GadgetOutput> {
    let pr = seth_parameters(d, epsilon, phi.num_vars, phi.clauses.len())?;
    let sh = Shape { phi, pr: &pr };
    if (0..pr.t).any(|tau| sh.group_len(tau) > MAX_GROUP) {
        return Err(Error::Precondition(format!("groups of {} variables are too large to enumerate", pr.gamma)));
    }
    let (du, half, odd) = (d as usize, d as usize / 2, d % 2 == 1);
    let m = phi.clauses.len();

    let chosen = match assignment {
        Some(values) if values.len() != phi.num_vars => {
            return Err(Error::Precondition(format!("assignment has {} values for {} variables", values.len(), phi.num_vars)));
        }
        Some(values) if phi.satisfied_by(values) => {
            let alphas: Vec<usize> = (0..pr.t).map(|tau| sh.alpha_of(tau, values)).collect();
            let picks: Vec<(usize, usize, usize)> = (0..m)
                .map(|mu| {
                    let li = phi.clauses[mu].iter().position(|&l| literal_true(l, values)).unwrap_or(0);
                    let (tau, _) = sh.group_of(phi.clauses[mu][li].unsigned_abs() as usize);
                    (li, tau, alphas[tau])
                })
                .collect();
            Ok((alphas, picks))
        }
        Some(_) => Err("assignment does not satisfy the formula".to_string()),
        None => Err(String::new()),
    };

    let mut b = Builder::default();
    let mut witness = Vec::new();
    let mut prev_last: Option<Vec<Vec<usize>>> = None;
    let inputs: Vec<_> = (0..m).map(|mu| sh.inputs(mu)).collect();
    for j in 0..pr.columns {
        let mu = j % m;
        // paths[tau * p + l][i]
        let paths: Vec<Vec<usize>> = (0..pr.t * pr.p).map(|_| b.vertices(du)).collect();
        for path in &paths {
            for w in path.windows(2) {
                b.edge(w[0], w[1], 1);
            }
        }
        if let Some(last) = &prev_last {
            for (x, path) in last.iter().zip(&paths) {
                b.edge(x[0], path[0], 1);
            }
        }
        prev_last = Some(paths.iter().map(|pth| vec![pth[du - 1]]).collect());

        let ins = &inputs[mu];
        let v = b.vertices(ins.len());
        let b_path = b.vertices(du - half + 1);
        for w in b_path.windows(2) {
            b.edge(w[0], w[1], 1);
        }
        let b_end = *b_path.last().unwrap();
        let mut a_ends = Vec::new();
        for &x in &v {
            let a = b.tail(x, half - 1);
            a_ends.push(*a.last().unwrap_or(&x));
        }
        if !odd {
            b.clique(&a_ends);
        }
        for &a in &a_ends {
            b.edge(a, b_end, 1);
        }

        for (&x, &(_, tau, alpha)) in v.iter().zip(ins) {
            let hub = b.tail(x, half - 1).last().copied().unwrap_or(x);
            let y_len = if odd { half } else { half - 1 };
            for l in 0..pr.p {
                let keep = sh.digit(alpha, l);
                let mut ends = Vec::new();
                for (i, &pv) in paths[tau * pr.p + l].iter().enumerate() {
                    if i != keep {
                        let end = *b.tail(pv, y_len).last().unwrap();
                        b.edge(end, hub, 1);
                        ends.push(end);
                    }
                }
                if !odd {
                    b.clique(&ends);
                }
            }
        }

        if let Ok((alphas, picks)) = &chosen {
            for tau in 0..pr.t {
                for l in 0..pr.p {
                    witness.push(paths[tau * pr.p + l][sh.digit(alphas[tau], l)]);
                }
            }
            let pick = picks[mu];
            witness.push(v[ins.iter().position(|&inp| inp == pick).unwrap()]);
            witness.push(b_path[0]);
        }
    }

    let (witness, refusal) = match chosen {
        Ok(_) => (Some(VertexSet::from(witness)), None),
        Err(msg) if msg.is_empty() => (None, None),
        Err(msg) => (None, Some(msg)),
    };
    let params = BTreeMap::from([
        ("p".into(), pr.p.to_string()),
        ("gamma".into(), pr.gamma.to_string()),
        ("t".into(), pr.t.to_string()),
        ("lambda".into(), format!("log_{d}({})", int(d) - epsilon)),
        ("epsilon".into(), epsilon.to_string()),
        ("columns".into(), pr.columns.to_string()),
    ]);
    Ok(GadgetOutput {
        graph: b.finish()?,
        d,
        target_size: pr.target,
        witness,
        refusal,
        certificate: VertexSet::new(),
        certificate_kind: CertificateKind::None,
        params,
    })
}
