use std::collections::BTreeMap;

use super::{Builder, CertificateKind, CnfFormula, GadgetOutput};
use crate::error::{Error, Result};
use crate::graph_core::VertexSet;

/// Base `c` of `d = 6·c^√n`; a group of √n three-literal clauses touches at most
/// 3√n variables, hence at most `8^√n` partial assignments.
pub const TD_ETH_BASE: u64 = 8;

const MAX_GROUP_VARS: usize = 24;
const MAX_VERTICES: u64 = 5_000_000;

struct Group {
    vars: Vec<usize>,
    /// Satisfying partial assignments as bit masks over `vars`.
    sats: Vec<u64>,
}

impl Group {
    fn value(&self, mask: u64, var: usize) -> Option<bool> {
        self.vars.iter().position(|&v| v == var).map(|i| mask >> i & 1 == 1)
    }

    fn compatible(&self, a: u64, other: &Group, b: u64) -> bool {
        self.vars.iter().all(|&v| match (self.value(a, v), other.value(b, v)) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        })
    }
}

fn build_group(clauses: &[Vec<i64>]) -> Result<Group> {
    let mut vars: Vec<usize> = clauses.iter().flatten().map(|l| l.unsigned_abs() as usize).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > MAX_GROUP_VARS {
        return Err(Error::Precondition(format!("a clause group touches {} variables", vars.len())));
    }
    let g = Group { vars, sats: Vec::new() };
    let sats = (0..1u64 << g.vars.len())
        .filter(|&mask| clauses.iter().all(|c| c.iter().any(|&l| g.value(mask, l.unsigned_abs() as usize) == Some(l > 0))))
        .collect();
    Ok(Group { sats, ..g })
}

/// Length of the `g`–`u` links: the shortest that keeps `p_l → b → u_{l'} → g → u_l`
/// at length at least `6c` for all `l' < l ≤ c`.
pub(crate) fn hub_link(c: u64) -> u64 {
    (c - 1).div_ceil(2).max(1)
}

/// Padding to a perfect-square variable count uses fresh variables `y` with clauses `(y ∨ ¬y)`.
pub fn gen_td_eth(phi: &CnfFormula, assignment: Option<&[bool]>) -> Result<GadgetOutput> {
    if phi.max_width() > 3 {
        return Err(Error::Precondition(format!("clauses of width {} exceed 3", phi.max_width())));
    }
    if phi.num_vars == 0 {
        return Err(Error::Precondition("formula has no variables".into()));
    }
    let s = (1..).find(|s| s * s >= phi.num_vars).unwrap();
    let n = s * s;
    let mut clauses = phi.clauses.clone();
    clauses.extend((phi.num_vars + 1..=n).map(|y| vec![y as i64, -(y as i64)]));
    let c = TD_ETH_BASE.checked_pow(s as u32).filter(|c| *c <= MAX_VERTICES).ok_or_else(|| Error::Precondition(format!("8^{s} is too large")))?;
    let per = clauses.len().div_ceil(s);
    let groups = (0..s)
        .map(|i| build_group(&clauses[(i * per).min(clauses.len())..((i + 1) * per).min(clauses.len())]))
        .collect::<Result<Vec<_>>>()?;
    if let Some(g) = groups.iter().find(|g| g.sats.len() as u64 > c) {
        return Err(Error::Precondition(format!("a group has {} satisfying assignments, above {c}", g.sats.len())));
    }
    let mut pairs = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            for (l, &x) in groups[i].sats.iter().enumerate() {
                for (o, &y) in groups[j].sats.iter().enumerate() {
                    if groups[i].compatible(x, &groups[j], y) {
                        pairs.push((i, l, j, o));
                    }
                }
            }
        }
    }
    let total_p: u64 = groups.iter().map(|g| g.sats.len() as u64).sum();
    let estimate = total_p * (3 * c - 1) + 2 * s as u64 + pairs.len() as u64 * (18 * c + c / 2) + (s * s) as u64 * 3 * c;
    if estimate > MAX_VERTICES {
        return Err(Error::Precondition(format!("output would have about {estimate} vertices")));
    }

    let mut b = Builder::default();
    let p: Vec<Vec<usize>> = groups.iter().map(|g| b.vertices(g.sats.len())).collect();
    let a = b.vertices(s);
    let bb = b.vertices(s);
    for i in 0..s {
        for (l, &x) in p[i].iter().enumerate() {
            let l = l as u64 + 1;
            b.path(a[i], x, c + l);
            b.path(bb[i], x, 2 * c - l);
        }
    }
    let link = hub_link(c);
    let mut gs = BTreeMap::new();
    for i in 0..s {
        for j in i + 1..s {
            let g = b.vertex();
            let g2 = b.vertex();
            b.path(g, g2, 6 * c - link);
            gs.insert((i, j), (g, g2));
        }
    }
    let mut u = BTreeMap::new();
    for &(i, l, j, o) in &pairs {
        let x = b.vertex();
        for (grp, idx) in [(i, l), (j, o)] {
            let idx = idx as u64 + 1;
            b.path(x, a[grp], 5 * c - idx);
            b.path(x, bb[grp], 4 * c + idx);
        }
        b.path(gs[&(i, j)].0, x, link);
        u.insert((i, l, j, o), x);
    }

    let (witness, refusal) = match assignment {
        None => (None, None),
        Some(values) if values.len() != phi.num_vars => {
            return Err(Error::Precondition(format!("assignment has {} values for {} variables", values.len(), phi.num_vars)));
        }
        Some(values) if !phi.satisfied_by(values) => (None, Some("assignment does not satisfy the formula".into())),
        Some(values) => {
            let value = |v: usize| values.get(v - 1).copied().unwrap_or(false);
            let pick: Vec<usize> = groups
                .iter()
                .map(|g| {
                    let mask = g.vars.iter().enumerate().filter(|&(_, &v)| value(v)).map(|(i, _)| 1u64 << i).sum();
                    g.sats.iter().position(|&x| x == mask).expect("restriction of a satisfying assignment")
                })
                .collect();
            let mut w: Vec<usize> = (0..s).map(|i| p[i][pick[i]]).collect();
            for i in 0..s {
                for j in i + 1..s {
                    w.push(u[&(i, pick[i], j, pick[j])]);
                    w.push(gs[&(i, j)].1);
                }
            }
            (Some(VertexSet::from(w)), None)
        }
    };
    let params = BTreeMap::from([
        ("c".into(), TD_ETH_BASE.to_string()),
        ("groups".into(), s.to_string()),
        ("padded_vars".into(), n.to_string()),
        ("c_pow".into(), c.to_string()),
    ]);
    Ok(GadgetOutput {
        graph: b.finish()?,
        d: 6 * c,
        target_size: n,
        witness,
        refusal,
        certificate: VertexSet::new(),
        certificate_kind: CertificateKind::None,
        params,
    })
}
