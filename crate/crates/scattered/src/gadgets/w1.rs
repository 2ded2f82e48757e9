use std::collections::BTreeMap;

use super::td_eth::hub_link;
use super::{Builder, CertificateKind, GadgetOutput, McisInstance};
use crate::error::Result;
use crate::graph_core::VertexSet;

struct Layout {
    p: Vec<Vec<usize>>,
    a: Vec<usize>,
    b: Vec<usize>,
    /// Non-edges `((i1, j1), (i2, j2))` with `i1 < i2`, 0-based, and their vertices.
    u: Vec<(((usize, usize), (usize, usize)), usize)>,
    g: BTreeMap<(usize, usize), (usize, usize)>,
}

fn layout(inst: &McisInstance, b: &mut Builder) -> Layout {
    let (k, n) = (inst.k, inst.n);
    let p = (0..k).map(|_| b.vertices(n)).collect();
    let a = b.vertices(k);
    let bb = b.vertices(k);
    let mut u = Vec::new();
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            for j1 in 0..n {
                for j2 in 0..n {
                    if !inst.has_edge((i1, j1), (i2, j2)) {
                        u.push((((i1, j1), (i2, j2)), b.vertex()));
                    }
                }
            }
        }
    }
    let mut g = BTreeMap::new();
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            g.insert((i1, i2), (b.vertex(), b.vertex()));
        }
    }
    Layout { p, a, b: bb, u, g }
}

fn witness(inst: &McisInstance, lay: &Layout, selection: Option<&[usize]>) -> (Option<VertexSet>, Option<String>) {
    let Some(sel) = selection else { return (None, None) };
    if !inst.is_solution(sel) {
        return (None, Some("selection is not a multicolored independent set".into()));
    }
    let mut w: Vec<usize> = (0..inst.k).map(|i| lay.p[i][sel[i]]).collect();
    for &(((i1, j1), (i2, j2)), x) in &lay.u {
        if sel[i1] == j1 && sel[i2] == j2 {
            w.push(x);
        }
    }
    w.extend(lay.g.values().map(|&(_, g2)| g2));
    (Some(VertexSet::from(w)), None)
}

fn params(inst: &McisInstance, lay: &Layout) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("k".into(), inst.k.to_string()),
        ("n".into(), inst.n.to_string()),
        ("non_edges".into(), lay.u.len().to_string()),
    ])
}

/// Edge-weighted construction with vertex cover `{a_i, b_i, g_ij}`. All weights and `d`
/// are doubled (`d = 12n`) so the half-integral `g` edges become integers.
pub fn gen_w1_vc(inst: &McisInstance, selection: Option<&[usize]>) -> Result<GadgetOutput> {
    let n = inst.n as u64;
    let mut b = Builder::default();
    let lay = layout(inst, &mut b);
    for i in 0..inst.k {
        for (l, &x) in lay.p[i].iter().enumerate() {
            let l = l as u64 + 1;
            b.edge(lay.a[i], x, 2 * (n + l));
            b.edge(lay.b[i], x, 2 * (2 * n - l));
        }
    }
    for &(((i1, j1), (i2, j2)), x) in &lay.u {
        for (i, j) in [(i1, j1 as u64 + 1), (i2, j2 as u64 + 1)] {
            b.edge(x, lay.a[i], 2 * (5 * n - j));
            b.edge(x, lay.b[i], 2 * (4 * n + j));
        }
        let (g1, _) = lay.g[&(i1, i2)];
        b.edge(g1, x, 6 * n - 1);
    }
    for &(g1, g2) in lay.g.values() {
        b.edge(g1, g2, 6 * n + 1);
    }
    let (witness, refusal) = witness(inst, &lay, selection);
    let certificate: VertexSet = lay.a.iter().chain(&lay.b).copied().chain(lay.g.values().map(|&(g1, _)| g1)).collect();
    let mut params = params(inst, &lay);
    params.insert("weight_scale".into(), "2".into());
    Ok(GadgetOutput {
        graph: b.finish()?,
        d: 12 * n,
        target_size: inst.k * inst.k,
        witness,
        refusal,
        certificate,
        certificate_kind: CertificateKind::VertexCover,
        params,
    })
}

/// Unit-weight version: weighted edges become paths, `g`–`u_e` links have length
/// `L = max(1, ⌈(n−1)/2⌉)` and `g`–`g'` length `6n − L`. `{a_i, b_i}` is a feedback vertex set.
pub fn gen_fvs_unweighted(inst: &McisInstance, selection: Option<&[usize]>) -> Result<GadgetOutput> {
    let n = inst.n as u64;
    let link = hub_link(n);
    let mut b = Builder::default();
    let lay = layout(inst, &mut b);
    for i in 0..inst.k {
        for (l, &x) in lay.p[i].iter().enumerate() {
            let l = l as u64 + 1;
            b.path(lay.a[i], x, n + l);
            b.path(lay.b[i], x, 2 * n - l);
        }
    }
    for &(((i1, j1), (i2, j2)), x) in &lay.u {
        for (i, j) in [(i1, j1 as u64 + 1), (i2, j2 as u64 + 1)] {
            b.path(x, lay.a[i], 5 * n - j);
            b.path(x, lay.b[i], 4 * n + j);
        }
        let (g1, _) = lay.g[&(i1, i2)];
        b.path(g1, x, link);
    }
    for &(g1, g2) in lay.g.values() {
        b.path(g1, g2, 6 * n - link);
    }
    let (witness, refusal) = witness(inst, &lay, selection);
    let certificate: VertexSet = lay.a.iter().chain(&lay.b).copied().collect();
    Ok(GadgetOutput {
        graph: b.finish()?,
        d: 6 * n,
        target_size: inst.k * inst.k,
        witness,
        refusal,
        certificate,
        certificate_kind: CertificateKind::FeedbackVertexSet,
        params: params(inst, &lay),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::parse_mcis;
    use crate::graph_core::is_scattered;
    use crate::oracle::brute_force_max;

    fn yes() -> McisInstance {
        parse_mcis("p mcis 2 2\ne 1.1 2.2\ne 1.2 2.1\ne 1.2 2.2\n").unwrap()
    }

    fn no() -> McisInstance {
        parse_mcis("p mcis 2 2\ne 1.1 2.1\ne 1.1 2.2\ne 1.2 2.1\ne 1.2 2.2\n").unwrap()
    }

    #[test]
    fn weighted_yes_instance() {
        let out = gen_w1_vc(&yes(), Some(&[0, 0])).unwrap();
        assert_eq!((out.d, out.target_size), (24, 4));
        let w = out.witness.clone().unwrap();
        // p^1_1, p^2_1, u_e, g'_{1,2}
        assert_eq!(w, VertexSet::from([0, 2, 8, 10]));
        assert!(is_scattered(&out.graph, &w, out.d));
        assert!(out.certificate_holds());
        assert_eq!(brute_force_max(&out.graph, out.d).unwrap().0, 4);
    }

    #[test]
    fn weighted_no_instance() {
        let out = gen_w1_vc(&no(), Some(&[0, 0])).unwrap();
        assert!(out.witness.is_none() && out.refusal.is_some());
        assert_eq!(out.graph.n(), 10);
        assert!(brute_force_max(&out.graph, out.d).unwrap().0 < 4);
        assert!(out.certificate_holds());
    }

    #[test]
    fn unweighted_yes_instance() {
        let inst = yes();
        let out = gen_fvs_unweighted(&inst, Some(&[0, 0])).unwrap();
        assert_eq!(out.d, 12);
        assert!(out.graph.is_unit());
        let w = out.witness.clone().unwrap();
        assert_eq!(w.len(), 4);
        assert!(is_scattered(&out.graph, &w, 12));
        assert!(out.certificate_holds());
        let (k, n, ne) = (2, 2, 1);
        let pairs = k * (k - 1) / 2;
        let expect = k * n + 2 * k + ne + 2 * pairs + k * n * (3 * n - 2) + ne * (18 * n - 4) + pairs * (6 * n - 2);
        assert_eq!(out.graph.n(), expect);
    }

    #[test]
    fn unweighted_witness_with_many_non_edges() {
        let inst = McisInstance::new(3, 5, &[((0, 0), (1, 1)), ((1, 4), (2, 4)), ((0, 4), (2, 0))]).unwrap();
        for sel in [[4, 4, 3], [0, 0, 0], [2, 3, 1]] {
            let out = gen_fvs_unweighted(&inst, Some(&sel)).unwrap();
            let w = out.witness.clone().unwrap();
            assert_eq!(w.len(), 9);
            assert!(is_scattered(&out.graph, &w, out.d), "{sel:?}");
            assert!(out.certificate_holds());
            let w1 = gen_w1_vc(&inst, Some(&sel)).unwrap();
            assert!(is_scattered(&w1.graph, &w1.witness.unwrap(), w1.d));
        }
    }
}
