//! Reduction instances with their canonical witnesses, checked for scatteredness.

use scattered::gadgets::{gen_fvs_unweighted, gen_seth, gen_td_eth, gen_w1_vc, parse_cnf, parse_mcis, GadgetOutput};
use scattered::graph_core::is_scattered;
use scattered::tw_approx::int;

fn show(name: &str, out: &GadgetOutput) {
    let w = out.witness.as_ref().expect("witness");
    println!(
        "{name}: {} vertices, {} edges, d={}, target {}, witness valid {}, {} certificate holds {}",
        out.graph.n(),
        out.graph.m(),
        out.d,
        out.target_size,
        w.len() == out.target_size && is_scattered(&out.graph, w, out.d),
        out.certificate_kind.name(),
        out.certificate_holds()
    );
}

fn main() -> scattered::Result<()> {
    let inst = parse_mcis("p mcis 3 3\ne 1.1 2.1\ne 2.2 3.2\ne 1.3 3.1\n")?;
    show("w1vc", &gen_w1_vc(&inst, Some(&[0, 1, 0]))?);
    show("fvs", &gen_fvs_unweighted(&inst, Some(&[0, 1, 0]))?);
    let phi = parse_cnf("p cnf 4 3\n1 -2 3 0\n-1 4 0\n2 -3 -4 0\n")?;
    let values = [true, false, false, true];
    show("seth d=3", &gen_seth(&phi, 3, &int(1), Some(&values))?);
    show("seth d=4", &gen_seth(&phi, 4, &int(1), Some(&values))?);
    show("tdeth", &gen_td_eth(&phi, Some(&values))?);
    Ok(())
}
