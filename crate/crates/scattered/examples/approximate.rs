//! The rounded-state approximation: larger than the optimum, with relaxed distances.

use scattered::decomp::{heuristic_decomposition, make_nice};
use scattered::graph_core::all_pairs_distances;
use scattered::oracle::{gen_random_graph, RandomSpec};
use scattered::tw_approx::{approx_run, rational, satisfies_slack};
use scattered::tw_exact::max_scattered;
use num_rational::Ratio;

fn main() -> scattered::Result<()> {
    let g = gen_random_graph(&RandomSpec { n: 14, edge_probability: Ratio::new(1, 4), max_weight: 5, seed: 3 })?;
    let td = heuristic_decomposition(&g);
    let dist = all_pairs_distances(&g)?;
    let d = 9;
    let (opt, _) = max_scattered(&g, &make_nice(&td)?, d)?;
    for eps in [rational(1, 1), rational(1, 2), rational(1, 10)] {
        let run = approx_run(&g, &td, d, &eps)?;
        assert!(run.size >= opt && satisfies_slack(&dist, &run.witness, d, &eps));
        println!("eps={eps}: delta={} ({} rounded values), size {} vs optimum {opt}", run.delta, run.domain.len(), run.size);
    }
    Ok(())
}
