//! Count d-scattered sets of every size on a weighted cycle and compare with brute force.

use scattered::decomp::{heuristic_decomposition, make_nice};
use scattered::oracle::brute_force_count;
use scattered::tw_exact::count_scattered;
use scattered::WeightedGraph;

fn main() -> scattered::Result<()> {
    let g = WeightedGraph::from_edges(6, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 3), (4, 5, 1), (5, 0, 2)])?;
    let nd = make_nice(&heuristic_decomposition(&g))?;
    for d in 2..=5 {
        let counts = count_scattered(&g, &nd, d, 6)?;
        let brute = brute_force_count(&g, d, 6)?;
        println!("d={d}: {:?} (brute force {:?})", counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(), brute);
    }
    Ok(())
}
