//! The unit-weight wrapper: components with small diameter are settled without the DP.

use scattered::tw_exact::solve_via_treedepth;
use scattered::WeightedGraph;

fn main() -> scattered::Result<()> {
    let g = WeightedGraph::unit(9, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)])?;
    for d in 2..=7 {
        let s = solve_via_treedepth(&g, d)?;
        println!("d={d}: size {}, witness {:?}, dp used {}", s.size, s.witness.members(), s.used_dp);
    }
    Ok(())
}
