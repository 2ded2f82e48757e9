//! The vertex-cover algorithm on a double star, showing the packing reduction.

use scattered::graph_core::VertexSet;
use scattered::vc_fpt::{compute_vertex_cover, max_scattered_vc, neighborhood_classes, reduce_to_packing, solve_packing};
use scattered::WeightedGraph;

fn main() -> scattered::Result<()> {
    // Two hubs joined by an edge, each with three leaves.
    let g = WeightedGraph::unit(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])?;
    let cover = compute_vertex_cover(&g);
    let classes = neighborhood_classes(&g, &cover)?;
    println!("cover {:?}, class representatives {:?}", cover.members(), classes.members());
    for d in 3..=4 {
        let inst = reduce_to_packing(&g, &cover, &classes, d)?;
        let sol = solve_packing(&inst)?;
        println!("d={d}: packing of {} sets over {} elements, {} profiles", sol.size, inst.universe_size(), sol.visited_profiles);
        let (size, witness): (usize, VertexSet) = max_scattered_vc(&g, d, Some(&cover))?;
        println!("d={d}: size {size}, witness {:?}", witness.members());
    }
    Ok(())
}
