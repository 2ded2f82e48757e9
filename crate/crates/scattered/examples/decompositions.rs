//! Heuristic, balanced and nice decompositions of a long path, in the `.td` format.

use scattered::decomp::{balance, depth_bound, heuristic_decomposition, make_nice, validate_decomposition, write_td, TreeDecomposition};
use scattered::graph_core::VertexSet;
use scattered::WeightedGraph;

fn main() -> scattered::Result<()> {
    let n = 64;
    let g = WeightedGraph::path(n);
    let path = TreeDecomposition::path((0..n - 1).map(|i| VertexSet::from([i, i + 1])).collect());
    let bal = balance(&path, &g)?;
    println!("path decomposition: width {}, depth {}", path.width(), path.depth());
    println!("balanced:           width {}, depth {} (bound {})", bal.width(), bal.depth(), depth_bound(n));
    let nice = make_nice(&heuristic_decomposition(&g))?;
    println!("nice form: {} nodes, width {}", nice.nodes.len(), nice.width());
    let small = WeightedGraph::cycle(5);
    let td = heuristic_decomposition(&small);
    println!("C5 width {:?}\n{}", validate_decomposition(&small, &td), write_td(&td, 5));
    Ok(())
}
