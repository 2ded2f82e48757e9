//! Maximum d-scattered set on a grid through the decomposition DP, with its witness.

use scattered::decomp::{heuristic_decomposition, make_nice};
use scattered::graph_core::is_scattered;
use scattered::tw_exact::max_scattered;
use scattered::WeightedGraph;

fn grid(rows: usize, cols: usize) -> scattered::Result<WeightedGraph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), 1));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), 1));
            }
        }
    }
    WeightedGraph::from_edges(rows * cols, &edges)
}

fn main() -> scattered::Result<()> {
    let g = grid(4, 6)?;
    let td = heuristic_decomposition(&g);
    let nd = make_nice(&td)?;
    println!("4x6 grid, decomposition width {}", td.width());
    for d in 2..=5 {
        let (size, witness) = max_scattered(&g, &nd, d)?;
        assert!(is_scattered(&g, &witness, d));
        println!("d={d}: size {size}, witness {:?}", witness.members());
    }
    Ok(())
}
