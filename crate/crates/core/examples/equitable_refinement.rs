//! Equitable vertex labelling of a labelled digraph.

use graphbt::digraph::LabelledDigraph;
use graphbt::equitable::{equitable, is_equitable};
use graphbt::label::LabelTerm;

fn main() -> graphbt::error::Result<()> {
    // a path 1-2-3-4-5 with undirected edges
    let mut arcs = Vec::new();
    for v in 0..4u32 {
        arcs.push((v, v + 1, LabelTerm::int(0)));
        arcs.push((v + 1, v, LabelTerm::int(0)));
    }
    let d = LabelledDigraph::new(5, vec![LabelTerm::int(0); 5], arcs)?;
    let r = equitable(&d);
    for (i, (_, cell)) in r.cells.iter().enumerate() {
        let pts: Vec<u32> = cell.iter().map(|v| v + 1).collect();
        println!("cell {i}: {pts:?}");
    }
    println!("equitable: {}", is_equitable(&d, &r.vertex_labels(5)));
    Ok(())
}
