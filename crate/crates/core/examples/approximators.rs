//! Weak, strong and exact isomorphism approximators on a pair of stacks.

use graphbt::approx::{ApproxKind, Approximator};
use graphbt::digraph::{DigraphStack, LabelledDigraph};
use graphbt::label::LabelTerm;

fn undirected(edges: &[(u32, u32)], label: i64) -> LabelledDigraph {
    let arcs = edges
        .iter()
        .flat_map(|&(a, b)| [(a - 1, b - 1, LabelTerm::int(label)), (b - 1, a - 1, LabelTerm::int(label))])
        .collect();
    LabelledDigraph::new(6, vec![LabelTerm::int(0); 6], arcs).unwrap()
}

fn main() -> graphbt::error::Result<()> {
    let s = DigraphStack::from_digraphs(
        6,
        vec![
            undirected(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)], 0),
            undirected(&[(1, 2), (3, 6), (4, 5)], 1),
        ],
    )?;
    let t = DigraphStack::from_digraphs(
        6,
        vec![
            undirected(&[(6, 4), (4, 5), (5, 3), (3, 2), (2, 1), (1, 6)], 0),
            undirected(&[(6, 4), (5, 1), (3, 2)], 1),
        ],
    )?;
    let mut ap = Approximator::new();
    for kind in [ApproxKind::Weak, ApproxKind::Strong, ApproxKind::Full] {
        let a = ap.approx(kind, &s, &t)?;
        let rep = a.rep().map(|r| r.to_string()).unwrap_or_default();
        println!("{kind:?}: |Approx(S,T)| = {} rep {rep}", a.cardinality());
        println!("  fixed points of S: {:?}", ap.fixed_points(kind, &s)?);
    }
    Ok(())
}
