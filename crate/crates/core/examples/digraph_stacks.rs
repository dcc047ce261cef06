//! Labelled digraphs, stacks, the group action and squashing.

use graphbt::digraph::{DigraphStack, LabelledDigraph};
use graphbt::label::LabelTerm;
use graphbt::perm::Permutation;

fn main() -> graphbt::error::Result<()> {
    let white = LabelTerm::bytes(b"white");
    let black = LabelTerm::bytes(b"black");
    let cycle = LabelledDigraph::new(
        4,
        vec![white.clone(); 4],
        vec![(0, 1, LabelTerm::int(0)), (1, 2, LabelTerm::int(0)), (2, 3, LabelTerm::int(0)), (3, 0, LabelTerm::int(0))],
    )?;
    let mut colours = vec![white; 4];
    colours[0] = black;
    let marked = LabelledDigraph::new(4, colours, vec![])?;

    let s = DigraphStack::from_digraphs(4, vec![cycle, marked])?;
    let g = Permutation::parse_cycles("(1,3)", 4)?;
    let t = s.apply(&g)?;
    println!("S has {} entries, S^g differs: {}", s.len(), s != t);

    let sq = s.squash();
    println!("squashed digraph: {}", serde_json::to_string(&sq.to_json())?);
    println!("Squash(S)^g = Squash(S^g): {}", sq.apply(&g)? == t.squash());
    Ok(())
}
