//! Canonical forms and automorphism groups of labelled digraphs.

use graphbt::canon::canonical_form;
use graphbt::perm::Permutation;
use graphbt::refiner::centraliser_digraph;

fn main() -> graphbt::error::Result<()> {
    let x = Permutation::parse_cycles("(1,2)(3,6,5)", 6)?;
    let d = centraliser_digraph(&x);
    let c = canonical_form(&d)?;
    println!("|Aut| = {} (the centraliser of {x})", c.aut.order());

    let g = Permutation::parse_cycles("(1,4,2)(5,6)", 6)?;
    let e = canonical_form(&d.apply(&g)?)?;
    println!("same canonical form after relabelling: {}", c.canon_form == e.canon_form);
    Ok(())
}
