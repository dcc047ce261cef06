//! Permutation arithmetic and stabiliser chains.

use graphbt::chain::StabChain;
use graphbt::perm::Permutation;

fn main() -> graphbt::error::Result<()> {
    let a = Permutation::parse_cycles("(1,2,3)(4,5)", 6)?;
    let b = Permutation::parse_cycles("(1,6)", 6)?;
    // composition applies `a` first
    println!("a*b = {}", a.compose(&b)?);
    println!("a^b = {}", a.conjugate_by(&b));
    println!("a^-1 = {}", a.inverse());

    let gens = [
        Permutation::parse_cycles("(1,2)", 6)?,
        Permutation::parse_cycles("(1,2,3,4,5,6)", 6)?,
    ];
    let s6 = StabChain::build(&gens, 6)?;
    println!("|S6| = {}, base {:?}", s6.order(), s6.base());

    let stab = s6.pointwise_stabilizer(&[0, 1])?;
    println!("|S6_(1,2)| = {}", stab.order());
    let t = s6.tuple_transporter(&[0, 1], &[4, 2])?.expect("S6 is 2-transitive");
    println!("{t} maps (1,2) to (5,3)");
    Ok(())
}
