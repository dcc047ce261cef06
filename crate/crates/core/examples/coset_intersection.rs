//! Intersecting two right cosets and a set transporter.

use graphbt::perm::Permutation;
use graphbt::refiner::Constraint;
use graphbt::search::{search_coset, SearchConfig};

fn main() -> graphbt::error::Result<()> {
    let n = 6;
    let p = |s: &str| Permutation::parse_cycles(s, n);
    let a = Constraint::coset(vec![p("(1,2)")?, p("(3,4)")?, p("(5,6)")?, p("(1,3,5)(2,4,6)")?], p("(1,2)(3,4)")?, n)?;
    let b = Constraint::coset(vec![p("(1,2,3,4,5,6)")?], Permutation::identity(n), n)?;
    let t = Constraint::set_transport(n, &[0, 1], &[2, 3])?;
    match search_coset(n, &[a, b, t], &SearchConfig::default())? {
        (Some(c), stats) => println!("coset of a group of order {} with rep {} ({} nodes)", c.group.order, c.rep, stats.nodes),
        (None, stats) => println!("empty ({} nodes)", stats.nodes),
    }
    Ok(())
}
