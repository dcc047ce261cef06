//! Building refiners for constraints and checking the refiner law on random stacks.

use std::sync::Arc;

use graphbt::perm::Permutation;
use graphbt::refiner::{verify_refiner_law, Constraint, RefinerState};
use graphbt::search::{Mode, SearchConfig};

fn main() -> graphbt::error::Result<()> {
    let constraints = [
        ("set stabiliser", Constraint::set_stab(6, &[0, 2, 4])?),
        ("set-of-sets stabiliser", Constraint::set_of_sets_stab(6, &[vec![0, 1], vec![2, 3], vec![4, 5]])?),
        ("centraliser", Constraint::Centralizer(Permutation::parse_cycles("(1,2)(3,4,5)", 6)?)),
        (
            "dihedral group",
            Constraint::group(
                vec![Permutation::parse_cycles("(1,2,3,4,5,6)", 6)?, Permutation::parse_cycles("(2,6)(3,5)", 6)?],
                6,
            )?,
        ),
    ];
    for (name, c) in constraints {
        let c = Arc::new(c);
        for mode in Mode::ALL {
            let cfg = SearchConfig::for_mode(mode);
            let r = verify_refiner_law(
                || RefinerState::new(c.clone(), cfg.digraph_mode),
                cfg.approx_kind,
                cfg.digraph_mode,
                cfg.filter_orbitals,
                50,
                7,
            )?;
            println!("{name:<24} {mode:<8} checked {:>3} violations {}", r.checked, r.violations.len());
        }
    }
    Ok(())
}
