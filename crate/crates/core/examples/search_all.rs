//! Enumerating every permutation that satisfies a list of constraints.

use graphbt::refiner::Constraint;
use graphbt::search::{search_all, Mode, SearchConfig};

fn main() -> graphbt::error::Result<()> {
    let n = 6;
    let cs = [
        Constraint::list_of_sets_stab(n, &[vec![0, 2, 5], vec![2, 4], vec![1, 3], vec![1, 2, 3]])?,
    ];
    for mode in Mode::ALL {
        let (found, stats) = search_all(n, &cs, &SearchConfig::for_mode(mode))?;
        let shown: Vec<String> = found.iter().map(|g| g.to_string()).collect();
        println!("{mode:<8} nodes {:>3}  {}", stats.nodes, shown.join(" "));
    }
    Ok(())
}
