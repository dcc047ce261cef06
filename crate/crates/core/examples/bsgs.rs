//! A base and strong generating set for an intersection of groups.

use graphbt::bench::generators::gen_grid_group;
use graphbt::refiner::Constraint;
use graphbt::rng::SplitMix64;
use graphbt::search::{search_bsgs, Mode, SearchConfig};

fn main() -> graphbt::error::Result<()> {
    let n = 4;
    let mut rng = SplitMix64::new(3);
    let set: Vec<u32> = rng.sample(n * n, n * n / 2);
    let cs = [Constraint::group(gen_grid_group(n)?, n * n)?, Constraint::set_stab(n * n, &set)?];
    for mode in Mode::ALL {
        let (b, stats) = search_bsgs(n * n, &cs, &SearchConfig::for_mode(mode))?;
        let base: Vec<u32> = b.base_points.iter().map(|x| x + 1).collect();
        println!("{mode:<8} order {:>4} base {base:?} nodes {}", b.order, stats.nodes);
    }
    Ok(())
}
