//! Comparing search answers with brute-force enumeration on random small problems.

use graphbt::bench::generators::{mixed_problem, MIXED_KINDS};
use graphbt::oracle::brute_solve;
use graphbt::rng::SplitMix64;
use graphbt::search::{search_all, Mode, SearchConfig};

fn main() -> graphbt::error::Result<()> {
    let mut rng = SplitMix64::new(11);
    let mut agree = 0;
    for i in 0..40 {
        let n = 4 + i % 3;
        let cs = mixed_problem(i % MIXED_KINDS, n, &mut rng)?;
        let want = brute_solve(&cs, n)?;
        let ok = Mode::ALL.iter().all(|&m| {
            let mut got = search_all(n, &cs, &SearchConfig::for_mode(m)).expect("search").0;
            got.sort();
            got == want
        });
        agree += ok as usize;
        if !ok {
            println!("problem {i} disagrees");
        }
    }
    println!("{agree}/40 problems agree in every mode");
    Ok(())
}
