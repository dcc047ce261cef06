//! Coset intersections of subdirect products, and one generated instance in detail.

use graphbt::bench::generators::gen_subdirect;
use graphbt::bench::{run_bench, Family, FamilySpec, Suite};
use graphbt::chain::StabChain;
use graphbt::rng::SplitMix64;
use graphbt::search::Mode;

fn main() -> graphbt::error::Result<()> {
    let mut rng = SplitMix64::new(5);
    let s = gen_subdirect(2, 4, &mut rng)?;
    let h = StabChain::build(&s.gens, 8)?;
    println!("factors {:?}: |H| = {} inside |D| = {}", s.factors, h.order(), s.ambient.order());

    let suite = Suite {
        families: vec![FamilySpec {
            family: Family::Subdirect { k: 2, n: 4 },
            instances: 10,
            modes: Mode::ALL.to_vec(),
        }],
        ..Suite::default()
    };
    let report = run_bench(&suite, 5, 2)?;
    print!("{}", report.summary_csv()?);
    println!("instances where the modes disagree: {}", report.disagreements);
    Ok(())
}
