//! Node counts of the four search modes on grid-group stabiliser problems.

use graphbt::bench::{run_bench, Family, FamilySpec, Suite};
use graphbt::search::Mode;

fn main() -> graphbt::error::Result<()> {
    let spec = |family| FamilySpec {
        family,
        instances: 10,
        modes: Mode::ALL.to_vec(),
    };
    let suite = Suite {
        families: vec![
            spec(Family::GridSet { n: 4 }),
            spec(Family::GridRows { n: 4 }),
            spec(Family::GridPartition { n: 4 }),
        ],
        ..Suite::default()
    };
    let report = run_bench(&suite, 42, 2)?;
    print!("{}", report.summary_csv()?);
    Ok(())
}
