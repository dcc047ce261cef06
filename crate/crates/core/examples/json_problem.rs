//! Reading a problem in the command-line JSON format and writing results.

use graphbt::io::{bsgs_json, elements_json, ProblemSpec};
use graphbt::search::{search_all, search_bsgs, Mode, SearchConfig};

const PROBLEM: &str = r#"{
  "degree": 6,
  "constraints": [
    {"type": "group", "gens": ["(1,2,3,4,5,6)", [1, 6, 5, 4, 3, 2]]},
    {"type": "set_stab", "set": [1, 4]}
  ],
  "mode": "orbital"
}"#;

fn main() -> graphbt::error::Result<()> {
    let spec = ProblemSpec::from_json(PROBLEM)?;
    let cs = spec.constraints()?;
    let cfg = SearchConfig::for_mode(spec.mode.unwrap_or(Mode::Strong));
    let (all, stats) = search_all(spec.degree, &cs, &cfg)?;
    println!("{}", elements_json(&all, &stats));
    let (b, stats) = search_bsgs(spec.degree, &cs, &cfg)?;
    println!("{}", bsgs_json(&b, &stats));
    println!("{}", serde_json::to_string(&ProblemSpec::new(spec.degree, &cs))?);
    Ok(())
}
