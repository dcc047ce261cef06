//! Command-line surface: `solve`, `bsgs` and `bench`.
//!
//! Exit codes: 0 on success, 1 when `solve` finds no element or `bsgs` is given
//! an empty coset, 2 on any error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::bench::{run_bench, Suite};
use crate::error::Result;
use crate::io::{bsgs_json, coset_json, elements_json, ProblemSpec};
use crate::search::{search_all, search_bsgs, search_coset, Mode, SearchConfig};

#[derive(Debug, Parser)]
#[command(name = "graphbt", version, about = "Backtrack search in permutation groups over digraph stacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every permutation satisfying all constraints.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Overrides the mode in the problem file.
        #[arg(long)]
        mode: Option<Mode>,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Base and strong generators of the solution group, or of the coset's group with a representative.
    Bsgs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Run a benchmark suite; writes CSV plus `.summary.csv` and `.json` siblings.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn load(path: &PathBuf) -> Result<ProblemSpec> {
    ProblemSpec::from_json(&std::fs::read_to_string(path)?)
}

fn emit(v: &Value, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn config(spec: &ProblemSpec, mode: Option<Mode>, node_limit: Option<u64>) -> SearchConfig {
    SearchConfig::for_mode(mode.or(spec.mode).unwrap_or(Mode::Strong)).with_node_limit(node_limit)
}

/// Runs a parsed command and returns the process exit code.
pub fn execute(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Solve {
            input,
            mode,
            out,
            node_limit,
        } => {
            let spec = load(input)?;
            let cs = spec.constraints()?;
            let (elements, stats) = search_all(spec.degree, &cs, &config(&spec, *mode, *node_limit))?;
            emit(&elements_json(&elements, &stats), out)?;
            Ok(if elements.is_empty() { 1 } else { 0 })
        }
        Command::Bsgs {
            input,
            mode,
            out,
            node_limit,
        } => {
            let spec = load(input)?;
            let cs = spec.constraints()?;
            let cfg = config(&spec, *mode, *node_limit);
            if cs.iter().all(|c| c.contains_identity()) {
                let (b, stats) = search_bsgs(spec.degree, &cs, &cfg)?;
                emit(&bsgs_json(&b, &stats), out)?;
                Ok(0)
            } else {
                let (c, stats) = search_coset(spec.degree, &cs, &cfg)?;
                emit(&coset_json(&c, &stats), out)?;
                Ok(if c.is_none() { 1 } else { 0 })
            }
        }
        Command::Bench {
            suite,
            out,
            seed,
            jobs,
        } => {
            let s = Suite::from_json(&std::fs::read_to_string(suite)?)?;
            let report = run_bench(&s, *seed, *jobs)?;
            report.write(out)?;
            for r in &report.summary {
                eprintln!(
                    "{} {} {:<8} total={} mean={:.2} median={} zero%={:.1}",
                    r.family, r.params, r.mode, r.total_nodes, r.mean, r.median, r.zero_pct
                );
            }
            Ok(0)
        }
    }
}

/// Parses `args` and runs; errors are printed and give exit code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
