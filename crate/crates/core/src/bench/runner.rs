//! Runs generated and explicit problems under several modes and summarises node counts.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bench::catalog;
use crate::bench::generators::{
    grid_partition_problem, grid_rows_problem, grid_set_problem, primitive_wreath_problem,
    subdirect_coset_problem,
};
use crate::chain::{BigCard, StabChain};
use crate::error::{Error, Result};
use crate::io::ProblemSpec;
use crate::oracle::brute_solve;
use crate::perm::Permutation;
use crate::refiner::Constraint;
use crate::rng::SplitMix64;
use crate::search::{search_bsgs, search_single, Mode, SearchConfig};

pub const BENCH_NODE_LIMIT: u64 = 10_000_000;
/// Instances at or below this degree are checked against brute force.
pub const ORACLE_DEGREE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// Stabiliser in the grid group of a random ⌊n²/2⌋-subset.
    GridSet { n: usize },
    /// Stabiliser in the grid group of a subset with ⌊n/2⌋ points per row.
    GridRows { n: usize },
    /// Stabiliser in the grid group of a random halving partition; `n` even.
    GridPartition { n: usize },
    /// Intersection of two cosets of proper `(k,n)`-subdirect products.
    Subdirect { k: usize, n: usize },
    /// Catalog primitive groups of degree `n` meet conjugated wreath products.
    PrimitiveWreath { n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GridSet { .. } => "grid-set",
            Family::GridRows { .. } => "grid-rows",
            Family::GridPartition { .. } => "grid-partition",
            Family::Subdirect { .. } => "subdirect",
            Family::PrimitiveWreath { .. } => "primitive-wreath",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Family::GridSet { n } | Family::GridRows { n } | Family::GridPartition { n } => format!("n={n}"),
            Family::PrimitiveWreath { n } => format!("n={n}"),
            Family::Subdirect { k, n } => format!("k={k};n={n}"),
        }
    }

    fn task(&self) -> Task {
        match self {
            Family::Subdirect { .. } => Task::Single,
            _ => Task::Group,
        }
    }

    fn generate(&self, index: usize, rng: &mut SplitMix64) -> Result<(usize, Vec<Constraint>)> {
        Ok(match *self {
            Family::GridSet { n } => (n * n, grid_set_problem(n, rng)?),
            Family::GridRows { n } => (n * n, grid_rows_problem(n, rng)?),
            Family::GridPartition { n } => (n * n, grid_partition_problem(n, rng)?),
            Family::Subdirect { k, n } => (k * n, subdirect_coset_problem(k, n, rng)?),
            Family::PrimitiveWreath { n } => {
                let combos: Vec<(catalog::CatalogGroup, usize)> = catalog::primitive(n)
                    .into_iter()
                    .flat_map(|g| (2..n).filter(|d| n % d == 0).map(move |d| (g.clone(), d)))
                    .collect();
                if combos.is_empty() {
                    return Err(Error::InvalidArgument(format!(
                        "no catalog primitive group of composite degree {n}"
                    )));
                }
                let (g, d) = &combos[index % combos.len()];
                (n, primitive_wreath_problem(g, *d, rng)?)
            }
        })
    }
}

fn all_modes() -> Vec<Mode> {
    Mode::ALL.to_vec()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    pub instances: usize,
    #[serde(default = "all_modes")]
    pub modes: Vec<Mode>,
}

/// A benchmark suite: generated families plus explicit problems.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Suite {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub node_limit: Option<u64>,
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub problems: Vec<ProblemSpec>,
}

impl Suite {
    pub fn from_json(text: &str) -> Result<Suite> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Task {
    /// Base and strong generating set of a subgroup.
    Group,
    /// Existence of one element.
    Single,
}

struct Instance {
    family: String,
    params: String,
    index: usize,
    degree: usize,
    task: Task,
    modes: Vec<Mode>,
    problem: Result<Vec<Constraint>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub family: String,
    pub params: String,
    pub instance: usize,
    pub mode: Mode,
    pub degree: usize,
    pub nodes: u64,
    pub refine_rounds: u64,
    pub max_depth: u64,
    /// `ok`, `node-limit` or `error`.
    pub status: String,
    /// Group order, or `found` / `empty`.
    pub answer: String,
    /// All modes gave the same answer for this instance.
    pub agree: bool,
    /// `pass`, `fail` or `skipped`.
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: String,
    pub params: String,
    pub mode: Mode,
    pub instances: usize,
    pub solved: usize,
    pub total_nodes: u64,
    pub mean: f64,
    pub median: f64,
    pub zero_pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<InstanceRow>,
    pub summary: Vec<SummaryRow>,
    pub disagreements: usize,
    pub oracle_failures: usize,
}

enum Answer {
    Group(Vec<Permutation>, BigCard),
    Single(Option<Permutation>),
}

impl Answer {
    fn label(&self) -> String {
        match self {
            Answer::Group(_, o) => o.to_string(),
            Answer::Single(Some(_)) => "found".into(),
            Answer::Single(None) => "empty".into(),
        }
    }
}

fn same_answer(a: &Answer, b: &Answer, degree: usize) -> bool {
    match (a, b) {
        (Answer::Group(ga, oa), Answer::Group(gb, ob)) => {
            if oa != ob {
                return false;
            }
            let ca = StabChain::build(ga, degree).expect("same degree");
            gb.iter().all(|g| ca.contains(g))
        }
        (Answer::Single(x), Answer::Single(y)) => x.is_some() == y.is_some(),
        _ => false,
    }
}

fn oracle_check(a: &Answer, constraints: &[Constraint], degree: usize) -> &'static str {
    if degree > ORACLE_DEGREE {
        return "skipped";
    }
    let Ok(all) = brute_solve(constraints, degree) else {
        return "skipped";
    };
    let ok = match a {
        Answer::Group(gens, order) => {
            let c = StabChain::build(gens, degree).expect("same degree");
            BigCard::from(all.len()) == *order && all.iter().all(|g| c.contains(g))
        }
        Answer::Single(None) => all.is_empty(),
        Answer::Single(Some(g)) => all.binary_search(g).is_ok(),
    };
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn run_one(task: Task, degree: usize, cs: &[Constraint], cfg: &SearchConfig) -> Result<(Answer, crate::search::SearchStats)> {
    Ok(match task {
        Task::Group => {
            let (b, st) = search_bsgs(degree, cs, cfg)?;
            (Answer::Group(b.strong_gens, b.order), st)
        }
        Task::Single => {
            let (x, st) = search_single(degree, cs, cfg)?;
            (Answer::Single(x), st)
        }
    })
}

fn run_instance(inst: &Instance, node_limit: u64) -> Vec<InstanceRow> {
    let row = |mode: Mode| InstanceRow {
        family: inst.family.clone(),
        params: inst.params.clone(),
        instance: inst.index,
        mode,
        degree: inst.degree,
        nodes: 0,
        refine_rounds: 0,
        max_depth: 0,
        status: "error".into(),
        answer: String::new(),
        agree: false,
        oracle: "skipped".into(),
    };
    let cs = match &inst.problem {
        Ok(cs) => cs,
        Err(e) => {
            return inst
                .modes
                .iter()
                .map(|&m| InstanceRow {
                    answer: e.to_string(),
                    ..row(m)
                })
                .collect()
        }
    };
    let mut rows = Vec::new();
    let mut answers: Vec<Option<Answer>> = Vec::new();
    for &mode in &inst.modes {
        let cfg = SearchConfig::for_mode(mode).with_node_limit(Some(node_limit));
        let mut r = row(mode);
        match run_one(inst.task, inst.degree, cs, &cfg) {
            Ok((a, st)) => {
                r.nodes = st.nodes;
                r.refine_rounds = st.refine_rounds;
                r.max_depth = st.max_depth;
                r.status = "ok".into();
                r.answer = a.label();
                r.oracle = oracle_check(&a, cs, inst.degree).into();
                answers.push(Some(a));
            }
            Err(Error::NodeLimit { stats, .. }) => {
                r.nodes = stats.nodes;
                r.refine_rounds = stats.refine_rounds;
                r.max_depth = stats.max_depth;
                r.status = "node-limit".into();
                answers.push(None);
            }
            Err(e) => {
                r.answer = e.to_string();
                answers.push(None);
            }
        }
        rows.push(r);
    }
    let solved: Vec<&Answer> = answers.iter().flatten().collect();
    let agree = solved.len() == answers.len()
        && solved.windows(2).all(|w| same_answer(w[0], w[1], inst.degree));
    for r in &mut rows {
        r.agree = agree;
    }
    rows
}

fn median(sorted: &[u64]) -> f64 {
    match sorted.len() {
        0 => 0.0,
        l if l % 2 == 1 => sorted[l / 2] as f64,
        l => (sorted[l / 2 - 1] + sorted[l / 2]) as f64 / 2.0,
    }
}

fn summarise(rows: &[InstanceRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, String, Mode)> = Vec::new();
    for r in rows {
        let k = (r.family.clone(), r.params.clone(), r.mode);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(family, params, mode)| {
            let group: Vec<&InstanceRow> = rows
                .iter()
                .filter(|r| r.family == family && r.params == params && r.mode == mode)
                .collect();
            let mut nodes: Vec<u64> = group.iter().filter(|r| r.status == "ok").map(|r| r.nodes).collect();
            nodes.sort_unstable();
            let total: u64 = nodes.iter().sum();
            let zeros = group.iter().filter(|r| r.status == "ok" && r.nodes == 0).count();
            let n = group.len();
            SummaryRow {
                family,
                params,
                mode,
                instances: n,
                solved: nodes.len(),
                total_nodes: total,
                mean: if nodes.is_empty() { 0.0 } else { total as f64 / nodes.len() as f64 },
                median: median(&nodes),
                zero_pct: if n == 0 { 0.0 } else { 100.0 * zeros as f64 / n as f64 },
            }
        })
        .collect()
}

fn instance_seed(seed: u64, group: usize, index: usize) -> SplitMix64 {
    SplitMix64::derive(seed, ((group as u64) << 32) | index as u64)
}

fn build_instances(suite: &Suite, seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for (fi, f) in suite.families.iter().enumerate() {
        for i in 0..f.instances {
            let mut rng = instance_seed(seed, fi, i);
            let gen = f.family.generate(i, &mut rng);
            let degree = gen.as_ref().map(|g| g.0).unwrap_or(0);
            out.push(Instance {
                family: f.family.name().into(),
                params: f.family.params(),
                index: i,
                degree,
                task: f.family.task(),
                modes: f.modes.clone(),
                problem: gen.map(|g| g.1),
            });
        }
    }
    for (pi, p) in suite.problems.iter().enumerate() {
        let problem = p.constraints();
        let task = match &problem {
            Ok(cs) if cs.iter().all(|c| c.contains_identity()) => Task::Group,
            _ => Task::Single,
        };
        out.push(Instance {
            family: "problem".into(),
            params: format!("#{pi}"),
            index: pi,
            degree: p.degree,
            task,
            modes: p.mode.map(|m| vec![m]).unwrap_or_else(all_modes),
            problem,
        });
    }
    out
}

/// Runs every instance under each of its modes. Instances run in parallel
/// on `jobs` threads; the report does not depend on `jobs`.
pub fn run_bench(suite: &Suite, seed: u64, jobs: usize) -> Result<BenchReport> {
    let seed = suite.seed.unwrap_or(seed);
    let node_limit = suite.node_limit.unwrap_or(BENCH_NODE_LIMIT);
    let instances = build_instances(suite, seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let per: Vec<Vec<InstanceRow>> =
        pool.install(|| instances.par_iter().map(|i| run_instance(i, node_limit)).collect());
    let mut rows: Vec<InstanceRow> = per.into_iter().flatten().collect();
    // group rows by family and mode, keeping instance order within a group
    let mut order: Vec<(String, String)> = Vec::new();
    for r in &rows {
        let k = (r.family.clone(), r.params.clone());
        if !order.contains(&k) {
            order.push(k);
        }
    }
    rows.sort_by_key(|r| {
        let g = order.iter().position(|k| k.0 == r.family && k.1 == r.params).expect("listed");
        (g, r.mode, r.instance)
    });
    let summary = summarise(&rows);
    let disagreements = instances.len()
        - rows
            .iter()
            .filter(|r| r.agree)
            .map(|r| (&r.family, &r.params, r.instance))
            .collect::<std::collections::BTreeSet<_>>()
            .len();
    let oracle_failures = rows.iter().filter(|r| r.oracle == "fail").count();
    Ok(BenchReport {
        seed,
        rows,
        summary,
        disagreements,
        oracle_failures,
    })
}

impl BenchReport {
    pub fn summary_for(&self, family: &str, params: &str, mode: Mode) -> Option<&SummaryRow> {
        self.summary
            .iter()
            .find(|s| s.family == family && s.params == params && s.mode == mode)
    }

    /// Per-instance rows as CSV.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn summary_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.summary {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `path` (instance CSV), plus `.summary.csv` and `.json` siblings.
    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?)?;
        std::fs::write(path.with_extension("summary.csv"), self.summary_csv()?)?;
        std::fs::write(path.with_extension("json"), self.to_json()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite() {
        let r = run_bench(&Suite::default(), 1, 2).unwrap();
        assert!(r.rows.is_empty() && r.summary.is_empty());
    }

    #[test]
    fn small_grid_suite_is_deterministic() {
        let suite = Suite {
            families: vec![FamilySpec {
                family: Family::GridSet { n: 2 },
                instances: 4,
                modes: all_modes(),
            }],
            ..Suite::default()
        };
        let a = run_bench(&suite, 9, 1).unwrap();
        let b = run_bench(&suite, 9, 3).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_eq!(a.disagreements, 0);
        assert_eq!(a.oracle_failures, 0);
        assert!(a.rows.iter().all(|r| r.oracle == "pass"));
        let json = r#"{"families":[{"kind":"subdirect","k":2,"n":3,"instances":2,"modes":["strong"]}]}"#;
        let s = Suite::from_json(json).unwrap();
        assert_eq!(s.families[0].family, Family::Subdirect { k: 2, n: 3 });
    }
}
