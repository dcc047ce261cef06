//! Backtrack search over pairs of digraph stacks.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::approx::{ApproxKind, Approximator, CosetApprox};
use crate::chain::{orbits, BigCard, StabChain};
use crate::digraph::{DigraphStack, LabelledDigraph};
use crate::error::{Error, Result};
use crate::label::Fp;
use crate::perm::{Permutation, Point};
use crate::refiner::{Constraint, DigraphMode, RefineCtx, RefinerState};

/// The four search techniques compared by the benchmarks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Leon,
    Orbital,
    Strong,
    Full,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Leon, Mode::Orbital, Mode::Strong, Mode::Full];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Leon => "leon",
            Mode::Orbital => "orbital",
            Mode::Strong => "strong",
            Mode::Full => "full",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s.to_ascii_lowercase().as_str() {
            "leon" => Ok(Mode::Leon),
            "orbital" => Ok(Mode::Orbital),
            "strong" => Ok(Mode::Strong),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub approx_kind: ApproxKind,
    pub digraph_mode: DigraphMode,
    /// Most orbital graphs a group refiner emits per call.
    pub orbital_cap: usize,
    pub node_limit: Option<u64>,
    /// Refine orbital graphs against the current cells before returning them.
    pub filter_orbitals: bool,
}

impl SearchConfig {
    pub fn for_mode(mode: Mode) -> SearchConfig {
        let (digraph_mode, approx_kind) = match mode {
            Mode::Leon => (DigraphMode::Arcless, ApproxKind::Weak),
            Mode::Orbital => (DigraphMode::Full, ApproxKind::Weak),
            Mode::Strong => (DigraphMode::Full, ApproxKind::Strong),
            Mode::Full => (DigraphMode::Full, ApproxKind::Full),
        };
        SearchConfig {
            approx_kind,
            digraph_mode,
            orbital_cap: 8,
            node_limit: None,
            filter_orbitals: mode == Mode::Orbital,
        }
    }

    pub fn with_node_limit(mut self, limit: Option<u64>) -> SearchConfig {
        self.node_limit = limit;
        self
    }
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig::for_mode(Mode::Strong)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Recursive invocations of the search procedures; the initial call is not counted.
    pub nodes: u64,
    pub refine_rounds: u64,
    pub max_depth: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.refine_rounds += other.refine_rounds;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

/// A base of stacks with a strong generating set.
#[derive(Clone, Debug)]
pub struct BsgsResult {
    pub base: Vec<DigraphStack>,
    /// The point behind each base stack.
    pub base_points: Vec<Point>,
    pub strong_gens: Vec<Permutation>,
    pub order: BigCard,
}

impl BsgsResult {
    pub fn chain(&self, degree: usize) -> StabChain {
        StabChain::build(&self.strong_gens, degree).expect("generators share the degree")
    }
}

/// A right coset `group · rep`.
#[derive(Clone, Debug)]
pub struct CosetResult {
    pub rep: Permutation,
    pub group: BsgsResult,
}

/// Output of the fixed-point splitter.
#[derive(Clone, Debug)]
pub struct Split {
    pub alpha: Point,
    pub left: DigraphStack,
    /// Images of `alpha`, ascending.
    pub targets: Vec<Point>,
}

impl Split {
    pub fn right(&self, i: usize) -> DigraphStack {
        point_stack(self.left.degree(), self.targets[i])
    }
}

fn point_stack(n: usize, alpha: Point) -> DigraphStack {
    DigraphStack::from_digraphs(n, vec![LabelledDigraph::point_indicator(n, alpha)])
        .expect("degrees agree")
}

/// Splits on the least point of a smallest non-trivial orbit of the group part.
pub fn split(approx: &mut Approximator, kind: ApproxKind, s: &DigraphStack, t: &DigraphStack) -> Result<Split> {
    let a = approx.approx(kind, s, t)?;
    split_from(s.degree(), &a)
}

fn split_from(n: usize, a: &CosetApprox) -> Result<Split> {
    let (group, rep) = match a {
        CosetApprox::Coset { group, rep } => (group, rep),
        CosetApprox::Empty => {
            return Err(Error::InvalidArgument("cannot split an empty approximation".into()))
        }
    };
    let orbit = group
        .orbits()
        .into_iter()
        .filter(|o| o.len() >= 2)
        .min_by_key(|o| (o.len(), o[0]))
        .ok_or_else(|| Error::InvalidArgument("cannot split an approximation with one element".into()))?;
    let alpha = orbit[0];
    let mut targets: Vec<Point> = orbit.iter().map(|&x| rep.image(x)).collect();
    targets.sort_unstable();
    Ok(Split {
        alpha,
        left: point_stack(n, alpha),
        targets,
    })
}

/// One search over a fixed list of constraints.
pub struct Searcher {
    n: usize,
    constraints: Vec<Arc<Constraint>>,
    refiners: Vec<RefinerState>,
    approx: Approximator,
    cfg: SearchConfig,
    stats: SearchStats,
    left_seq: Vec<Fp>,
}

enum Want {
    All,
    One,
}

impl Searcher {
    pub fn new(n: usize, constraints: &[Constraint], cfg: &SearchConfig) -> Result<Searcher> {
        Searcher::from_arcs(n, constraints.iter().cloned().map(Arc::new).collect(), cfg)
    }

    pub fn from_arcs(n: usize, constraints: Vec<Arc<Constraint>>, cfg: &SearchConfig) -> Result<Searcher> {
        for c in &constraints {
            if c.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: c.degree(),
                });
            }
        }
        let refiners = constraints
            .iter()
            .map(|c| RefinerState::new(c.clone(), cfg.digraph_mode))
            .collect();
        Ok(Searcher {
            n,
            constraints,
            refiners,
            approx: Approximator::new(),
            cfg: cfg.clone(),
            stats: SearchStats::default(),
            left_seq: Vec::new(),
        })
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    fn card(&mut self, s: &DigraphStack, t: &DigraphStack) -> Result<(CosetApprox, BigCard)> {
        let a = self.approx.approx(self.cfg.approx_kind, s, t)?;
        let c = a.cardinality();
        Ok((a, c))
    }

    /// The Refine procedure: rounds of all refiners, stopping at the
    /// pre-round stacks once a round fails to shrink the approximation.
    pub fn refine_pair(&mut self, s: &DigraphStack, t: &DigraphStack) -> Result<(DigraphStack, DigraphStack)> {
        let mut s = s.clone();
        let mut t = t.clone();
        let (_, mut card) = self.card(&s, &t)?;
        while card > BigCard::default() {
            let (s0, t0) = (s.clone(), t.clone());
            for r in self.refiners.iter_mut() {
                if s.len() != t.len() {
                    break;
                }
                let mut ctx = RefineCtx {
                    approx: &mut self.approx,
                    kind: self.cfg.approx_kind,
                    digraph_mode: self.cfg.digraph_mode,
                    orbital_cap: self.cfg.orbital_cap,
                    filter_orbitals: self.cfg.filter_orbitals,
                };
                let l = r.left(&mut ctx, &s)?;
                let rt = r.right(&mut ctx, &t)?;
                s.extend_from(&l);
                t.extend_from(&rt);
            }
            self.stats.refine_rounds += 1;
            let (_, next) = self.card(&s, &t)?;
            if next >= card {
                return Ok((s0, t0));
            }
            card = next;
        }
        Ok((s, t))
    }

    /// Left stacks seen on live branches must extend one common sequence.
    fn record_left(&mut self, s: &DigraphStack) -> Result<()> {
        for (i, e) in s.entries().iter().enumerate() {
            let d = e.fp().digest;
            match self.left_seq.get(i) {
                Some(&x) if x != d => return Err(Error::LeftSequence { length: i + 1 }),
                Some(_) => {}
                None => self.left_seq.push(d),
            }
        }
        Ok(())
    }

    fn enter(&mut self, depth: u64) -> Result<()> {
        if depth > 0 {
            self.stats.nodes += 1;
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let Some(limit) = self.cfg.node_limit {
            if self.stats.nodes > limit {
                return Err(Error::NodeLimit {
                    limit,
                    stats: self.stats.clone(),
                });
            }
        }
        Ok(())
    }

    fn is_solution(&self, h: &Permutation, s: &DigraphStack, t: &DigraphStack) -> bool {
        s.apply_unchecked(h) == *t && self.constraints.iter().all(|c| c.membership(h))
    }

    /// Returns true once a solution is found in `One` mode.
    fn search(
        &mut self,
        s: &DigraphStack,
        t: &DigraphStack,
        depth: u64,
        want: &Want,
        out: &mut Vec<Permutation>,
    ) -> Result<bool> {
        self.enter(depth)?;
        let (s, t) = self.refine_pair(s, t)?;
        let (a, card) = self.card(&s, &t)?;
        if card == BigCard::default() {
            return Ok(false);
        }
        self.record_left(&s)?;
        if card.is_one() {
            let h = a.rep().expect("non-empty").clone();
            if self.is_solution(&h, &s, &t) {
                out.push(h);
                return Ok(true);
            }
            return Ok(false);
        }
        let sp = split_from(self.n, &a)?;
        let s1 = s.append(&sp.left)?;
        let mut found = false;
        for i in 0..sp.targets.len() {
            let ti = t.append(&sp.right(i))?;
            if self.search(&s1, &ti, depth + 1, want, out)? {
                found = true;
                if matches!(want, Want::One) {
                    return Ok(true);
                }
            }
        }
        Ok(found)
    }

    fn bsgs(&mut self, s: &DigraphStack, depth: u64) -> Result<(Vec<Point>, Vec<Permutation>)> {
        self.enter(depth)?;
        let (s, _) = self.refine_pair(s, s)?;
        let (a, card) = self.card(&s, &s)?;
        self.record_left(&s)?;
        if card.is_one() {
            return Ok((Vec::new(), Vec::new()));
        }
        let sp = split_from(self.n, &a)?;
        let s1 = s.append(&sp.left)?;
        let (mut base, mut x) = self.bsgs(&s1, depth + 1)?;
        base.insert(0, sp.alpha);
        let mut seen: Vec<Point> = Vec::new();
        for (i, &beta) in sp.targets.iter().enumerate() {
            if i > 0 {
                let orbs = orbits(&x, self.n);
                let orbit = orbs.iter().find(|o| o.binary_search(&beta).is_ok()).expect("orbits cover Ω");
                if !seen.iter().any(|p| orbit.binary_search(p).is_ok()) {
                    let si = s.append(&point_stack(self.n, beta))?;
                    let mut found = Vec::new();
                    self.search(&s1, &si, depth + 1, &Want::One, &mut found)?;
                    x.extend(found);
                }
            }
            seen.push(beta);
        }
        Ok((base, x))
    }
}

fn empty(n: usize) -> DigraphStack {
    DigraphStack::empty(n)
}

/// Every element of the intersection of the constraints, sorted.
pub fn search_all(n: usize, constraints: &[Constraint], cfg: &SearchConfig) -> Result<(Vec<Permutation>, SearchStats)> {
    let mut se = Searcher::new(n, constraints, cfg)?;
    let mut out = Vec::new();
    se.search(&empty(n), &empty(n), 0, &Want::All, &mut out)?;
    out.sort();
    Ok((out, se.stats))
}

/// One element of the intersection, if there is one.
pub fn search_single(n: usize, constraints: &[Constraint], cfg: &SearchConfig) -> Result<(Option<Permutation>, SearchStats)> {
    let mut se = Searcher::new(n, constraints, cfg)?;
    let mut out = Vec::new();
    se.search(&empty(n), &empty(n), 0, &Want::One, &mut out)?;
    Ok((out.pop(), se.stats))
}

/// A base and strong generating set for an intersection of groups.
pub fn search_bsgs(n: usize, constraints: &[Constraint], cfg: &SearchConfig) -> Result<(BsgsResult, SearchStats)> {
    if let Some(c) = constraints.iter().find(|c| !c.contains_identity()) {
        return Err(Error::InvalidArgument(format!(
            "bsgs search needs subgroups, but a {} constraint excludes the identity",
            constraint_kind(c)
        )));
    }
    let mut se = Searcher::new(n, constraints, cfg)?;
    let (points, gens) = se.bsgs(&empty(n), 0)?;
    let order = if gens.is_empty() {
        BigCard::one()
    } else {
        StabChain::build(&gens, n)?.order()
    };
    Ok((
        BsgsResult {
            base: points.iter().map(|&p| point_stack(n, p)).collect(),
            base_points: points,
            strong_gens: gens,
            order,
        },
        se.stats,
    ))
}

/// An intersection of cosets: one element found by a single-solution
/// search, then the translated subgroup problem.
pub fn search_coset(n: usize, constraints: &[Constraint], cfg: &SearchConfig) -> Result<(Option<CosetResult>, SearchStats)> {
    let (g, mut stats) = search_single(n, constraints, cfg)?;
    let Some(g) = g else {
        return Ok((None, stats));
    };
    let back = g.inverse();
    let shifted = constraints
        .iter()
        .map(|c| c.right_translate(&back))
        .collect::<Result<Vec<_>>>()?;
    let mut cfg2 = cfg.clone();
    cfg2.node_limit = cfg.node_limit.map(|l| l.saturating_sub(stats.nodes));
    let (group, s2) = search_bsgs(n, &shifted, &cfg2)?;
    stats.absorb(&s2);
    Ok((Some(CosetResult { rep: g, group }), stats))
}

pub(crate) fn constraint_kind(c: &Constraint) -> &'static str {
    match c {
        Constraint::GroupByGens { .. } => "group",
        Constraint::RightCoset { .. } => "coset",
        Constraint::SetStab { .. } => "set-stabiliser",
        Constraint::SetTransport { .. } => "set-transporter",
        Constraint::ListOfSetsStab { .. } => "list-of-sets-stabiliser",
        Constraint::ListOfSetsTransport { .. } => "list-of-sets-transporter",
        Constraint::SetOfSetsStab { .. } => "set-of-sets-stabiliser",
        Constraint::SetOfSetsTransport { .. } => "set-of-sets-transporter",
        Constraint::Centralizer(_) => "centraliser",
        Constraint::Conjugacy { .. } => "conjugacy",
        Constraint::DigraphAuto(_) => "digraph-automorphism",
        Constraint::DigraphIso(..) => "digraph-isomorphism",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refiner::all_permutations;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn sets(xs: &[&[u32]]) -> Vec<Vec<Point>> {
        xs.iter().map(|s| s.iter().map(|x| x - 1).collect()).collect()
    }

    fn brute(n: usize, cs: &[Constraint]) -> Vec<Permutation> {
        let mut v: Vec<_> = all_permutations(n)
            .into_iter()
            .filter(|g| cs.iter().all(|c| c.membership(g)))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn split_examples() {
        let g = Constraint::group(vec![p("(1,2)(3,4)(5,6)", 6)], 6).unwrap();
        let chain = match &g {
            Constraint::GroupByGens { chain, .. } => chain.clone(),
            _ => unreachable!(),
        };
        let a = CosetApprox::Coset {
            group: crate::approx::GroupPart::Chain(chain),
            rep: Permutation::identity(6),
        };
        let sp = split_from(6, &a).unwrap();
        assert_eq!(sp.alpha, 0);
        assert_eq!(sp.targets, vec![0, 1]);
        let mut ap = Approximator::new();
        let e = empty(6);
        let sp = split(&mut ap, ApproxKind::Strong, &e, &e).unwrap();
        assert_eq!(sp.targets.len(), 6);
        let one = point_stack(6, 2);
        assert!(split(&mut ap, ApproxKind::Full, &one, &point_stack(6, 2)).is_ok());
    }

    #[test]
    fn centraliser_and_empty_set() {
        for mode in Mode::ALL {
            let cfg = SearchConfig::for_mode(mode);
            let (all, _) = search_all(6, &[Constraint::Centralizer(p("(1,2)(3,6,5)", 6))], &cfg).unwrap();
            assert_eq!(all.len(), 6, "{mode}");
            let (all, _) = search_all(4, &[Constraint::set_stab(4, &[]).unwrap()], &cfg).unwrap();
            assert_eq!(all.len(), 24);
        }
    }

    #[test]
    fn set_of_sets_transporter_is_empty_without_nodes() {
        let v = sets(&[&[1], &[1, 2, 3], &[2, 4]]);
        let w = sets(&[&[5], &[2, 3, 4], &[3, 4]]);
        let c = Constraint::set_of_sets_transport(5, &v, &w).unwrap();
        let (x, st) = search_single(5, std::slice::from_ref(&c), &SearchConfig::for_mode(Mode::Strong)).unwrap();
        assert!(x.is_none());
        assert_eq!(st.nodes, 0);
        for mode in Mode::ALL {
            let (all, _) = search_all(5, std::slice::from_ref(&c), &SearchConfig::for_mode(mode)).unwrap();
            assert!(all.is_empty());
        }
    }

    #[test]
    fn single_and_bsgs() {
        let cfg = SearchConfig::for_mode(Mode::Strong);
        let c = Constraint::conjugacy(p("(1,2)", 4), p("(3,4)", 4)).unwrap();
        let (x, _) = search_single(4, std::slice::from_ref(&c), &cfg).unwrap();
        assert!(c.membership(&x.unwrap()));
        let (x, _) = search_single(3, &[], &cfg).unwrap();
        assert!(x.is_some());
        let s4 = Constraint::group(vec![p("(1,2)", 4), p("(1,2,3,4)", 4)], 4).unwrap();
        for mode in Mode::ALL {
            let (b, _) = search_bsgs(4, std::slice::from_ref(&s4), &SearchConfig::for_mode(mode)).unwrap();
            assert_eq!(b.order, BigCard::from(24u32));
        }
        assert!(search_bsgs(4, &[c], &cfg).is_err());
    }

    #[test]
    fn matches_brute_force() {
        let wreath = Constraint::group(
            vec![p("(1,2)", 6), p("(3,4)", 6), p("(5,6)", 6), p("(1,3,5)(2,4,6)", 6)],
            6,
        )
        .unwrap();
        let problems: Vec<(usize, Vec<Constraint>)> = vec![
            (6, vec![wreath.clone(), Constraint::set_stab(6, &[0, 2, 3]).unwrap()]),
            (
                6,
                vec![
                    wreath.clone(),
                    Constraint::group(vec![p("(1,2,3,4,5,6)", 6), p("(1,6)(2,5)(3,4)", 6)], 6).unwrap(),
                ],
            ),
            (
                6,
                vec![
                    Constraint::coset(vec![p("(1,2)", 6), p("(3,4)", 6)], p("(1,3)(2,4)", 6), 6).unwrap(),
                    Constraint::set_transport(6, &[0, 1], &[2, 3]).unwrap(),
                ],
            ),
            (5, vec![Constraint::list_of_sets_stab(5, &sets(&[&[1, 2], &[2, 3, 4]])).unwrap()]),
        ];
        for (n, cs) in problems {
            let want = brute(n, &cs);
            for mode in Mode::ALL {
                let cfg = SearchConfig::for_mode(mode);
                let (got, st) = search_all(n, &cs, &cfg).unwrap();
                assert_eq!(got, want, "{mode}");
                let single = search_single(n, &cs, &cfg).unwrap().0;
                assert_eq!(single.is_some(), !want.is_empty());
                if cs.iter().all(|c| c.contains_identity()) {
                    let (b, bst) = search_bsgs(n, &cs, &cfg).unwrap();
                    assert_eq!(b.order, BigCard::from(want.len()));
                    let ch = b.chain(n);
                    assert!(want.iter().all(|g| ch.contains(g)));
                    assert!(bst.nodes <= st.nodes, "{mode}: {} > {}", bst.nodes, st.nodes);
                } else {
                    let (r, _) = search_coset(n, &cs, &cfg).unwrap();
                    match r {
                        None => assert!(want.is_empty()),
                        Some(r) => {
                            assert_eq!(r.group.order, BigCard::from(want.len()));
                            assert!(want.contains(&r.rep));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn node_limit() {
        let cfg = SearchConfig::for_mode(Mode::Leon).with_node_limit(Some(3));
        let r = search_all(5, &[], &cfg);
        assert!(matches!(r, Err(Error::NodeLimit { limit: 3, .. })));
    }

    #[test]
    fn refine_without_constraints_is_identity() {
        let mut se = Searcher::new(4, &[], &SearchConfig::default()).unwrap();
        let s = point_stack(4, 1);
        let (a, b) = se.refine_pair(&s, &s).unwrap();
        assert_eq!(a, s);
        assert_eq!(b, s);
    }
}
