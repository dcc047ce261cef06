//! Constraints, their membership tests and refiners.

use std::collections::HashMap;
use std::sync::Arc;

use crate::approx::{ApproxKind, Approximator};
use crate::chain::StabChain;
use crate::digraph::{orbital_graph, DigraphStack, LabelledDigraph};
use crate::error::{Error, Result};
use crate::equitable::{refine_labels, Adjacency};
use crate::label::{Fp, FpHasher, LabelTerm};
use crate::perm::{Permutation, Point};
use crate::rng::SplitMix64;

/// Whether refiner outputs keep their arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DigraphMode {
    /// Arcs are stripped, leaving vertex labels only.
    Arcless,
    Full,
}

/// Per-search settings shared by all refiners.
pub struct RefineCtx<'a> {
    pub approx: &'a mut Approximator,
    pub kind: ApproxKind,
    pub digraph_mode: DigraphMode,
    pub orbital_cap: usize,
    /// Relabel orbital graphs by refining them against the current weak cells.
    pub filter_orbitals: bool,
}

/// A subset of `Sym(Ω)`.
#[derive(Clone, Debug)]
pub enum Constraint {
    GroupByGens {
        gens: Vec<Permutation>,
        chain: Arc<StabChain>,
    },
    /// The right coset `G · rep`.
    RightCoset {
        gens: Vec<Permutation>,
        chain: Arc<StabChain>,
        rep: Permutation,
    },
    SetStab { n: usize, set: Vec<Point> },
    SetTransport { n: usize, from: Vec<Point>, to: Vec<Point> },
    ListOfSetsStab { n: usize, sets: Vec<Vec<Point>> },
    ListOfSetsTransport { n: usize, from: Vec<Vec<Point>>, to: Vec<Vec<Point>> },
    SetOfSetsStab { n: usize, sets: Vec<Vec<Point>> },
    SetOfSetsTransport { n: usize, from: Vec<Vec<Point>>, to: Vec<Vec<Point>> },
    Centralizer(Permutation),
    /// `{x : from^x = to}`.
    Conjugacy { from: Permutation, to: Permutation },
    DigraphAuto(Arc<LabelledDigraph>),
    DigraphIso(Arc<LabelledDigraph>, Arc<LabelledDigraph>),
}

fn norm_set(n: usize, s: &[Point]) -> Result<Vec<Point>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&p) = v.iter().find(|&&p| p as usize >= n) {
        return Err(Error::PointOutOfRange {
            point: p as usize,
            degree: n,
        });
    }
    Ok(v)
}

fn norm_list(n: usize, l: &[Vec<Point>]) -> Result<Vec<Vec<Point>>> {
    l.iter().map(|s| norm_set(n, s)).collect()
}

fn norm_family(n: usize, l: &[Vec<Point>]) -> Result<Vec<Vec<Point>>> {
    let mut v = norm_list(n, l)?;
    v.sort();
    v.dedup();
    Ok(v)
}

fn image_family(g: &Permutation, l: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let mut v: Vec<Vec<Point>> = l.iter().map(|s| g.act_set(s).unwrap()).collect();
    v.sort();
    v
}

fn check_degree(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

impl Constraint {
    pub fn group(gens: Vec<Permutation>, degree: usize) -> Result<Constraint> {
        let chain = Arc::new(StabChain::build(&gens, degree)?);
        Ok(Constraint::GroupByGens { gens, chain })
    }

    pub fn coset(gens: Vec<Permutation>, rep: Permutation, degree: usize) -> Result<Constraint> {
        check_degree(degree, rep.degree())?;
        let chain = Arc::new(StabChain::build(&gens, degree)?);
        Ok(Constraint::RightCoset { gens, chain, rep })
    }

    pub fn set_stab(n: usize, set: &[Point]) -> Result<Constraint> {
        Ok(Constraint::SetStab {
            n,
            set: norm_set(n, set)?,
        })
    }

    pub fn set_transport(n: usize, from: &[Point], to: &[Point]) -> Result<Constraint> {
        Ok(Constraint::SetTransport {
            n,
            from: norm_set(n, from)?,
            to: norm_set(n, to)?,
        })
    }

    pub fn list_of_sets_stab(n: usize, sets: &[Vec<Point>]) -> Result<Constraint> {
        Ok(Constraint::ListOfSetsStab {
            n,
            sets: norm_list(n, sets)?,
        })
    }

    pub fn list_of_sets_transport(n: usize, from: &[Vec<Point>], to: &[Vec<Point>]) -> Result<Constraint> {
        Ok(Constraint::ListOfSetsTransport {
            n,
            from: norm_list(n, from)?,
            to: norm_list(n, to)?,
        })
    }

    pub fn set_of_sets_stab(n: usize, sets: &[Vec<Point>]) -> Result<Constraint> {
        Ok(Constraint::SetOfSetsStab {
            n,
            sets: norm_family(n, sets)?,
        })
    }

    pub fn set_of_sets_transport(n: usize, from: &[Vec<Point>], to: &[Vec<Point>]) -> Result<Constraint> {
        Ok(Constraint::SetOfSetsTransport {
            n,
            from: norm_family(n, from)?,
            to: norm_family(n, to)?,
        })
    }

    pub fn conjugacy(from: Permutation, to: Permutation) -> Result<Constraint> {
        check_degree(from.degree(), to.degree())?;
        Ok(Constraint::Conjugacy { from, to })
    }

    pub fn digraph_iso(a: LabelledDigraph, b: LabelledDigraph) -> Result<Constraint> {
        check_degree(a.degree(), b.degree())?;
        Ok(Constraint::DigraphIso(Arc::new(a), Arc::new(b)))
    }

    pub fn degree(&self) -> usize {
        match self {
            Constraint::GroupByGens { chain, .. } | Constraint::RightCoset { chain, .. } => {
                chain.degree()
            }
            Constraint::SetStab { n, .. }
            | Constraint::SetTransport { n, .. }
            | Constraint::ListOfSetsStab { n, .. }
            | Constraint::ListOfSetsTransport { n, .. }
            | Constraint::SetOfSetsStab { n, .. }
            | Constraint::SetOfSetsTransport { n, .. } => *n,
            Constraint::Centralizer(g) => g.degree(),
            Constraint::Conjugacy { from, .. } => from.degree(),
            Constraint::DigraphAuto(d) => d.degree(),
            Constraint::DigraphIso(d, _) => d.degree(),
        }
    }

    pub fn membership(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        match self {
            Constraint::GroupByGens { chain, .. } => chain.contains(g),
            Constraint::RightCoset { chain, rep, .. } => {
                chain.contains(&g.compose_unchecked(&rep.inverse()))
            }
            Constraint::SetStab { set, .. } => g.act_set(set).unwrap() == *set,
            Constraint::SetTransport { from, to, .. } => g.act_set(from).unwrap() == *to,
            Constraint::ListOfSetsStab { sets, .. } => {
                sets.iter().all(|s| g.act_set(s).unwrap() == *s)
            }
            Constraint::ListOfSetsTransport { from, to, .. } => from
                .iter()
                .zip(to)
                .all(|(a, b)| g.act_set(a).unwrap() == *b)
                && from.len() == to.len(),
            Constraint::SetOfSetsStab { sets, .. } => image_family(g, sets) == *sets,
            Constraint::SetOfSetsTransport { from, to, .. } => image_family(g, from) == *to,
            Constraint::Centralizer(x) => x.conjugate_by(g) == *x,
            Constraint::Conjugacy { from, to } => from.conjugate_by(g) == *to,
            Constraint::DigraphAuto(d) => d.apply_unchecked(g) == **d,
            Constraint::DigraphIso(a, b) => a.apply_unchecked(g) == **b,
        }
    }

    pub fn contains_identity(&self) -> bool {
        self.membership(&Permutation::identity(self.degree()))
    }

    /// The constraint describing `U · y`.
    pub fn right_translate(&self, y: &Permutation) -> Result<Constraint> {
        check_degree(self.degree(), y.degree())?;
        let set = |s: &Vec<Point>| y.act_set(s).unwrap();
        let list = |l: &Vec<Vec<Point>>| l.iter().map(set).collect::<Vec<_>>();
        let n = self.degree();
        Ok(match self {
            Constraint::GroupByGens { gens, chain } => Constraint::RightCoset {
                gens: gens.clone(),
                chain: chain.clone(),
                rep: y.clone(),
            },
            Constraint::RightCoset { gens, chain, rep } => Constraint::RightCoset {
                gens: gens.clone(),
                chain: chain.clone(),
                rep: rep.compose_unchecked(y),
            },
            Constraint::SetStab { set: s, .. } => Constraint::set_transport(n, s, &set(s))?,
            Constraint::SetTransport { from, to, .. } => Constraint::set_transport(n, from, &set(to))?,
            Constraint::ListOfSetsStab { sets, .. } => {
                Constraint::list_of_sets_transport(n, sets, &list(sets))?
            }
            Constraint::ListOfSetsTransport { from, to, .. } => {
                Constraint::list_of_sets_transport(n, from, &list(to))?
            }
            Constraint::SetOfSetsStab { sets, .. } => {
                Constraint::set_of_sets_transport(n, sets, &list(sets))?
            }
            Constraint::SetOfSetsTransport { from, to, .. } => {
                Constraint::set_of_sets_transport(n, from, &list(to))?
            }
            Constraint::Centralizer(x) => Constraint::Conjugacy {
                from: x.clone(),
                to: x.conjugate_by(y),
            },
            Constraint::Conjugacy { from, to } => Constraint::Conjugacy {
                from: from.clone(),
                to: to.conjugate_by(y),
            },
            Constraint::DigraphAuto(d) => {
                Constraint::DigraphIso(d.clone(), Arc::new(d.apply_unchecked(y)))
            }
            Constraint::DigraphIso(a, b) => {
                Constraint::DigraphIso(a.clone(), Arc::new(b.apply_unchecked(y)))
            }
        })
    }

    /// Left and right constant digraphs, for the constraints that have them.
    fn constant_pair(&self) -> Option<(LabelledDigraph, LabelledDigraph)> {
        let n = self.degree();
        Some(match self {
            Constraint::SetStab { set, .. } => {
                let d = list_of_sets_digraph(n, std::slice::from_ref(set));
                (d.clone(), d)
            }
            Constraint::SetTransport { from, to, .. } => (
                list_of_sets_digraph(n, std::slice::from_ref(from)),
                list_of_sets_digraph(n, std::slice::from_ref(to)),
            ),
            Constraint::ListOfSetsStab { sets, .. } => {
                let d = list_of_sets_digraph(n, sets);
                (d.clone(), d)
            }
            Constraint::ListOfSetsTransport { from, to, .. } => {
                (list_of_sets_digraph(n, from), list_of_sets_digraph(n, to))
            }
            Constraint::SetOfSetsStab { sets, .. } => {
                let d = set_of_sets_digraph(n, sets);
                (d.clone(), d)
            }
            Constraint::SetOfSetsTransport { from, to, .. } => {
                (set_of_sets_digraph(n, from), set_of_sets_digraph(n, to))
            }
            Constraint::Centralizer(g) => {
                let d = centraliser_digraph(g);
                (d.clone(), d)
            }
            Constraint::Conjugacy { from, to } => (centraliser_digraph(from), centraliser_digraph(to)),
            Constraint::DigraphAuto(d) => (d.as_ref().clone(), d.as_ref().clone()),
            Constraint::DigraphIso(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
            Constraint::GroupByGens { .. } | Constraint::RightCoset { .. } => return None,
        })
    }
}

/// Arcless digraph labelling each vertex by the (1-based) indices of the sets containing it.
pub fn list_of_sets_digraph(n: usize, sets: &[Vec<Point>]) -> LabelledDigraph {
    let mut idx: Vec<Vec<i64>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            idx[v as usize].push(i as i64 + 1);
        }
    }
    LabelledDigraph::new(n, idx.into_iter().map(LabelTerm::tuple_of_ints).collect(), Vec::new())
        .expect("valid by construction")
}

/// Arcs join distinct points sharing a set; labels count, per set size, the
/// sets containing the vertex or arc, each paired with the number of sets.
pub fn set_of_sets_digraph(n: usize, sets: &[Vec<Point>]) -> LabelledDigraph {
    let k = sets.len() as i64;
    let width = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut vcount = vec![vec![0i64; width]; n];
    let mut acount: HashMap<(Point, Point), Vec<i64>> = HashMap::new();
    for s in sets {
        let size = s.len();
        for &a in s {
            vcount[a as usize][size - 1] += 1;
            for &b in s {
                if a != b {
                    acount.entry((a, b)).or_insert_with(|| vec![0; width])[size - 1] += 1;
                }
            }
        }
    }
    let label = |counts: &[i64]| {
        LabelTerm::Tuple(
            counts
                .iter()
                .map(|&c| LabelTerm::tuple_of_ints([c, k]))
                .collect(),
        )
    };
    let vlabels = vcount.iter().map(|c| label(c)).collect();
    let arcs = acount.into_iter().map(|((a, b), c)| (a, b, label(&c))).collect();
    LabelledDigraph::new(n, vlabels, arcs).expect("valid by construction")
}

/// Arcs `(α, α^g)`, all labelled 0.
pub fn centraliser_digraph(g: &Permutation) -> LabelledDigraph {
    let n = g.degree();
    let arcs = (0..n as Point).map(|a| (a, g.image(a), LabelTerm::int(0))).collect();
    LabelledDigraph::new(n, vec![LabelTerm::int(0); n], arcs).expect("valid by construction")
}

fn single(n: usize, d: LabelledDigraph) -> DigraphStack {
    DigraphStack::from_digraphs(n, vec![d]).expect("degrees agree")
}

/// Left data for one left-hand stack of a group refiner.
#[derive(Debug)]
struct GroupLeft {
    fixed: Vec<Point>,
    /// The group, with base starting at `fixed`.
    chain_f: Arc<StabChain>,
    ext: DigraphStack,
}

/// The stack built from the orbits of a group: the orbit list, then orbital
/// graphs for the non-singleton orbits in order of (size, minimum).
pub fn orbit_stack(stab: &StabChain, orbital_cap: usize, mode: DigraphMode) -> DigraphStack {
    let n = stab.degree();
    let orbs = stab.orbits();
    let mut ext = single(n, list_of_sets_digraph(n, &orbs));
    if mode == DigraphMode::Full {
        let mut big: Vec<&Vec<Point>> = orbs.iter().filter(|o| o.len() > 1).collect();
        big.sort_by_key(|o| (o.len(), o[0]));
        for o in big.into_iter().take(orbital_cap) {
            let d = orbital_graph(stab, o[0], o[1]).expect("distinct points");
            ext.push(d).expect("degrees agree");
        }
    }
    ext
}

/// Mutable refiner state for one constraint in one search.
#[derive(Debug)]
pub struct RefinerState {
    constraint: Arc<Constraint>,
    consts: Option<(DigraphStack, DigraphStack)>,
    groups: HashMap<(usize, Fp), Arc<GroupLeft>>,
    current: Option<Arc<GroupLeft>>,
}

impl RefinerState {
    pub fn new(constraint: Arc<Constraint>, mode: DigraphMode) -> RefinerState {
        let n = constraint.degree();
        let consts = constraint.constant_pair().map(|(l, r)| {
            let (l, r) = match mode {
                DigraphMode::Full => (l, r),
                DigraphMode::Arcless => (l.without_arcs(), r.without_arcs()),
            };
            (single(n, l), single(n, r))
        });
        RefinerState {
            constraint,
            consts,
            groups: HashMap::new(),
            current: None,
        }
    }

    pub fn constraint(&self) -> &Arc<Constraint> {
        &self.constraint
    }

    fn group_chain(&self) -> Option<&Arc<StabChain>> {
        match self.constraint.as_ref() {
            Constraint::GroupByGens { chain, .. } | Constraint::RightCoset { chain, .. } => Some(chain),
            _ => None,
        }
    }

    /// The left extension `f_L(S)`.
    pub fn left(&mut self, ctx: &mut RefineCtx<'_>, s: &DigraphStack) -> Result<DigraphStack> {
        if let Some((l, _)) = &self.consts {
            return Ok(l.clone());
        }
        let key = (s.len(), s.digest());
        if let Some(g) = self.groups.get(&key).cloned() {
            self.current = Some(g.clone());
            return filtered(ctx, s, &g.ext);
        }
        let chain = self.group_chain().expect("group constraint").clone();
        let fixed = ctx.approx.fixed_points(ctx.kind, s)?;
        let chain_f = Arc::new(chain.with_base_prefix(&fixed)?);
        let stab = chain_f.pointwise_stabilizer(&fixed)?;
        let ext = orbit_stack(&stab, ctx.orbital_cap, ctx.digraph_mode);
        let g = Arc::new(GroupLeft { fixed, chain_f, ext });
        if self.groups.len() >= 1 << 12 {
            self.groups.clear();
        }
        self.groups.insert(key, g.clone());
        self.current = Some(g.clone());
        filtered(ctx, s, &g.ext)
    }

    /// The right extension `f_R(T)`; uses the most recent left call.
    pub fn right(&mut self, ctx: &mut RefineCtx<'_>, t: &DigraphStack) -> Result<DigraphStack> {
        if let Some((_, r)) = &self.consts {
            return Ok(r.clone());
        }
        let g = self
            .current
            .clone()
            .ok_or(Error::LeftSequence { length: t.len() })?;
        let n = t.degree();
        let fixed_t = ctx.approx.fixed_points(ctx.kind, t)?;
        let a = match self.constraint.as_ref() {
            Constraint::RightCoset { rep, .. } => {
                let back = rep.inverse();
                let ft: Vec<Point> = fixed_t.iter().map(|&p| back.image(p)).collect();
                transport(&g, &ft).map(|a| a.compose_unchecked(rep))
            }
            _ => transport(&g, &fixed_t),
        };
        match a {
            Some(a) => filtered(ctx, t, &g.ext.apply_unchecked(&a)),
            None => Ok(DigraphStack::empty(n)),
        }
    }
}

/// With `filter_orbitals`, gives every digraph with arcs the equitable
/// labelling that starts from its own labels joined with the weak cells of `s`.
fn filtered(ctx: &mut RefineCtx<'_>, s: &DigraphStack, ext: &DigraphStack) -> Result<DigraphStack> {
    if !ctx.filter_orbitals {
        return Ok(ext.clone());
    }
    let cells = ctx.approx.weak_cell_index(s);
    let mut out = DigraphStack::empty(ext.degree());
    for e in ext.entries() {
        if e.arcs().is_empty() {
            out.push_arc(e.clone())?;
            continue;
        }
        let fp = e.fp();
        let init = fp
            .vfp
            .iter()
            .zip(&cells)
            .map(|(&f, &c)| {
                let mut h = FpHasher::new(0x4649_4c54);
                h.write_fp(f);
                h.write(c as u64);
                h.finish()
            })
            .collect();
        let r = refine_labels(&Adjacency::new(fp), init);
        out.push(e.with_vertex_labels(r.labels.into_iter().map(LabelTerm::from_fp).collect()))?;
    }
    Ok(out)
}

fn transport(g: &GroupLeft, target: &[Point]) -> Option<Permutation> {
    if target.len() != g.fixed.len() {
        return None;
    }
    g.chain_f.tuple_transporter(&g.fixed, target).ok().flatten()
}

/// A left/right refiner pair for a known subset of `Sym(Ω)`.
pub trait Refiner {
    fn degree(&self) -> usize;
    fn contains(&self, g: &Permutation) -> bool;
    fn left(&mut self, ctx: &mut RefineCtx<'_>, s: &DigraphStack) -> Result<DigraphStack>;
    fn right(&mut self, ctx: &mut RefineCtx<'_>, t: &DigraphStack) -> Result<DigraphStack>;
}

impl Refiner for RefinerState {
    fn degree(&self) -> usize {
        self.constraint.degree()
    }
    fn contains(&self, g: &Permutation) -> bool {
        self.constraint.membership(g)
    }
    fn left(&mut self, ctx: &mut RefineCtx<'_>, s: &DigraphStack) -> Result<DigraphStack> {
        RefinerState::left(self, ctx, s)
    }
    fn right(&mut self, ctx: &mut RefineCtx<'_>, t: &DigraphStack) -> Result<DigraphStack> {
        RefinerState::right(self, ctx, t)
    }
}

/// Outcome of [`verify_refiner_law`].
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub trials: usize,
    /// Trials where some `g` in the set was available.
    pub checked: usize,
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A random stack of one or two small random digraphs.
pub fn random_stack(n: usize, rng: &mut SplitMix64) -> DigraphStack {
    let len = 1 + rng.below(2) as usize;
    let mut s = DigraphStack::empty(n);
    for _ in 0..len {
        let colours = 1 + rng.below(3) as i64;
        let vl: Vec<LabelTerm> = (0..n).map(|_| LabelTerm::int(rng.below(colours as u64) as i64)).collect();
        let mut arcs = Vec::new();
        let density = rng.below(3);
        for a in 0..n as Point {
            for b in 0..n as Point {
                if rng.below(6) < density {
                    arcs.push((a, b, LabelTerm::int(rng.below(2) as i64)));
                }
            }
        }
        s.push(LabelledDigraph::new(n, vl, arcs).unwrap()).unwrap();
    }
    s
}

pub(crate) fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<Point> = (0..n as Point).collect();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    out.push(Permutation::from_images_unchecked(cur.clone()));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                cur.swap(0, i);
            } else {
                cur.swap(c[i], i);
            }
            out.push(Permutation::from_images_unchecked(cur.clone()));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Checks `f_L(S)^g = f_R(S^g)` for random `S` and `g` in the set, and
/// `f_L = f_R` when the set contains the identity. Elements are drawn from
/// an enumeration of `Sym(Ω)`, so keep the degree small.
pub fn verify_refiner_law<R: Refiner>(
    mut make: impl FnMut() -> R,
    kind: ApproxKind,
    mode: DigraphMode,
    filter_orbitals: bool,
    trials: usize,
    seed: u64,
) -> Result<LawReport> {
    let probe = make();
    let n = probe.degree();
    if n > 8 {
        return Err(Error::InvalidArgument(format!(
            "refiner law check enumerates Sym({n}); degree must be at most 8"
        )));
    }
    let members: Vec<Permutation> = all_permutations(n)
        .into_iter()
        .filter(|g| probe.contains(g))
        .collect();
    let has_id = probe.contains(&Permutation::identity(n));
    let mut rng = SplitMix64::new(seed);
    let mut approx = Approximator::new();
    let mut report = LawReport {
        trials,
        ..LawReport::default()
    };
    for trial in 0..trials {
        let s = random_stack(n, &mut rng);
        let mut ctx = RefineCtx {
            approx: &mut approx,
            kind,
            digraph_mode: mode,
            orbital_cap: 8,
            filter_orbitals,
        };
        if !members.is_empty() {
            let g = &members[rng.below(members.len() as u64) as usize];
            let t = s.apply_unchecked(g);
            let mut r = make();
            let l = r.left(&mut ctx, &s)?;
            let rt = r.right(&mut ctx, &t)?;
            if l.apply_unchecked(g) != rt {
                report
                    .violations
                    .push(format!("trial {trial}: f_L(S)^g != f_R(S^g) for g = {g}"));
            }
            report.checked += 1;
        }
        if has_id {
            let mut r = make();
            let l = r.left(&mut ctx, &s)?;
            let rs = r.right(&mut ctx, &s)?;
            if l != rs {
                report
                    .violations
                    .push(format!("trial {trial}: f_L(S) != f_R(S) although the identity is a member"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::approx;
    use num_bigint::BigUint;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn sets(xs: &[&[u32]]) -> Vec<Vec<Point>> {
        xs.iter().map(|s| s.iter().map(|x| x - 1).collect()).collect()
    }

    #[test]
    fn memberships() {
        let st = Constraint::set_stab(3, &[0, 1]).unwrap();
        assert!(st.membership(&p("(1,2)", 3)));
        assert!(!st.membership(&p("(1,3)", 3)));
        let cj = Constraint::conjugacy(p("(1,2)", 4), p("(3,4)", 4)).unwrap();
        assert!(!cj.membership(&Permutation::identity(4)));
        assert!(cj.membership(&p("(1,3)(2,4)", 4)));
        let x = p("(1,2,3)", 4);
        let co = Constraint::coset(vec![p("(1,2)", 4)], x.clone(), 4).unwrap();
        assert!(co.membership(&x));
        assert!(!co.contains_identity());
        assert!(Constraint::group(vec![p("(1,2)", 4)], 4).unwrap().contains_identity());
    }

    #[test]
    fn list_of_sets_example() {
        let v = sets(&[&[1, 3, 6], &[3, 5], &[2, 4], &[2, 3, 4]]);
        let d = list_of_sets_digraph(6, &v);
        let want = [vec![1], vec![3, 4], vec![1, 2, 4], vec![3, 4], vec![2], vec![1]];
        for (l, w) in d.vertex_labels().iter().zip(want) {
            assert_eq!(*l, LabelTerm::tuple_of_ints(w));
        }
        let aut = crate::canon::canonical_form(&d).unwrap().aut;
        assert_eq!(aut.order(), BigUint::from(4u32));
        assert!(aut.contains(&p("(1,6)", 6)));
        assert!(aut.contains(&p("(2,4)", 6)));
    }

    #[test]
    fn set_of_sets_example() {
        let v = sets(&[&[1], &[1, 2, 3], &[2, 4]]);
        let w = sets(&[&[5], &[2, 3, 4], &[3, 4]]);
        let gv = set_of_sets_digraph(5, &v);
        let gw = set_of_sets_digraph(5, &w);
        assert_eq!(gv.arcs().len(), 8);
        assert_eq!(gw.arcs().len(), 6);
        let sv = single(5, gv);
        let sw = single(5, gw);
        assert!(approx(ApproxKind::Strong, &sv, &sw).unwrap().is_empty());
        // label shape: (count, k) per set size
        let d = set_of_sets_digraph(5, &v);
        assert_eq!(
            d.vertex_labels()[0],
            LabelTerm::Tuple(vec![
                LabelTerm::tuple_of_ints([1, 3]),
                LabelTerm::tuple_of_ints([0, 3]),
                LabelTerm::tuple_of_ints([1, 3]),
            ])
        );
    }

    #[test]
    fn centraliser_shape() {
        let d = centraliser_digraph(&p("(1,2)(3,6,5)", 6));
        let loops: Vec<_> = d.arcs().iter().filter(|a| a.0 == a.1).collect();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].0, 3);
    }

    fn wreath() -> Constraint {
        Constraint::group(
            vec![p("(1,2)", 6), p("(3,4)", 6), p("(5,6)", 6), p("(1,3,5)(2,4,6)", 6)],
            6,
        )
        .unwrap()
    }

    #[test]
    fn group_refiner_transports_fixed_points() {
        let c = Arc::new(wreath());
        let mut v = vec![LabelTerm::bytes(b"white"); 6];
        v[0] = LabelTerm::bytes(b"black");
        v[1] = LabelTerm::bytes(b"grey");
        let s = single(6, LabelledDigraph::new(6, v, vec![]).unwrap());
        let h = p("(1,3,5)(2,4,6)", 6);
        let t = s.apply(&h).unwrap();
        let mut ap = Approximator::new();
        let mut ctx = RefineCtx {
            approx: &mut ap,
            kind: ApproxKind::Strong,
            digraph_mode: DigraphMode::Full,
            orbital_cap: 8,
            filter_orbitals: false,
        };
        let mut st = RefinerState::new(c, DigraphMode::Full);
        let l = st.left(&mut ctx, &s).unwrap();
        let r = st.right(&mut ctx, &t).unwrap();
        assert_eq!(l.apply(&h).unwrap(), r);
        assert_eq!(l.len(), 3);
        // the orbit list of G_[1,2]: {1},{2},{3,4},{5,6}
        let labels = l.entries()[0].vertex_labels();
        assert_eq!(labels[2], labels[3]);
        assert_ne!(labels[2], labels[4]);
        // no element of G maps [1,2] to [1,3]
        let mut v = vec![LabelTerm::bytes(b"white"); 6];
        v[0] = LabelTerm::bytes(b"black");
        v[2] = LabelTerm::bytes(b"grey");
        let bad = single(6, LabelledDigraph::new(6, v, vec![]).unwrap());
        assert!(st.right(&mut ctx, &bad).unwrap().is_empty());
    }

    #[test]
    fn laws_for_shipped_refiners() {
        let cases = vec![
            Constraint::Centralizer(p("(1,2)(3,6,5)", 6)),
            Constraint::group(vec![p("(1,2)(3,4)(5,6)", 6), p("(2,4,6)", 6)], 6).unwrap(),
            wreath(),
            Constraint::coset(vec![p("(1,2)", 5), p("(3,4,5)", 5)], p("(1,5)", 5), 5).unwrap(),
            Constraint::set_of_sets_stab(6, &sets(&[&[1, 2], &[3, 4], &[5, 6]])).unwrap(),
            Constraint::set_transport(5, &[0, 1], &[2, 3]).unwrap(),
            Constraint::conjugacy(p("(1,2)(3,4,5)", 5), p("(1,3,5)(2,4)", 5)).unwrap(),
        ];
        for c in cases {
            let c = Arc::new(c);
            for kind in [ApproxKind::Weak, ApproxKind::Strong, ApproxKind::Full] {
                for (mode, filter) in [
                    (DigraphMode::Arcless, false),
                    (DigraphMode::Full, false),
                    (DigraphMode::Full, true),
                ] {
                    let rep = verify_refiner_law(
                        || RefinerState::new(c.clone(), mode),
                        kind,
                        mode,
                        filter,
                        60,
                        11,
                    )
                    .unwrap();
                    assert!(rep.passed(), "{c:?} {kind:?} {mode:?} {filter}: {:?}", rep.violations);
                    assert!(rep.checked > 0);
                }
            }
        }
    }

    struct Corrupted;

    impl Refiner for Corrupted {
        fn degree(&self) -> usize {
            4
        }
        fn contains(&self, g: &Permutation) -> bool {
            g.image(0) == 0
        }
        fn left(&mut self, _: &mut RefineCtx<'_>, _: &DigraphStack) -> Result<DigraphStack> {
            Ok(single(4, LabelledDigraph::point_indicator(4, 0)))
        }
        fn right(&mut self, _: &mut RefineCtx<'_>, _: &DigraphStack) -> Result<DigraphStack> {
            Ok(single(4, LabelledDigraph::point_indicator(4, 1)))
        }
    }

    #[test]
    fn corrupted_refiner_is_reported() {
        let rep = verify_refiner_law(|| Corrupted, ApproxKind::Strong, DigraphMode::Full, false, 20, 3).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn translation() {
        let c = Constraint::set_stab(4, &[0, 1]).unwrap();
        let y = p("(1,3)(2,4)", 4);
        let t = c.right_translate(&y).unwrap();
        for g in all_permutations(4) {
            assert_eq!(t.membership(&g), c.membership(&g.compose(&y.inverse()).unwrap()));
        }
        assert_eq!(all_permutations(5).len(), 120);
    }
}
