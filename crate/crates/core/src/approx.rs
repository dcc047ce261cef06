//! Isomorphism and fixed-point approximators for digraph stacks.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::canon::{canon_fp, CanonFp};
use crate::chain::{BigCard, StabChain};
use crate::digraph::DigraphStack;
use crate::equitable::{refine_fp, Refinement};
use crate::error::{Error, Result};
use crate::label::Fp;
use crate::perm::{Permutation, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ApproxKind {
    Weak,
    Strong,
    Full,
}

/// The group part of a non-empty approximation.
#[derive(Clone, Debug)]
pub enum GroupPart {
    /// Stabiliser in `Sym(Ω)` of an ordered partition.
    Partition(Arc<Vec<Vec<Point>>>),
    Chain(Arc<StabChain>),
}

impl GroupPart {
    pub fn order(&self) -> BigCard {
        match self {
            GroupPart::Partition(cells) => {
                let mut o = BigCard::one();
                for c in cells.iter() {
                    for k in 2..=c.len() {
                        o *= k;
                    }
                }
                o
            }
            GroupPart::Chain(c) => c.order(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        match self {
            GroupPart::Partition(cells) => cells.iter().all(|c| {
                let mut img: Vec<Point> = c.iter().map(|&x| g.image(x)).collect();
                img.sort_unstable();
                img == *c
            }),
            GroupPart::Chain(c) => c.contains(g),
        }
    }

    /// Orbits on Ω, each sorted.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        match self {
            GroupPart::Partition(cells) => cells.as_ref().clone(),
            GroupPart::Chain(c) => c.orbits(),
        }
    }

    /// Chain for the group (adjacent transpositions inside each cell for partitions).
    pub fn to_chain(&self, degree: usize) -> StabChain {
        match self {
            GroupPart::Partition(cells) => {
                let gens: Vec<Permutation> = cells
                    .iter()
                    .flat_map(|c| c.windows(2).map(|w| Permutation::transposition(degree, w[0], w[1])))
                    .collect();
                StabChain::build(&gens, degree).expect("degrees agree")
            }
            GroupPart::Chain(c) => c.as_ref().clone(),
        }
    }

    /// Same group, compared as sets.
    pub fn same_group(&self, other: &GroupPart, degree: usize) -> bool {
        match (self, other) {
            (GroupPart::Partition(a), GroupPart::Partition(b)) => {
                let mut a = a.as_ref().clone();
                let mut b = b.as_ref().clone();
                a.retain(|c| c.len() > 1);
                b.retain(|c| c.len() > 1);
                a.sort();
                b.sort();
                a == b
            }
            _ => {
                let ca = self.to_chain(degree);
                let cb = other.to_chain(degree);
                ca.order() == cb.order() && cb.strong_generators().iter().all(|g| ca.contains(g))
            }
        }
    }
}

/// `Empty`, or the right coset `group · rep`.
#[derive(Clone, Debug)]
pub enum CosetApprox {
    Empty,
    Coset { group: GroupPart, rep: Permutation },
}

impl CosetApprox {
    pub fn is_empty(&self) -> bool {
        matches!(self, CosetApprox::Empty)
    }

    pub fn cardinality(&self) -> BigCard {
        match self {
            CosetApprox::Empty => BigCard::default(),
            CosetApprox::Coset { group, .. } => group.order(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        match self {
            CosetApprox::Empty => false,
            CosetApprox::Coset { group, rep } => {
                g.degree() == rep.degree() && group.contains(&g.compose_unchecked(&rep.inverse()))
            }
        }
    }

    pub fn group(&self) -> Option<&GroupPart> {
        match self {
            CosetApprox::Empty => None,
            CosetApprox::Coset { group, .. } => Some(group),
        }
    }

    pub fn rep(&self) -> Option<&Permutation> {
        match self {
            CosetApprox::Empty => None,
            CosetApprox::Coset { rep, .. } => Some(rep),
        }
    }
}

#[derive(Debug)]
struct WeakPrep {
    entry_labels: Vec<Vec<Fp>>,
    /// Cells ordered by f-value, each with its f-value.
    fvals: Vec<Vec<u32>>,
    cells: Arc<Vec<Vec<Point>>>,
}

#[derive(Debug)]
struct StrongPrep {
    labels: Vec<Fp>,
    cells: Arc<Vec<Vec<Point>>>,
}

const CACHE_CAP: usize = 1 << 14;

fn bounded_insert<K: std::hash::Hash + Eq, V>(map: &mut HashMap<K, V>, k: K, v: V) {
    if map.len() >= CACHE_CAP {
        map.clear();
    }
    map.insert(k, v);
}

/// Computes approximations, caching per-stack work by structural digest.
#[derive(Debug, Default)]
pub struct Approximator {
    entry_refinements: HashMap<Fp, Arc<Refinement>>,
    weak: HashMap<Fp, Arc<WeakPrep>>,
    strong: HashMap<Fp, Arc<StrongPrep>>,
    full: HashMap<Fp, Arc<CanonFp>>,
}

/// Maps the sorted cells of `a` onto the sorted cells of `b` pointwise.
fn cell_rep(n: usize, a: &[Vec<Point>], b: &[Vec<Point>]) -> Permutation {
    let mut images = vec![0 as Point; n];
    for (ca, cb) in a.iter().zip(b) {
        for (&x, &y) in ca.iter().zip(cb) {
            images[x as usize] = y;
        }
    }
    Permutation::from_images_unchecked(images)
}

fn singletons(cells: &[Vec<Point>]) -> Vec<Point> {
    cells.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
}

impl Approximator {
    pub fn new() -> Approximator {
        Approximator::default()
    }

    fn weak_prep(&mut self, s: &DigraphStack) -> Arc<WeakPrep> {
        let key = s.digest();
        if let Some(p) = self.weak.get(&key) {
            return p.clone();
        }
        let n = s.degree();
        let mut refinements = Vec::with_capacity(s.len());
        for e in s.entries() {
            let d = e.fp().digest;
            let r = match self.entry_refinements.get(&d) {
                Some(r) => r.clone(),
                None => {
                    let r = Arc::new(refine_fp(e.fp()));
                    bounded_insert(&mut self.entry_refinements, d, r.clone());
                    r
                }
            };
            refinements.push(r);
        }
        let mut f: Vec<(Vec<u32>, Point)> = (0..n as Point)
            .map(|v| (Vec::with_capacity(refinements.len()), v))
            .collect();
        for r in &refinements {
            let mut idx = vec![0u32; n];
            for (j, (_, cell)) in r.cells.iter().enumerate() {
                for &v in cell {
                    idx[v as usize] = j as u32;
                }
            }
            for (fv, v) in f.iter_mut() {
                fv.push(idx[*v as usize]);
            }
        }
        f.sort();
        let mut fvals: Vec<Vec<u32>> = Vec::new();
        let mut cells: Vec<Vec<Point>> = Vec::new();
        for (fv, v) in f {
            if fvals.last() == Some(&fv) {
                cells.last_mut().unwrap().push(v);
            } else {
                fvals.push(fv);
                cells.push(vec![v]);
            }
        }
        let prep = Arc::new(WeakPrep {
            entry_labels: refinements
                .iter()
                .map(|r| r.cells.iter().map(|c| c.0).collect())
                .collect(),
            fvals,
            cells: Arc::new(cells),
        });
        bounded_insert(&mut self.weak, key, prep.clone());
        prep
    }

    fn strong_prep(&mut self, s: &DigraphStack) -> Arc<StrongPrep> {
        let key = s.digest();
        if let Some(p) = self.strong.get(&key) {
            return p.clone();
        }
        let r = refine_fp(&s.squash_fp());
        let prep = Arc::new(StrongPrep {
            labels: r.cells.iter().map(|c| c.0).collect(),
            cells: Arc::new(r.cells.into_iter().map(|c| c.1).collect()),
        });
        bounded_insert(&mut self.strong, key, prep.clone());
        prep
    }

    fn full_prep(&mut self, s: &DigraphStack) -> Result<Arc<CanonFp>> {
        let key = s.digest();
        if let Some(p) = self.full.get(&key) {
            return Ok(p.clone());
        }
        let c = Arc::new(canon_fp(&s.squash_fp())?);
        bounded_insert(&mut self.full, key, c.clone());
        Ok(c)
    }

    pub fn approx(&mut self, kind: ApproxKind, s: &DigraphStack, t: &DigraphStack) -> Result<CosetApprox> {
        if s.degree() != t.degree() {
            return Err(Error::DegreeMismatch {
                expected: s.degree(),
                found: t.degree(),
            });
        }
        if s.len() != t.len() {
            return Ok(CosetApprox::Empty);
        }
        let n = s.degree();
        match kind {
            ApproxKind::Weak => {
                let a = self.weak_prep(s);
                let b = self.weak_prep(t);
                if a.entry_labels != b.entry_labels
                    || a.cells.len() != b.cells.len()
                    || a.fvals != b.fvals
                    || a.cells.iter().zip(b.cells.iter()).any(|(x, y)| x.len() != y.len())
                {
                    return Ok(CosetApprox::Empty);
                }
                Ok(CosetApprox::Coset {
                    rep: cell_rep(n, &a.cells, &b.cells),
                    group: GroupPart::Partition(a.cells.clone()),
                })
            }
            ApproxKind::Strong => {
                let a = self.strong_prep(s);
                let b = self.strong_prep(t);
                if a.labels != b.labels
                    || a.cells.iter().zip(b.cells.iter()).any(|(x, y)| x.len() != y.len())
                {
                    return Ok(CosetApprox::Empty);
                }
                Ok(CosetApprox::Coset {
                    rep: cell_rep(n, &a.cells, &b.cells),
                    group: GroupPart::Partition(a.cells.clone()),
                })
            }
            ApproxKind::Full => {
                let a = self.full_prep(s)?;
                let b = self.full_prep(t)?;
                if !a.same_form(&b) {
                    return Ok(CosetApprox::Empty);
                }
                Ok(CosetApprox::Coset {
                    rep: a.perm.compose_unchecked(&b.perm.inverse()),
                    group: GroupPart::Chain(a.aut.clone()),
                })
            }
        }
    }

    /// Position of each point's cell in the ordered weak cells of `s`.
    pub fn weak_cell_index(&mut self, s: &DigraphStack) -> Vec<u32> {
        let prep = self.weak_prep(s);
        let mut idx = vec![0u32; s.degree()];
        for (j, c) in prep.cells.iter().enumerate() {
            for &v in c {
                idx[v as usize] = j as u32;
            }
        }
        idx
    }

    pub fn fixed_points(&mut self, kind: ApproxKind, s: &DigraphStack) -> Result<Vec<Point>> {
        Ok(match kind {
            ApproxKind::Weak => singletons(&self.weak_prep(s).cells),
            ApproxKind::Strong => singletons(&self.strong_prep(s).cells),
            ApproxKind::Full => self.full_prep(s)?.fixed_points(),
        })
    }
}

/// One-off approximation without a persistent cache.
pub fn approx(kind: ApproxKind, s: &DigraphStack, t: &DigraphStack) -> Result<CosetApprox> {
    Approximator::new().approx(kind, s, t)
}

/// One-off fixed-point list without a persistent cache.
pub fn fixed_points(kind: ApproxKind, s: &DigraphStack) -> Result<Vec<Point>> {
    Approximator::new().fixed_points(kind, s)
}
