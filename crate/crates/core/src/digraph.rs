//! Labelled digraphs, stacks of them, the permutation action and the squashed digraph.

use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::label::{gap_fp, tuple_fp, Fp, FpHasher, LabelTerm};
use crate::perm::{Permutation, Point};

/// Fingerprint view of a digraph: one fingerprint per vertex and per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDigraph {
    pub n: usize,
    pub vfp: Vec<Fp>,
    /// Sorted by `(source, target)`.
    pub arcs: Vec<(Point, Point, Fp)>,
    pub digest: Fp,
}

impl FpDigraph {
    pub fn new(n: usize, vfp: Vec<Fp>, arcs: Vec<(Point, Point, Fp)>) -> FpDigraph {
        let mut h = FpHasher::new(0x6469_6772);
        h.write(n as u64);
        for &f in &vfp {
            h.write_fp(f);
        }
        h.write(arcs.len() as u64);
        for &(a, b, f) in &arcs {
            h.write(((a as u64) << 32) | b as u64);
            h.write_fp(f);
        }
        FpDigraph {
            n,
            vfp,
            arcs,
            digest: h.finish(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabelledDigraph {
    n: usize,
    vlabels: Vec<LabelTerm>,
    arcs: Vec<(Point, Point, LabelTerm)>,
    fp: OnceLock<Arc<FpDigraph>>,
}

impl PartialEq for LabelledDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vlabels == other.vlabels && self.arcs == other.arcs
    }
}

impl Eq for LabelledDigraph {}

impl LabelledDigraph {
    /// Checks ranges, rejects gap labels and repeated ordered pairs; sorts the arcs.
    pub fn new(
        n: usize,
        vlabels: Vec<LabelTerm>,
        mut arcs: Vec<(Point, Point, LabelTerm)>,
    ) -> Result<LabelledDigraph> {
        if vlabels.len() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: vlabels.len(),
            });
        }
        if vlabels.iter().any(|l| l.contains_gap()) || arcs.iter().any(|a| a.2.contains_gap()) {
            return Err(Error::InvalidArgument(
                "the gap symbol is reserved for squashed digraphs".into(),
            ));
        }
        for &(a, b, _) in &arcs {
            if a as usize >= n || b as usize >= n {
                return Err(Error::PointOutOfRange {
                    point: a.max(b) as usize,
                    degree: n,
                });
            }
        }
        arcs.sort_by_key(|x| (x.0, x.1));
        if arcs.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidArgument("repeated arc".into()));
        }
        Ok(LabelledDigraph::from_parts(n, vlabels, arcs))
    }

    fn from_parts(
        n: usize,
        vlabels: Vec<LabelTerm>,
        arcs: Vec<(Point, Point, LabelTerm)>,
    ) -> LabelledDigraph {
        LabelledDigraph {
            n,
            vlabels,
            arcs,
            fp: OnceLock::new(),
        }
    }

    /// Same arcs, new vertex labels (which must be gap-free).
    pub(crate) fn with_vertex_labels(&self, vlabels: Vec<LabelTerm>) -> LabelledDigraph {
        debug_assert!(vlabels.len() == self.n && !vlabels.iter().any(|l| l.contains_gap()));
        LabelledDigraph::from_parts(self.n, vlabels, self.arcs.clone())
    }

    /// Arcless digraph with every vertex labelled `label`.
    pub fn uniform(n: usize, label: LabelTerm) -> LabelledDigraph {
        LabelledDigraph::from_parts(n, vec![label; n], Vec::new())
    }

    /// Arcless digraph labelling `alpha` with 1 and every other vertex with 0.
    pub fn point_indicator(n: usize, alpha: Point) -> LabelledDigraph {
        let mut v = vec![LabelTerm::int(0); n];
        v[alpha as usize] = LabelTerm::int(1);
        LabelledDigraph::from_parts(n, v, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn vertex_labels(&self) -> &[LabelTerm] {
        &self.vlabels
    }

    pub fn arcs(&self) -> &[(Point, Point, LabelTerm)] {
        &self.arcs
    }

    pub fn arc_label(&self, a: Point, b: Point) -> Option<&LabelTerm> {
        self.arcs
            .binary_search_by(|x| (x.0, x.1).cmp(&(a, b)))
            .ok()
            .map(|k| &self.arcs[k].2)
    }

    pub fn without_arcs(&self) -> LabelledDigraph {
        LabelledDigraph::from_parts(self.n, self.vlabels.clone(), Vec::new())
    }

    /// `Γ^g`: arcs mapped by `g`, each label taken from the preimage.
    pub fn apply(&self, g: &Permutation) -> Result<LabelledDigraph> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: g.degree(),
            });
        }
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &Permutation) -> LabelledDigraph {
        let mut vlabels = vec![LabelTerm::Gap; self.n];
        for (i, l) in self.vlabels.iter().enumerate() {
            vlabels[g.image(i as Point) as usize] = l.clone();
        }
        let mut arcs: Vec<_> = self
            .arcs
            .iter()
            .map(|(a, b, l)| (g.image(*a), g.image(*b), l.clone()))
            .collect();
        arcs.sort_by_key(|x| (x.0, x.1));
        LabelledDigraph::from_parts(self.n, vlabels, arcs)
    }

    /// Cached fingerprint view.
    pub fn fp(&self) -> &Arc<FpDigraph> {
        self.fp.get_or_init(|| {
            let vfp = self.vlabels.iter().map(|l| l.fingerprint()).collect();
            let arcs = self
                .arcs
                .iter()
                .map(|(a, b, l)| (*a, *b, l.fingerprint()))
                .collect();
            Arc::new(FpDigraph::new(self.n, vfp, arcs))
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "vlabels": self.vlabels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|(a, b, l)| json!([a + 1, b + 1, l.to_json()])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<LabelledDigraph> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("digraph needs \"n\"".into()))? as usize;
        let vlabels = match v.get("vlabels") {
            None => vec![LabelTerm::int(0); n],
            Some(Value::Array(xs)) => xs.iter().map(LabelTerm::from_json).collect::<Result<_>>()?,
            Some(_) => return Err(Error::Parse("\"vlabels\" must be an array".into())),
        };
        let mut arcs = Vec::new();
        if let Some(list) = v.get("arcs") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse("\"arcs\" must be an array".into()))?;
            for arc in list {
                let parts = arc
                    .as_array()
                    .ok_or_else(|| Error::Parse("arc must be an array".into()))?;
                if parts.len() < 2 || parts.len() > 3 {
                    return Err(Error::Parse("arc must be [a, b] or [a, b, label]".into()));
                }
                let pt = |x: &Value| -> Result<Point> {
                    match x.as_u64() {
                        Some(p) if p >= 1 && p as usize <= n => Ok((p - 1) as Point),
                        _ => Err(Error::Parse(format!("bad arc endpoint {x}"))),
                    }
                };
                let label = match parts.get(2) {
                    Some(l) => LabelTerm::from_json(l)?,
                    None => LabelTerm::int(0),
                };
                arcs.push((pt(&parts[0])?, pt(&parts[1])?, label));
            }
        }
        LabelledDigraph::new(n, vlabels, arcs)
    }
}

/// A finite list of digraphs on the same points.
#[derive(Clone, Debug)]
pub struct DigraphStack {
    n: usize,
    entries: Vec<Arc<LabelledDigraph>>,
}

impl PartialEq for DigraphStack {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| Arc::ptr_eq(a, b) || a == b)
    }
}

impl Eq for DigraphStack {}

impl DigraphStack {
    pub fn empty(n: usize) -> DigraphStack {
        DigraphStack {
            n,
            entries: Vec::new(),
        }
    }

    pub fn from_digraphs(n: usize, digraphs: Vec<LabelledDigraph>) -> Result<DigraphStack> {
        let mut s = DigraphStack::empty(n);
        for d in digraphs {
            s.push(d)?;
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Arc<LabelledDigraph>] {
        &self.entries
    }

    pub fn push(&mut self, d: LabelledDigraph) -> Result<()> {
        self.push_arc(Arc::new(d))
    }

    pub fn push_arc(&mut self, d: Arc<LabelledDigraph>) -> Result<()> {
        if d.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: d.degree(),
            });
        }
        self.entries.push(d);
        Ok(())
    }

    /// `S ∥ T`.
    pub fn append(&self, other: &DigraphStack) -> Result<DigraphStack> {
        if other.n != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DigraphStack { n: self.n, entries })
    }

    pub(crate) fn extend_from(&mut self, other: &DigraphStack) {
        debug_assert_eq!(self.n, other.n);
        self.entries.extend(other.entries.iter().cloned());
    }

    pub fn apply(&self, g: &Permutation) -> Result<DigraphStack> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: g.degree(),
            });
        }
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &Permutation) -> DigraphStack {
        if g.is_identity() {
            return self.clone();
        }
        DigraphStack {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|d| Arc::new(d.apply_unchecked(g)))
                .collect(),
        }
    }

    /// Stack with all arcs removed from every entry.
    pub fn without_arcs(&self) -> DigraphStack {
        DigraphStack {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|d| {
                    if d.arcs().is_empty() {
                        d.clone()
                    } else {
                        Arc::new(d.without_arcs())
                    }
                })
                .collect(),
        }
    }

    /// Structural digest of the whole stack.
    pub fn digest(&self) -> Fp {
        let mut h = FpHasher::new(0x7374_6163);
        h.write(self.n as u64);
        for e in &self.entries {
            h.write_fp(e.fp().digest);
        }
        h.write(self.entries.len() as u64);
        h.finish()
    }

    /// The squashed digraph: tuple vertex labels, tuple arc labels with gaps.
    pub fn squash(&self) -> LabelledDigraph {
        let vlabels = (0..self.n)
            .map(|v| LabelTerm::Tuple(self.entries.iter().map(|e| e.vlabels[v].clone()).collect()))
            .collect();
        let mut pairs: Vec<(Point, Point)> = self
            .entries
            .iter()
            .flat_map(|e| e.arcs.iter().map(|(a, b, _)| (*a, *b)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let arcs = pairs
            .into_iter()
            .map(|(a, b)| {
                let label = LabelTerm::Tuple(
                    self.entries
                        .iter()
                        .map(|e| e.arc_label(a, b).cloned().unwrap_or(LabelTerm::Gap))
                        .collect(),
                );
                (a, b, label)
            })
            .collect();
        LabelledDigraph::from_parts(self.n, vlabels, arcs)
    }

    /// Fingerprint view of [`DigraphStack::squash`], built from the entry views.
    pub fn squash_fp(&self) -> FpDigraph {
        let views: Vec<&Arc<FpDigraph>> = self.entries.iter().map(|e| e.fp()).collect();
        let vfp = (0..self.n)
            .map(|v| tuple_fp(views.iter().map(|d| d.vfp[v])))
            .collect();
        let mut all: Vec<(Point, Point, usize, Fp)> = Vec::new();
        for (k, d) in views.iter().enumerate() {
            all.extend(d.arcs.iter().map(|&(a, b, f)| (a, b, k, f)));
        }
        all.sort_unstable_by_key(|x| (x.0, x.1, x.2));
        let gap = gap_fp();
        let len = views.len();
        let mut arcs = Vec::new();
        let mut i = 0;
        while i < all.len() {
            let (a, b) = (all[i].0, all[i].1);
            let mut j = i;
            let mut slot = vec![gap; len];
            while j < all.len() && (all[j].0, all[j].1) == (a, b) {
                slot[all[j].2] = all[j].3;
                j += 1;
            }
            arcs.push((a, b, tuple_fp(slot)));
            i = j;
        }
        FpDigraph::new(self.n, vfp, arcs)
    }
}

/// Orbital graph of the group with the given base pair; all labels are `0`.
pub fn orbital_graph(chain: &StabChain, alpha: Point, beta: Point) -> Result<LabelledDigraph> {
    let n = chain.degree();
    if alpha == beta {
        return Err(Error::InvalidArgument(
            "orbital graph base pair must have distinct points".into(),
        ));
    }
    if alpha as usize >= n || beta as usize >= n {
        return Err(Error::PointOutOfRange {
            point: alpha.max(beta) as usize,
            degree: n,
        });
    }
    let gens = chain.strong_generators();
    let mut seen = std::collections::HashSet::new();
    seen.insert((alpha, beta));
    let mut queue = vec![(alpha, beta)];
    let mut k = 0;
    while k < queue.len() {
        let (a, b) = queue[k];
        for g in gens {
            let next = (g.image(a), g.image(b));
            if seen.insert(next) {
                queue.push(next);
            }
        }
        k += 1;
    }
    queue.sort_unstable();
    let arcs = queue
        .into_iter()
        .map(|(a, b)| (a, b, LabelTerm::int(0)))
        .collect();
    Ok(LabelledDigraph::from_parts(
        n,
        vec![LabelTerm::int(0); n],
        arcs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn arcs(list: &[(u32, u32, i64)]) -> Vec<(Point, Point, LabelTerm)> {
        list.iter()
            .map(|&(a, b, l)| (a - 1, b - 1, LabelTerm::int(l)))
            .collect()
    }

    fn example_stack() -> DigraphStack {
        let w = LabelTerm::bytes(b"white");
        let b = LabelTerm::bytes(b"black");
        let s1 = LabelledDigraph::new(
            6,
            vec![w.clone(); 6],
            arcs(&[(1, 3, 0), (2, 4, 0), (3, 5, 0), (4, 6, 0), (5, 1, 0), (6, 2, 0)]),
        )
        .unwrap();
        let mut v2 = vec![w.clone(); 6];
        v2[0] = b.clone();
        v2[1] = b.clone();
        let s2 = LabelledDigraph::new(6, v2, vec![]).unwrap();
        let mut v3 = vec![w; 6];
        v3[4] = b.clone();
        v3[5] = b;
        let s3 = LabelledDigraph::new(
            6,
            v3,
            arcs(&[
                (3, 4, 0),
                (4, 3, 0),
                (3, 5, 0),
                (4, 6, 0),
                (5, 1, 1),
                (6, 1, 1),
                (5, 2, 1),
                (6, 2, 1),
            ]),
        )
        .unwrap();
        DigraphStack::from_digraphs(6, vec![s1, s2, s3]).unwrap()
    }

    #[test]
    fn example_squash_shape() {
        let sq = example_stack().squash();
        assert_eq!(sq.arcs().len(), 10);
        let mut al: Vec<_> = sq.arcs().iter().map(|a| a.2.clone()).collect();
        al.sort();
        al.dedup();
        assert_eq!(al.len(), 5);
        let mut vl = sq.vertex_labels().to_vec();
        vl.sort();
        vl.dedup();
        assert_eq!(vl.len(), 3);
    }

    #[test]
    fn action_on_example() {
        let s = example_stack();
        let t = s.apply(&p("(1,2)", 6)).unwrap();
        assert_ne!(t.entries()[0], s.entries()[0]);
        assert_eq!(t.entries()[1], s.entries()[1]);
        assert_eq!(t.entries()[2], s.entries()[2]);
        assert_eq!(s.apply(&Permutation::identity(6)).unwrap(), s);
        let e = DigraphStack::empty(6);
        assert_eq!(e.apply(&p("(1,2,3)", 6)).unwrap(), e);
        assert!(s.apply(&p("(1,2)", 5)).is_err());
    }

    #[test]
    fn append_lengths() {
        let s = example_stack();
        let e = DigraphStack::empty(6);
        assert_eq!(s.append(&e).unwrap(), s);
        let st = DigraphStack::from_digraphs(6, vec![s.entries()[0].as_ref().clone()]).unwrap();
        let both = st.append(&s).unwrap();
        assert_eq!(both.len(), 4);
        assert_eq!(both.entries()[1], s.entries()[0]);
        assert!(s.append(&DigraphStack::empty(5)).is_err());
    }

    #[test]
    fn empty_squash() {
        let sq = DigraphStack::empty(3).squash();
        assert!(sq.arcs().is_empty());
        assert!(sq.vertex_labels().iter().all(|l| *l == LabelTerm::Tuple(vec![])));
    }

    #[test]
    fn squash_fp_matches_squash() {
        let s = example_stack();
        assert_eq!(*s.squash().fp().as_ref(), s.squash_fp());
    }

    #[test]
    fn invalid_digraphs() {
        assert!(LabelledDigraph::new(2, vec![LabelTerm::Gap, LabelTerm::int(0)], vec![]).is_err());
        assert!(LabelledDigraph::new(2, vec![LabelTerm::int(0); 2], arcs(&[(1, 3, 0)])).is_err());
        assert!(LabelledDigraph::new(2, vec![LabelTerm::int(0); 2], arcs(&[(1, 2, 0), (1, 2, 1)])).is_err());
    }

    #[test]
    fn orbital_graphs() {
        let k = StabChain::build(&[p("(1,2)(3,4)(5,6)", 6), p("(2,4,6)", 6)], 6).unwrap();
        let og = orbital_graph(&k, 0, 2).unwrap();
        let s = example_stack();
        assert_eq!(og.arcs().len(), 6);
        let pairs: Vec<_> = og.arcs().iter().map(|a| (a.0, a.1)).collect();
        let want: Vec<_> = s.entries()[0].arcs().iter().map(|a| (a.0, a.1)).collect();
        assert_eq!(pairs, want);
        let s4 = StabChain::build(&[p("(1,2)", 4), p("(1,2,3,4)", 4)], 4).unwrap();
        assert_eq!(orbital_graph(&s4, 0, 1).unwrap().arcs().len(), 12);
        let triv = StabChain::trivial(3);
        assert_eq!(orbital_graph(&triv, 0, 1).unwrap().arcs().len(), 1);
        assert!(orbital_graph(&triv, 1, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = example_stack().entries()[2].as_ref().clone();
        assert_eq!(LabelledDigraph::from_json(&d.to_json()).unwrap(), d);
    }

    fn arb_digraph(n: usize) -> impl Strategy<Value = LabelledDigraph> {
        (
            proptest::collection::vec(0i64..3, n),
            proptest::collection::btree_map((0..n as u32, 0..n as u32), 0i64..2, 0..2 * n),
        )
            .prop_map(move |(v, a)| {
                LabelledDigraph::new(
                    n,
                    v.into_iter().map(LabelTerm::int).collect(),
                    a.into_iter().map(|((x, y), l)| (x, y, LabelTerm::int(l))).collect(),
                )
                .unwrap()
            })
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as Point).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn action_law(d in arb_digraph(6), g in arb_perm(6), h in arb_perm(6)) {
            let lhs = d.apply(&g).unwrap().apply(&h).unwrap();
            let rhs = d.apply(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(d.apply(&Permutation::identity(6)).unwrap(), d);
        }

        #[test]
        fn squash_equivariance(a in arb_digraph(5), b in arb_digraph(5), g in arb_perm(5)) {
            let s = DigraphStack::from_digraphs(5, vec![a, b]).unwrap();
            let lhs = s.apply(&g).unwrap().squash();
            let rhs = s.squash().apply(&g).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(lhs.fp().as_ref(), &s.apply(&g).unwrap().squash_fp());
        }
    }
}
