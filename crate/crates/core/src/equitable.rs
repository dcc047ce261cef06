//! Equitable vertex labelling.
//!
//! Each round gives every vertex the fingerprint of
//! `(old label, multiset of (out-neighbour label, arc label), multiset of (in-neighbour label, arc label))`,
//! all vertices at once. Rounds stop once the number of labels stops growing.

use std::collections::HashMap;

use crate::digraph::{FpDigraph, LabelledDigraph};
use crate::label::{Fp, FpHasher, LabelTerm};
use crate::perm::Point;

const TAG_ROUND: u64 = 0x524f_554e_44;

/// Out- and in-neighbourhoods of an [`FpDigraph`].
#[derive(Clone, Debug)]
pub struct Adjacency {
    pub n: usize,
    out: Vec<Vec<(Point, Fp)>>,
    inn: Vec<Vec<(Point, Fp)>>,
}

impl Adjacency {
    pub fn new(g: &FpDigraph) -> Adjacency {
        let mut out = vec![Vec::new(); g.n];
        let mut inn = vec![Vec::new(); g.n];
        for &(a, b, f) in &g.arcs {
            out[a as usize].push((b, f));
            inn[b as usize].push((a, f));
        }
        Adjacency { n: g.n, out, inn }
    }
}

/// Labels per vertex and the cells, sorted by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub labels: Vec<Fp>,
    pub cells: Vec<(Fp, Vec<Point>)>,
}

impl Refinement {
    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.labels.len()
    }

    /// Fingerprint of the sorted `(label, cell size)` list.
    pub fn invariant(&self) -> Fp {
        let mut h = FpHasher::new(0x494e_56);
        for (f, c) in &self.cells {
            h.write_fp(*f);
            h.write(c.len() as u64);
        }
        h.finish()
    }
}

fn count_distinct(labels: &[Fp]) -> usize {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn signature(adj: &Adjacency, labels: &[Fp], v: usize) -> (Vec<(Fp, Fp)>, Vec<(Fp, Fp)>) {
    let mut out: Vec<(Fp, Fp)> = adj.out[v].iter().map(|&(w, f)| (labels[w as usize], f)).collect();
    let mut inn: Vec<(Fp, Fp)> = adj.inn[v].iter().map(|&(w, f)| (labels[w as usize], f)).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (out, inn)
}

fn round(adj: &Adjacency, labels: &[Fp]) -> Vec<Fp> {
    let mut sigs = Vec::with_capacity(adj.n);
    let mut next = Vec::with_capacity(adj.n);
    for v in 0..adj.n {
        let (out, inn) = signature(adj, labels, v);
        let mut h = FpHasher::new(TAG_ROUND);
        h.write_fp(labels[v]);
        h.write(out.len() as u64);
        for &(a, b) in &out {
            h.write_fp(a);
            h.write_fp(b);
        }
        h.write(inn.len() as u64);
        for &(a, b) in &inn {
            h.write_fp(a);
            h.write_fp(b);
        }
        next.push(h.finish());
        sigs.push((labels[v], out, inn));
    }
    // Distinct signatures must get distinct fingerprints.
    let mut first: HashMap<Fp, usize> = HashMap::with_capacity(adj.n);
    for (v, &f) in next.iter().enumerate() {
        let u = *first.entry(f).or_insert(v);
        assert!(
            sigs[u] == sigs[v],
            "fingerprint collision between refinement signatures"
        );
    }
    next
}

/// Refines `initial` labels on `adj` until equitable.
pub fn refine_labels(adj: &Adjacency, initial: Vec<Fp>) -> Refinement {
    let mut labels = initial;
    let mut count = count_distinct(&labels);
    loop {
        let next = round(adj, &labels);
        let next_count = count_distinct(&next);
        labels = next;
        if next_count <= count {
            break;
        }
        count = next_count;
    }
    let cells = cells_of(&labels);
    Refinement { labels, cells }
}

pub(crate) fn cells_of(labels: &[Fp]) -> Vec<(Fp, Vec<Point>)> {
    let mut order: Vec<(Fp, Point)> = labels
        .iter()
        .enumerate()
        .map(|(v, &f)| (f, v as Point))
        .collect();
    order.sort_unstable();
    let mut cells: Vec<(Fp, Vec<Point>)> = Vec::new();
    for (f, v) in order {
        match cells.last_mut() {
            Some((g, c)) if *g == f => c.push(v),
            _ => cells.push((f, vec![v])),
        }
    }
    cells
}

pub fn refine_fp(g: &FpDigraph) -> Refinement {
    refine_labels(&Adjacency::new(g), g.vfp.clone())
}

/// Result of [`equitable`]: `(label, cell)` pairs sorted by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableResult {
    pub cells: Vec<(LabelTerm, Vec<Point>)>,
}

impl EquitableResult {
    /// The label given to each vertex.
    pub fn vertex_labels(&self, n: usize) -> Vec<LabelTerm> {
        let mut out = vec![LabelTerm::Gap; n];
        for (l, c) in &self.cells {
            for &v in c {
                out[v as usize] = l.clone();
            }
        }
        out
    }
}

pub fn equitable(g: &LabelledDigraph) -> EquitableResult {
    let r = refine_fp(g.fp());
    EquitableResult {
        cells: r
            .cells
            .into_iter()
            .map(|(f, c)| (LabelTerm::from_fp(f), c))
            .collect(),
    }
}

/// Checks that the labelling is equitable by direct counting.
pub fn is_equitable(g: &LabelledDigraph, labels: &[LabelTerm]) -> bool {
    let n = g.degree();
    let mut out_counts: Vec<HashMap<(LabelTerm, LabelTerm), usize>> = vec![HashMap::new(); n];
    let mut in_counts: Vec<HashMap<(LabelTerm, LabelTerm), usize>> = vec![HashMap::new(); n];
    for (a, b, l) in g.arcs() {
        *out_counts[*a as usize]
            .entry((labels[*b as usize].clone(), l.clone()))
            .or_default() += 1;
        *in_counts[*b as usize]
            .entry((labels[*a as usize].clone(), l.clone()))
            .or_default() += 1;
    }
    for u in 0..n {
        for v in u + 1..n {
            if labels[u] == labels[v]
                && (out_counts[u] != out_counts[v] || in_counts[u] != in_counts[v])
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use proptest::prelude::*;

    fn undirected(n: usize, edges: &[(u32, u32)], label: i64) -> Vec<(Point, Point, LabelTerm)> {
        let mut v = Vec::new();
        for &(a, b) in edges {
            v.push((a - 1, b - 1, LabelTerm::int(label)));
            v.push((b - 1, a - 1, LabelTerm::int(label)));
        }
        let _ = n;
        v
    }

    #[test]
    fn complete_vs_arcless() {
        let n = 4;
        let mut arcs = Vec::new();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if a != b {
                    arcs.push((a, b, LabelTerm::int(0)));
                }
            }
        }
        let k = LabelledDigraph::new(n, vec![LabelTerm::int(0); n], arcs).unwrap();
        let e = LabelledDigraph::new(n, vec![LabelTerm::int(0); n], vec![]).unwrap();
        let lk: Vec<_> = equitable(&k).cells.into_iter().map(|c| c.0).collect();
        let le: Vec<_> = equitable(&e).cells.into_iter().map(|c| c.0).collect();
        assert_eq!(lk.len(), 1);
        assert_ne!(lk, le);
    }

    #[test]
    fn splits_by_degree() {
        // path 1-2-3: the middle vertex separates
        let g = LabelledDigraph::new(3, vec![LabelTerm::int(0); 3], undirected(3, &[(1, 2), (2, 3)], 0)).unwrap();
        let r = equitable(&g);
        let mut cells: Vec<_> = r.cells.iter().map(|c| c.1.clone()).collect();
        cells.sort();
        assert_eq!(cells, vec![vec![0, 2], vec![1]]);
        assert!(is_equitable(&g, &r.vertex_labels(3)));
        assert!(!is_equitable(&g, &vec![LabelTerm::int(0); 3]));
    }

    fn arb_digraph(n: usize) -> impl Strategy<Value = LabelledDigraph> {
        (
            proptest::collection::vec(0i64..2, n),
            proptest::collection::btree_map((0..n as u32, 0..n as u32), 0i64..2, 0..3 * n),
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
        fn equitable_split_only_and_idempotent(d in arb_digraph(7)) {
            let r = equitable(&d);
            let labels = r.vertex_labels(7);
            prop_assert!(is_equitable(&d, &labels));
            for u in 0..7 {
                for v in 0..7 {
                    if labels[u] == labels[v] {
                        prop_assert_eq!(&d.vertex_labels()[u], &d.vertex_labels()[v]);
                    }
                }
            }
            let relabelled = LabelledDigraph::new(7, labels, d.arcs().to_vec()).unwrap();
            prop_assert_eq!(equitable(&relabelled).cells.len(), r.cells.len());
            let mut seen: Vec<_> = r.cells.iter().flat_map(|c| c.1.clone()).collect();
            seen.sort();
            prop_assert_eq!(seen, (0..7).collect::<Vec<u32>>());
            prop_assert!(r.cells.windows(2).all(|w| w[0].0 < w[1].0));
        }

        #[test]
        fn equitable_equivariant(d in arb_digraph(6), g in arb_perm(6)) {
            let a = equitable(&d);
            let b = equitable(&d.apply(&g).unwrap());
            prop_assert_eq!(a.cells.len(), b.cells.len());
            for ((la, ca), (lb, cb)) in a.cells.iter().zip(&b.cells) {
                prop_assert_eq!(la, lb);
                prop_assert_eq!(g.act_set(ca).unwrap(), cb.clone());
            }
        }
    }
}
