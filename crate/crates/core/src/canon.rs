//! Individualisation–refinement canoniser for labelled digraphs.
//!
//! The canonical leaf minimises `(invariant path, certificate)`. Automorphisms
//! come from leaves equal to the first or best leaf and drive both orbit
//! pruning and backjumping.

use std::sync::Arc;

use crate::chain::{orbits, StabChain};
use crate::digraph::{FpDigraph, LabelledDigraph};
use crate::equitable::{refine_labels, Adjacency, Refinement};
use crate::error::{Error, Result};
use crate::label::{Fp, FpHasher};
use crate::perm::{Permutation, Point};

pub const CANON_DEGREE_CAP: usize = 64;

const TAG_INDIV: u64 = 0x494e_4449_56;

/// Canonical data for a fingerprint digraph.
#[derive(Clone, Debug)]
pub struct CanonFp {
    /// Maps each vertex to its canonical position.
    pub perm: Permutation,
    pub path: Vec<Fp>,
    pub cert: Vec<u128>,
    pub aut: Arc<StabChain>,
}

impl CanonFp {
    /// Equal keys exactly for isomorphic digraphs.
    pub fn same_form(&self, other: &CanonFp) -> bool {
        self.path == other.path && self.cert == other.cert
    }

    /// Points fixed by every automorphism, ordered by canonical position.
    pub fn fixed_points(&self) -> Vec<Point> {
        let mut fixed: Vec<Point> = self
            .aut
            .orbits()
            .into_iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0])
            .collect();
        fixed.sort_by_key(|&v| self.perm.image(v));
        fixed
    }
}

struct Leaf {
    perm: Permutation,
    seq: Vec<Point>,
    path: Vec<Fp>,
    cert: Vec<u128>,
}

struct Ctx<'a> {
    g: &'a FpDigraph,
    adj: Adjacency,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Permutation>,
}

fn common_prefix(a: &[Point], b: &[Point]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Ctx<'a> {
    fn leaf(&mut self, r: &Refinement, seq: &[Point], path: &[Fp]) -> Option<usize> {
        let n = self.g.n;
        let mut images = vec![0 as Point; n];
        for (pos, (_, cell)) in r.cells.iter().enumerate() {
            images[cell[0] as usize] = pos as Point;
        }
        let perm = Permutation::from_images_unchecked(images);
        let inv = perm.inverse();
        let mut cert: Vec<u128> = (0..n).map(|i| self.g.vfp[inv.image(i as Point) as usize]).collect();
        let mut arcs: Vec<(u64, Fp)> = self
            .g
            .arcs
            .iter()
            .map(|&(a, b, f)| (((perm.image(a) as u64) << 32) | perm.image(b) as u64, f))
            .collect();
        arcs.sort_unstable();
        for (ab, f) in arcs {
            cert.push(ab as u128);
            cert.push(f);
        }
        let leaf = Leaf {
            perm,
            seq: seq.to_vec(),
            path: path.to_vec(),
            cert,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                perm: leaf.perm.clone(),
                seq: leaf.seq.clone(),
                path: leaf.path.clone(),
                cert: leaf.cert.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.path == leaf.path && first.cert == leaf.cert {
            let a = first.perm.compose_unchecked(&leaf.perm.inverse());
            let t = common_prefix(&first.seq, &leaf.seq);
            self.push_auto(a);
            return Some(t);
        }
        let best = self.best.as_ref().unwrap();
        if best.path == leaf.path && best.cert == leaf.cert {
            let a = best.perm.compose_unchecked(&leaf.perm.inverse());
            let t = common_prefix(&best.seq, &leaf.seq);
            self.push_auto(a);
            return Some(t);
        }
        if (&leaf.path, &leaf.cert) < (&best.path, &best.cert) {
            self.best = Some(leaf);
        }
        None
    }

    fn push_auto(&mut self, a: Permutation) {
        if !a.is_identity() && !self.autos.contains(&a) {
            self.autos.push(a);
        }
    }

    fn keep(&self, path: &[Fp]) -> bool {
        let first = self.first.as_ref().unwrap();
        if first.path.len() >= path.len() && first.path[..path.len()] == *path {
            return true;
        }
        let best = &self.best.as_ref().unwrap().path;
        let m = best.len().min(path.len());
        match path[..m].cmp(&best[..m]) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => path.len() <= best.len(),
        }
    }

    fn visit(&mut self, r: Refinement, seq: &mut Vec<Point>, path: &mut Vec<Fp>) -> Option<usize> {
        if r.is_discrete() {
            return self.leaf(&r, seq, path);
        }
        let depth = seq.len();
        let cell = r
            .cells
            .iter()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(_, c)| c.len())
            .map(|(_, c)| c.clone())
            .unwrap();
        let mut tried: Vec<Point> = Vec::new();
        for &x in &cell {
            if !tried.is_empty() {
                let gens: Vec<Permutation> = self
                    .autos
                    .iter()
                    .filter(|a| seq.iter().all(|&s| a.image(s) == s))
                    .cloned()
                    .collect();
                if !gens.is_empty() {
                    let orbs = orbits(&gens, self.g.n);
                    let orb = orbs.iter().find(|o| o.contains(&x)).unwrap();
                    if tried.iter().any(|y| orb.contains(y)) {
                        continue;
                    }
                }
            }
            tried.push(x);
            let mut labels = r.labels.clone();
            let mut h = FpHasher::new(TAG_INDIV);
            h.write_fp(labels[x as usize]);
            labels[x as usize] = h.finish();
            let child = refine_labels(&self.adj, labels);
            seq.push(x);
            path.push(child.invariant());
            let res = if self.first.is_none() || self.keep(path) {
                self.visit(child, seq, path)
            } else {
                None
            };
            seq.pop();
            path.pop();
            if let Some(t) = res {
                if t < depth {
                    return Some(t);
                }
            }
        }
        None
    }
}

/// Canonises a fingerprint digraph of degree at most [`CANON_DEGREE_CAP`].
pub fn canon_fp(g: &FpDigraph) -> Result<CanonFp> {
    if g.n > CANON_DEGREE_CAP {
        return Err(Error::CanonCapExceeded {
            degree: g.n,
            cap: CANON_DEGREE_CAP,
        });
    }
    let adj = Adjacency::new(g);
    let root = refine_labels(&adj, g.vfp.clone());
    let mut ctx = Ctx {
        g,
        adj,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut path = vec![root.invariant()];
    ctx.visit(root, &mut Vec::new(), &mut path);
    let best = ctx.best.unwrap();
    let aut = StabChain::build(&ctx.autos, g.n)?;
    Ok(CanonFp {
        perm: best.perm,
        path: best.path,
        cert: best.cert,
        aut: Arc::new(aut),
    })
}

#[derive(Clone, Debug)]
pub struct CanonResult {
    pub canon_perm: Permutation,
    pub canon_form: LabelledDigraph,
    pub aut: StabChain,
}

pub fn canonical_form(d: &LabelledDigraph) -> Result<CanonResult> {
    let c = canon_fp(d.fp())?;
    Ok(CanonResult {
        canon_form: d.apply_unchecked(&c.perm),
        canon_perm: c.perm,
        aut: c.aut.as_ref().clone(),
    })
}
