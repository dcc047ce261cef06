//! Stabiliser chains built by deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

/// Exact group orders and coset sizes.
pub type BigCard = BigUint;

/// Default cap for [`StabChain::enumerate_elements`].
pub const ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: Point,
    gens: Vec<Permutation>,
    /// `transversal[b]` maps the base point to `b`, when `b` is in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<Point>,
}

impl Level {
    fn new(base: Point, degree: usize) -> Level {
        let mut level = Level {
            base,
            gens: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base as usize] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            for s in &self.gens {
                let c = s.image(b);
                if transversal[c as usize].is_none() {
                    let u = transversal[b as usize].as_ref().unwrap().compose_unchecked(s);
                    transversal[c as usize] = Some(u);
                    orbit.push(c);
                }
            }
            k += 1;
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong_gens: Vec<Permutation>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> StabChain {
        StabChain {
            degree,
            levels: Vec::new(),
            strong_gens: Vec::new(),
        }
    }

    /// Builds a chain for the group generated by `gens`.
    pub fn build(gens: &[Permutation], degree: usize) -> Result<StabChain> {
        StabChain::build_with_base(gens, degree, &[])
    }

    /// Builds a chain whose base starts with `prefix` (repeated points are skipped).
    pub fn build_with_base(
        gens: &[Permutation],
        degree: usize,
        prefix: &[Point],
    ) -> Result<StabChain> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        for &p in prefix {
            if p as usize >= degree {
                return Err(Error::PointOutOfRange {
                    point: p as usize,
                    degree,
                });
            }
        }
        let mut base: Vec<Point> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.is_identity() || strong.contains(g) {
                continue;
            }
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
            strong.push(g.clone());
        }
        let mut chain = StabChain {
            degree,
            levels: base.iter().map(|&b| Level::new(b, degree)).collect(),
            strong_gens: strong.clone(),
        };
        for (i, level) in chain.levels.iter_mut().enumerate() {
            let fixing: Vec<Point> = base[..i].to_vec();
            level.gens = strong
                .iter()
                .filter(|g| fixing.iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            level.recompute(degree);
        }
        chain.complete();
        Ok(chain)
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let gamma = s.image(beta);
                    let level = &self.levels[li];
                    let ub = level.transversal[beta as usize].as_ref().unwrap();
                    let ug = level.transversal[gamma as usize].as_ref().unwrap();
                    let ubs = ub.compose_unchecked(s);
                    if &ubs == ug {
                        continue;
                    }
                    let schreier = ubs.compose_unchecked(&ug.inverse());
                    let (h, j) = self.sift_from(schreier, li + 1);
                    if j == self.levels.len() {
                        if h.is_identity() {
                            continue;
                        }
                        let b = h.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    let j = j.min(self.levels.len() - 1);
                    for l in li + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].recompute(self.degree);
                    }
                    self.strong_gens.push(h);
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level where
    /// sifting stopped (`levels.len()` if it went all the way through).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let b = g.image(level.base);
            match &level.transversal[b as usize] {
                None => return (g, l),
                Some(u) => g = g.compose_unchecked(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigCard {
        let mut o = BigCard::one();
        for l in &self.levels {
            o *= l.orbit.len();
        }
        o
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// The chain rebuilt so that its base begins with `prefix`.
    pub fn with_base_prefix(&self, prefix: &[Point]) -> Result<StabChain> {
        let mut dedup: Vec<Point> = Vec::new();
        for &p in prefix {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let base = self.base();
        if base.len() >= dedup.len() && base[..dedup.len()] == dedup[..] {
            return Ok(self.clone());
        }
        StabChain::build_with_base(&self.strong_gens, self.degree, &dedup)
    }

    /// Chain for the pointwise stabiliser of the points in `f`.
    pub fn pointwise_stabilizer(&self, f: &[Point]) -> Result<StabChain> {
        let mut dedup: Vec<Point> = Vec::new();
        for &p in f {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let full = self.with_base_prefix(&dedup)?;
        let k = dedup.len().min(full.levels.len());
        let levels: Vec<Level> = full.levels[k..].to_vec();
        let strong_gens = match levels.first() {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        };
        Ok(StabChain {
            degree: self.degree,
            levels,
            strong_gens,
        })
    }

    /// Some element `a` with `f[i]^a = g[i]` for all `i`, or `None`.
    pub fn tuple_transporter(&self, f: &[Point], g: &[Point]) -> Result<Option<Permutation>> {
        if f.len() != g.len() {
            return Err(Error::InvalidArgument(format!(
                "tuple lengths differ: {} and {}",
                f.len(),
                g.len()
            )));
        }
        let mut fs: Vec<Point> = Vec::new();
        let mut gs: Vec<Point> = Vec::new();
        for (k, (&a, &b)) in f.iter().zip(g).enumerate() {
            if a as usize >= self.degree || b as usize >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: a.max(b) as usize,
                    degree: self.degree,
                });
            }
            match f[..k].iter().position(|&x| x == a) {
                Some(prev) => {
                    if g[prev] != b {
                        return Ok(None);
                    }
                }
                None => {
                    if g[..k].contains(&b) {
                        return Ok(None);
                    }
                    fs.push(a);
                    gs.push(b);
                }
            }
        }
        let chain = self.with_base_prefix(&fs)?;
        Ok(chain.transport_prefix(&gs))
    }

    /// Maps the first `targets.len()` base points onto `targets`.
    fn transport_prefix(&self, targets: &[Point]) -> Option<Permutation> {
        let mut h = Permutation::identity(self.degree);
        for (i, &t) in targets.iter().enumerate() {
            let level = &self.levels[i];
            let y = h.inverse().image(t);
            let u = level.transversal[y as usize].as_ref()?;
            h = u.compose_unchecked(&h);
        }
        Some(h)
    }

    /// All elements, if there are at most `cap` of them.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigCard::from(cap) {
            return Err(Error::CapExceeded {
                what: "group",
                size: order.to_string(),
                cap,
            });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &b in &level.orbit {
                    let u = level.transversal[b as usize].as_ref().unwrap();
                    next.push(g.compose_unchecked(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Uniformly random element, drawing indices with `below(m)` in `0..m`.
    pub fn random_element(&self, below: &mut dyn FnMut(u64) -> u64) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = below(level.orbit.len() as u64) as usize;
            let b = level.orbit[k];
            g = g.compose_unchecked(level.transversal[b as usize].as_ref().unwrap());
        }
        g
    }

    /// Orbits of the group on all points.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        orbits(&self.strong_gens, self.degree)
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }
}

/// Orbits of `⟨gens⟩` on `0..degree`, each sorted, listed by minimum element.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<Point>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as Point];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            for g in gens {
                let c = g.image(b) as usize;
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c as Point);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn closure(gens: &[Permutation], n: usize) -> BTreeSet<Permutation> {
        let mut set = BTreeSet::new();
        set.insert(Permutation::identity(n));
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose_unchecked(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn k_gens() -> Vec<Permutation> {
        vec![p("(1,2)(3,4)(5,6)", 6), p("(2,4,6)", 6)]
    }

    #[test]
    fn orders() {
        // two directed triangles swapped: (C3 x C3):C2
        let k = StabChain::build(&k_gens(), 6).unwrap();
        assert_eq!(k.order(), BigCard::from(18u32));
        assert_eq!(StabChain::build(&[], 5).unwrap().order(), BigCard::from(1u32));
        let s4 = StabChain::build(&[p("(1,2)", 4), p("(1,2,3,4)", 4)], 4).unwrap();
        assert_eq!(s4.order(), BigCard::from(24u32));
        let s6 = StabChain::build(&[p("(1,2)", 6), p("(1,2,3,4,5,6)", 6)], 6).unwrap();
        assert_eq!(s6.order(), BigCard::from(720u32));
        let part = StabChain::build(
            &[p("(3,6)", 6), p("(1,2)", 6), p("(2,4)", 6), p("(4,5)", 6)],
            6,
        )
        .unwrap();
        assert_eq!(part.order(), BigCard::from(48u32));
    }

    #[test]
    fn membership() {
        let k = StabChain::build(&k_gens(), 6).unwrap();
        assert!(k.contains(&p("(1,2)(3,4)(5,6)", 6)));
        assert!(!k.contains(&p("(1,2)", 6)));
        assert!(k.contains(&Permutation::identity(6)));
        assert!(StabChain::trivial(3).contains(&Permutation::identity(3)));
    }

    #[test]
    fn degree_mismatch() {
        assert!(StabChain::build(&[p("(1,2)", 3)], 4).is_err());
    }

    #[test]
    fn orbit_lists() {
        let o = orbits(&[p("(3,4)(5,6)", 6)], 6);
        assert_eq!(o, vec![vec![0], vec![1], vec![2, 3], vec![4, 5]]);
        assert_eq!(orbits(&[], 3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(orbits(&[p("(1,2,3,4,5,6)", 6)], 6), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    fn wreath_g() -> StabChain {
        StabChain::build(
            &[
                p("(1,2)", 6),
                p("(3,4)", 6),
                p("(5,6)", 6),
                p("(1,3,5)(2,4,6)", 6),
            ],
            6,
        )
        .unwrap()
    }

    #[test]
    fn stabilisers() {
        let g = wreath_g();
        assert_eq!(g.order(), BigCard::from(24u32));
        let st = g.pointwise_stabilizer(&[0, 1]).unwrap();
        // (3,4) and (5,6) both fix 1 and 2, so the stabiliser has order 4
        assert_eq!(st.order(), BigCard::from(4u32));
        assert!(st.contains(&p("(3,4)(5,6)", 6)));
        assert!(st.contains(&p("(3,4)", 6)));
        assert!(!st.contains(&p("(1,2)", 6)));
        assert_eq!(st.orbits(), vec![vec![0], vec![1], vec![2, 3], vec![4, 5]]);
        assert_eq!(g.pointwise_stabilizer(&[]).unwrap().order(), g.order());
        let base = g.base();
        assert!(g.pointwise_stabilizer(&base).unwrap().is_trivial());
    }

    #[test]
    fn transporters() {
        let g = wreath_g();
        let a = g.tuple_transporter(&[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(a.act_tuple(&[0, 1]).unwrap(), vec![2, 3]);
        assert!(g.contains(&a));
        let id = g.tuple_transporter(&[0, 1], &[0, 1]).unwrap().unwrap();
        assert_eq!(id.act_tuple(&[0, 1]).unwrap(), vec![0, 1]);
        let c2 = StabChain::build(&[p("(1,2)", 3)], 3).unwrap();
        assert!(c2.tuple_transporter(&[0], &[2]).unwrap().is_none());
        assert!(g.tuple_transporter(&[0, 1], &[2, 4]).unwrap().is_none());
    }

    #[test]
    fn enumeration() {
        let k = StabChain::build(&k_gens(), 6).unwrap();
        let els = k.enumerate_elements(ENUMERATION_CAP).unwrap();
        assert_eq!(els.len(), 18);
        let set: BTreeSet<_> = els.into_iter().collect();
        assert_eq!(set, closure(&k_gens(), 6));
        assert_eq!(
            StabChain::trivial(4).enumerate_elements(10).unwrap(),
            vec![Permutation::identity(4)]
        );
        let s5 = StabChain::build(&[p("(1,2)", 5), p("(1,2,3,4,5)", 5)], 5).unwrap();
        assert_eq!(s5.enumerate_elements(ENUMERATION_CAP).unwrap().len(), 120);
        assert!(s5.enumerate_elements(100).is_err());
    }

    #[test]
    fn agrees_with_closure() {
        let cases: Vec<(Vec<&str>, usize)> = vec![
            (vec!["(1,2,3,4,5)", "(2,5)(3,4)"], 5),
            (vec!["(1,2,3)", "(3,4,5)"], 5),
            (vec!["(1,2)(3,4)", "(1,3)(2,4)", "(5,6,7)"], 7),
            (vec!["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 7),
            (vec!["(1,5)(2,6)", "(1,2)(5,6)", "(3,4)"], 6),
        ];
        for (gens, n) in cases {
            let gens: Vec<_> = gens.iter().map(|t| p(t, n)).collect();
            let chain = StabChain::build(&gens, n).unwrap();
            let set = closure(&gens, n);
            assert_eq!(chain.order(), BigCard::from(set.len()));
            let all = StabChain::build(&[p("(1,2)", n), Permutation::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).unwrap()], n)
                .unwrap()
                .enumerate_elements(ENUMERATION_CAP)
                .unwrap();
            for x in all.iter().take(2000) {
                assert_eq!(chain.contains(x), set.contains(x));
            }
            // orbit-stabiliser on a pair
            let st = chain.pointwise_stabilizer(&[0, 1]).unwrap();
            let pair_orbit: BTreeSet<_> = set.iter().map(|g| (g.image(0), g.image(1))).collect();
            assert_eq!(st.order() * pair_orbit.len(), chain.order());
            for f2 in [[1u32, 0], [2, 3], [0, 2]] {
                let found = set.iter().any(|g| g.image(0) == f2[0] && g.image(1) == f2[1]);
                let t = chain.tuple_transporter(&[0, 1], &f2).unwrap();
                assert_eq!(t.is_some(), found);
                if let Some(t) = t {
                    assert!(chain.contains(&t));
                }
            }
        }
    }

    #[test]
    fn random_elements_are_members() {
        let g = wreath_g();
        let mut state = 7u64;
        let mut below = |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for _ in 0..50 {
            assert!(g.contains(&g.random_element(&mut below)));
        }
    }
}
