//! Permutations of `{0, .., n-1}`.
//!
//! Points are 0-based inside the crate. The text and JSON forms
//! ([`Permutation::parse_cycles`], [`Permutation::format_cycles`]) are 1-based.
//!
//! Composition is left to right: `p.compose(&q)` first applies `p`, then `q`,
//! so `i^(pq) = (i^p)^q`.

use std::fmt;

use crate::error::{Error, Result};

/// A point of the underlying set, 0-based.
pub type Point = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, degree: n });
            }
            if seen[p] {
                return Err(Error::Parse(format!("point {} appears twice", p + 1)));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[Point]]) -> Result<Self> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                for x in [a, b] {
                    if x as usize >= degree {
                        return Err(Error::PointOutOfRange {
                            point: x as usize,
                            degree,
                        });
                    }
                }
                if touched[a as usize] {
                    return Err(Error::Parse(format!("point {} repeated", a + 1)));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images })
    }

    /// A transposition of two distinct points.
    pub fn transposition(degree: usize, a: Point, b: Point) -> Self {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        images.swap(a as usize, b as usize);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `p.compose(q)` maps `i` to `q(p(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other.degree())?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&p| other.images[p as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Permutation { images: inv }
    }

    /// `x⁻¹ · self · x`, the conjugate `self^x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().compose_unchecked(self).compose_unchecked(x)
    }

    #[inline]
    pub fn image(&self, i: Point) -> Point {
        self.images[i as usize]
    }

    pub fn act_point(&self, i: Point) -> Result<Point> {
        self.check_point(i)?;
        Ok(self.images[i as usize])
    }

    pub fn act_tuple(&self, t: &[Point]) -> Result<Vec<Point>> {
        t.iter().map(|&i| self.act_point(i)).collect()
    }

    /// Image of a set; the result is sorted and deduplicated.
    pub fn act_set(&self, s: &[Point]) -> Result<Vec<Point>> {
        let mut out = self.act_tuple(s)?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn first_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i != p as usize)
            .map(|(i, _)| i as Point)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as Point);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses 1-based disjoint-cycle notation, e.g. `"(1,2)(3,4)"` or `"(1 2 3)"`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let text = text.trim();
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        let mut rest = text;
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            };
            let inner = &body[..close];
            let mut cycle = Vec::new();
            for tok in inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange { point: v, degree });
                }
                cycle.push((v - 1) as Point);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[Point]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    /// 1-based disjoint-cycle notation; the identity is `"()"`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        s
    }

    fn check_degree(&self, other: usize) -> Result<()> {
        if self.degree() != other {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other,
            });
        }
        Ok(())
    }

    fn check_point(&self, i: Point) -> Result<()> {
        if i as usize >= self.degree() {
            return Err(Error::PointOutOfRange {
                point: i as usize,
                degree: self.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_cycles())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        let r = p("(1,2)", 3).compose(&p("(2,3)", 3)).unwrap();
        assert_eq!(r, p("(1,3,2)", 3));
        let x = p("(1,2)(3,6,5)", 6);
        assert_eq!(x.compose(&Permutation::identity(6)).unwrap(), x);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let e = p("(1,2)", 3).compose(&p("(1,2)", 4));
        assert!(matches!(e, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn inverses() {
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
        assert!(Permutation::identity(5).inverse().is_identity());
        assert_eq!(p("(1,2)(3,6,5)", 6).inverse(), p("(1,2)(3,5,6)", 6));
    }

    #[test]
    fn actions() {
        assert_eq!(p("(1,2)", 2).act_point(0).unwrap(), 1);
        assert_eq!(p("(1,3,5)(2,4,6)", 6).act_tuple(&[0, 1]).unwrap(), vec![2, 3]);
        assert_eq!(p("(1,2)", 2).act_set(&[0, 1]).unwrap(), vec![0, 1]);
        assert!(matches!(
            p("(1,2)", 2).act_point(2),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn cycle_text() {
        let k = p("(1,2)(3,4)(5,6)", 6);
        assert_eq!(k.images(), &[1, 0, 3, 2, 5, 4]);
        assert!(p("()", 4).is_identity());
        assert_eq!(p("(1,3,5)", 5).format_cycles(), "(1,3,5)");
        assert_eq!(p("(1 3 5)", 5).format_cycles(), "(1,3,5)");
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
        assert!(Permutation::parse_cycles("1,2", 3).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as Point).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn action_law(a in arb_perm(7), b in arb_perm(7), i in 0u32..7) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.image(i), b.image(a.image(i)));
        }

        #[test]
        fn associativity_and_involution(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.inverse().inverse(), a.clone());
            let text = a.format_cycles();
            prop_assert_eq!(Permutation::parse_cycles(&text, 6).unwrap(), a);
        }
    }
}
