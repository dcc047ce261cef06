//! Brute-force answers by enumeration. Only permutation arithmetic is
//! shared with the search code; memberships are checked from scratch.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::digraph::{DigraphStack, LabelledDigraph};
use crate::error::{Error, Result};
use crate::label::LabelTerm;
use crate::perm::{Permutation, Point};
use crate::refiner::Constraint;

/// Largest degree at which all of `Sym(Ω)` is enumerated.
pub const SYM_CAP: usize = 8;
/// Largest group enumerated by closure.
pub const GROUP_CAP: usize = 1_000_000;

/// All permutations of degree `n` in lexicographic order of images.
pub fn sym_elements(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<Point> = (0..n as Point).collect();
    let mut out = vec![Permutation::from_images(cur.clone()).expect("identity")];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::from_images(cur.clone()).expect("bijection"));
    }
}

/// Every element of `<gens>`, by breadth-first closure.
pub fn closure(gens: &[Permutation], n: usize, cap: usize) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "group closure",
                        size: format!("more than {cap}"),
                        cap: cap as u64,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

fn set_image(g: &Permutation, s: &[Point]) -> Vec<Point> {
    let mut v: Vec<Point> = s.iter().map(|&x| g.images()[x as usize]).collect();
    v.sort_unstable();
    v
}

fn same_set(a: &[Point], b: &[Point]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    x.dedup();
    y.sort_unstable();
    y.dedup();
    x == y
}

fn family(g: &Permutation, fam: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let mut v: Vec<Vec<Point>> = fam.iter().map(|s| set_image(g, s)).collect();
    v.sort();
    v.dedup();
    v
}

fn normal_family(fam: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let mut v: Vec<Vec<Point>> = fam
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    v.sort();
    v.dedup();
    v
}

fn arc_map(d: &LabelledDigraph) -> HashMap<(Point, Point), &LabelTerm> {
    d.arcs().iter().map(|(a, b, l)| ((*a, *b), l)).collect()
}

/// Does `g` map `a` onto `b`?
pub fn digraph_iso(g: &Permutation, a: &LabelledDigraph, b: &LabelledDigraph) -> bool {
    let im = g.images();
    if a.degree() != b.degree() || a.arcs().len() != b.arcs().len() {
        return false;
    }
    let (la, lb) = (a.vertex_labels(), b.vertex_labels());
    if (0..a.degree()).any(|v| la[v] != lb[im[v] as usize]) {
        return false;
    }
    let bm = arc_map(b);
    a.arcs()
        .iter()
        .all(|(x, y, l)| bm.get(&(im[*x as usize], im[*y as usize])) == Some(&l))
}

fn conj(x: &Permutation, g: &Permutation) -> Vec<Point> {
    // x^g sends α^g to α^(x g)
    let (xi, gi) = (x.images(), g.images());
    let mut out = vec![0; xi.len()];
    for a in 0..xi.len() {
        out[gi[a] as usize] = gi[xi[a] as usize];
    }
    out
}

enum Check<'a> {
    Elements(HashSet<Permutation>, Option<Permutation>),
    Plain(&'a Constraint),
}

fn prepare(c: &Constraint) -> Result<Check<'_>> {
    Ok(match c {
        Constraint::GroupByGens { gens, chain } => {
            Check::Elements(closure(gens, chain.degree(), GROUP_CAP)?, None)
        }
        Constraint::RightCoset { gens, chain, rep } => {
            Check::Elements(closure(gens, chain.degree(), GROUP_CAP)?, Some(rep.inverse()))
        }
        other => Check::Plain(other),
    })
}

fn passes(check: &Check<'_>, g: &Permutation) -> bool {
    match check {
        Check::Elements(set, None) => set.contains(g),
        Check::Elements(set, Some(back)) => set.contains(&g.compose(back).expect("same degree")),
        Check::Plain(c) => match c {
            Constraint::SetStab { set, .. } => same_set(&set_image(g, set), set),
            Constraint::SetTransport { from, to, .. } => same_set(&set_image(g, from), to),
            Constraint::ListOfSetsStab { sets, .. } => {
                sets.iter().all(|s| same_set(&set_image(g, s), s))
            }
            Constraint::ListOfSetsTransport { from, to, .. } => {
                from.len() == to.len()
                    && from.iter().zip(to).all(|(a, b)| same_set(&set_image(g, a), b))
            }
            Constraint::SetOfSetsStab { sets, .. } => family(g, sets) == normal_family(sets),
            Constraint::SetOfSetsTransport { from, to, .. } => family(g, from) == normal_family(to),
            Constraint::Centralizer(x) => conj(x, g) == x.images(),
            Constraint::Conjugacy { from, to } => conj(from, g) == to.images(),
            Constraint::DigraphAuto(d) => digraph_iso(g, d, d),
            Constraint::DigraphIso(a, b) => digraph_iso(g, a, b),
            Constraint::GroupByGens { .. } | Constraint::RightCoset { .. } => unreachable!(),
        },
    }
}

/// The intersection of the constraints, sorted by image sequence.
pub fn brute_solve(constraints: &[Constraint], degree: usize) -> Result<Vec<Permutation>> {
    for c in constraints {
        if c.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: c.degree(),
            });
        }
    }
    let checks = constraints.iter().map(prepare).collect::<Result<Vec<_>>>()?;
    let domain: Vec<Permutation> = if degree <= SYM_CAP {
        sym_elements(degree)
    } else {
        match checks.iter().find_map(|c| match c {
            Check::Elements(set, rep) => Some((set, rep)),
            _ => None,
        }) {
            Some((set, None)) => set.iter().cloned().collect(),
            Some((set, Some(back))) => {
                let rep = back.inverse();
                set.iter().map(|x| x.compose(&rep).expect("same degree")).collect()
            }
            None => {
                return Err(Error::CapExceeded {
                    what: "symmetric group",
                    size: format!("{degree}!"),
                    cap: GROUP_CAP as u64,
                })
            }
        }
    };
    let mut out: Vec<Permutation> = domain
        .into_iter()
        .filter(|g| checks.iter().all(|c| passes(c, g)))
        .collect();
    out.sort();
    Ok(out)
}

/// All `g` with `S^g = T`, entry by entry.
pub fn brute_iso_stacks(s: &DigraphStack, t: &DigraphStack) -> Result<Vec<Permutation>> {
    let n = s.degree();
    if n > 7 {
        return Err(Error::CapExceeded {
            what: "symmetric group",
            size: format!("{n}!"),
            cap: 5040,
        });
    }
    if t.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: t.degree(),
        });
    }
    if s.len() != t.len() {
        return Ok(Vec::new());
    }
    Ok(sym_elements(n)
        .into_iter()
        .filter(|g| s.entries().iter().zip(t.entries()).all(|(a, b)| digraph_iso(g, a, b)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn small_answers() {
        let r = brute_solve(&[Constraint::set_stab(3, &[0, 1]).unwrap()], 3).unwrap();
        assert_eq!(r, vec![Permutation::identity(3), p("(1,2)", 3)]);
        let r = brute_solve(&[Constraint::Centralizer(p("(1,2)(3,6,5)", 6))], 6).unwrap();
        assert_eq!(r.len(), 6);
        assert_eq!(sym_elements(5).len(), 120);
        assert!(sym_elements(4).windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_group_filter_matches_second_filter() {
        // 3x3 grid group
        let gens = vec![
            p("(1,2)(4,5)(7,8)", 9),
            p("(1,2,3)(4,5,6)(7,8,9)", 9),
            p("(1,4)(2,5)(3,6)", 9),
            p("(1,4,7)(2,5,8)(3,6,9)", 9),
        ];
        let g = Constraint::group(gens.clone(), 9).unwrap();
        let set = [0, 4, 8];
        let r = brute_solve(&[g, Constraint::set_stab(9, &set).unwrap()], 9).unwrap();
        let all = closure(&gens, 9, 100).unwrap();
        assert_eq!(all.len(), 36);
        let mut second: Vec<_> = all
            .into_iter()
            .filter(|x| {
                let mut im: Vec<u32> = set.iter().map(|&v| x.image(v)).collect();
                im.sort();
                im == set
            })
            .collect();
        second.sort();
        assert_eq!(r, second);
        assert!(brute_solve(&[], 9).is_err());
    }

    #[test]
    fn conjugation_convention() {
        let x = p("(1,2,3)", 4);
        let g = p("(1,4)", 4);
        assert_eq!(conj(&x, &g), x.conjugate_by(&g).images());
    }
}
