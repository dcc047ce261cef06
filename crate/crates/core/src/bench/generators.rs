//! Seeded problem generators.

use crate::bench::catalog::{self, CatalogGroup};
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};
use crate::refiner::Constraint;
use crate::rng::SplitMix64;

/// Generators of `S_n × S_n` acting on rows and columns; cell `(r, c)` is point `r·n + c`.
pub fn gen_grid_group(n: usize) -> Result<Vec<Permutation>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("grid group needs n >= 2, got {n}")));
    }
    let sym = catalog::symmetric(n);
    let m = n as Point;
    let mut gens = Vec::new();
    for g in &sym.gens {
        gens.push(perm((0..m * m).map(|x| g.image(x / m) * m + x % m).collect()));
    }
    for g in &sym.gens {
        gens.push(perm((0..m * m).map(|x| x / m * m + g.image(x % m)).collect()));
    }
    Ok(gens)
}

fn perm(images: Vec<Point>) -> Permutation {
    Permutation::from_images(images).expect("generator maps are bijections")
}

/// Generators of `S_m ≀ S_d` with blocks `{i·m, …, i·m + m - 1}`.
pub fn gen_wreath(m: usize, d: usize) -> Result<Vec<Permutation>> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidArgument("wreath product needs m, d >= 1".into()));
    }
    let n = m * d;
    let mut gens = Vec::new();
    if m >= 2 {
        for g in &catalog::symmetric(m).gens {
            let mut im: Vec<Point> = (0..n as Point).collect();
            im[..m].copy_from_slice(g.images());
            gens.push(perm(im));
        }
    }
    let block = |f: &dyn Fn(usize) -> usize| {
        perm((0..n).map(|x| (f(x / m) * m + x % m) as Point).collect())
    };
    if d >= 2 {
        gens.push(block(&|b| match b {
            0 => 1,
            1 => 0,
            b => b,
        }));
    }
    if d >= 3 {
        gens.push(block(&|b| (b + 1) % d));
    }
    Ok(gens)
}

/// A uniformly random permutation of degree `n`.
pub fn random_perm(n: usize, rng: &mut SplitMix64) -> Permutation {
    let mut im: Vec<Point> = (0..n as Point).collect();
    rng.shuffle(&mut im);
    perm(im)
}

fn conjugate_all(gens: &[Permutation], x: &Permutation) -> Vec<Permutation> {
    gens.iter().map(|g| g.conjugate_by(x)).collect()
}

/// A random subset of size `k`, sorted.
fn random_subset(n: usize, k: usize, rng: &mut SplitMix64) -> Vec<Point> {
    let mut s = rng.sample(n, k);
    s.sort_unstable();
    s
}

/// Grid problem (i): the stabiliser of a random subset of size ⌊n²/2⌋.
pub fn grid_set_problem(n: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    let g = gen_grid_group(n)?;
    let set = random_subset(n * n, n * n / 2, rng);
    Ok(vec![Constraint::group(g, n * n)?, Constraint::set_stab(n * n, &set)?])
}

/// Grid problem (ii): a random subset with ⌊n/2⌋ entries in every grid-row.
pub fn grid_rows_problem(n: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    let g = gen_grid_group(n)?;
    let mut set = Vec::new();
    for r in 0..n {
        for c in rng.sample(n, n / 2) {
            set.push((r * n) as Point + c);
        }
    }
    Ok(vec![Constraint::group(g, n * n)?, Constraint::set_stab(n * n, &set)?])
}

/// Grid problem (iii): the stabiliser of an unordered partition into two
/// halves, given as a set-of-sets stabiliser together with the conjugated
/// `S_{n²/2} ≀ S_2` that is exactly that stabiliser.
pub fn grid_partition_problem(n: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "partition problem needs even n, got {n}"
        )));
    }
    let g = gen_grid_group(n)?;
    let big = n * n;
    let half = big / 2;
    let cell = random_subset(big, half, rng);
    let rest: Vec<Point> = (0..big as Point).filter(|x| cell.binary_search(x).is_err()).collect();
    let to_cells = perm(cell.iter().chain(&rest).copied().collect());
    let wreath = conjugate_all(&gen_wreath(half, 2)?, &to_cells);
    Ok(vec![
        Constraint::group(g, big)?,
        Constraint::set_of_sets_stab(big, &[cell, rest])?,
        Constraint::group(wreath, big)?,
    ])
}

/// Places degree-`n` permutations on consecutive blocks of a degree `k·n` domain.
fn on_blocks(n: usize, parts: &[&Permutation]) -> Permutation {
    let mut im = Vec::with_capacity(n * parts.len());
    for (i, p) in parts.iter().enumerate() {
        im.extend(p.images().iter().map(|&x| x + (i * n) as Point));
    }
    perm(im)
}

fn restrict(g: &Permutation, block: usize, n: usize) -> Permutation {
    let off = (block * n) as Point;
    perm(g.images()[block * n..(block + 1) * n].iter().map(|&x| x - off).collect())
}

/// A proper subdirect product of `k` transitive groups of degree `n`.
#[derive(Clone, Debug)]
pub struct Subdirect {
    pub gens: Vec<Permutation>,
    /// The direct product of the chosen factors.
    pub ambient: StabChain,
    pub factors: Vec<String>,
    pub factor_orders: Vec<u64>,
}

pub const SUBDIRECT_RETRIES: usize = 50;
const SAMPLES_PER_ATTEMPT: usize = 32;

pub fn gen_subdirect(k: usize, n: usize, rng: &mut SplitMix64) -> Result<Subdirect> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "a proper subdirect product needs at least two factors".into(),
        ));
    }
    let cat: Vec<CatalogGroup> = catalog::transitive(n)
        .into_iter()
        .filter(|g| g.order > 1)
        .collect();
    if cat.is_empty() {
        return Err(Error::InvalidArgument(format!("no transitive groups of degree {n} in the catalog")));
    }
    let id = Permutation::identity(n);
    for _ in 0..SUBDIRECT_RETRIES {
        let mut factors = Vec::with_capacity(k);
        for _ in 0..k {
            let g = &cat[rng.below(cat.len() as u64) as usize];
            let x = random_perm(n, rng);
            let gens = conjugate_all(&g.gens, &x);
            factors.push((g.name.clone(), g.order, StabChain::build(&gens, n)?, gens));
        }
        let mut ambient_gens = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for g in &f.3 {
                let parts: Vec<&Permutation> = (0..k).map(|j| if j == i { g } else { &id }).collect();
                ambient_gens.push(on_blocks(n, &parts));
            }
        }
        let ambient = StabChain::build(&ambient_gens, k * n)?;
        let mut gens: Vec<Permutation> = Vec::new();
        for _ in 0..SAMPLES_PER_ATTEMPT {
            let parts: Vec<Permutation> = factors
                .iter()
                .map(|f| f.2.random_element(&mut |m| rng.below(m)))
                .collect();
            let refs: Vec<&Permutation> = parts.iter().collect();
            gens.push(on_blocks(n, &refs));
            let subdirect = (0..k).all(|b| {
                let proj: Vec<Permutation> = gens.iter().map(|g| restrict(g, b, n)).collect();
                StabChain::build(&proj, n).map(|c| c.order_u64() == Some(factors[b].1)).unwrap_or(false)
            });
            if subdirect {
                let h = StabChain::build(&gens, k * n)?;
                if h.order() < ambient.order() {
                    return Ok(Subdirect {
                        gens,
                        ambient,
                        factor_orders: factors.iter().map(|f| f.1).collect(),
                        factors: factors.into_iter().map(|f| f.0).collect(),
                    });
                }
                break;
            }
        }
    }
    Err(Error::RetryExhausted {
        attempts: SUBDIRECT_RETRIES,
    })
}

/// Two right cosets of independent proper subdirect products, each with a
/// representative drawn from its ambient direct product.
pub fn subdirect_coset_problem(k: usize, n: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    for _ in 0..2 {
        let s = gen_subdirect(k, n, rng)?;
        let rep = s.ambient.random_element(&mut |m| rng.below(m));
        out.push(Constraint::coset(s.gens, rep, k * n)?);
    }
    Ok(out)
}

/// A primitive group intersected with a randomly conjugated `S_{n/d} ≀ S_d`.
pub fn primitive_wreath_problem(group: &CatalogGroup, d: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    let n = group.degree;
    if d < 2 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!("{d} is not a proper divisor of {n}")));
    }
    let x = random_perm(n, rng);
    let w = conjugate_all(&gen_wreath(n / d, d)?, &x);
    Ok(vec![Constraint::group(group.gens.clone(), n)?, Constraint::group(w, n)?])
}

/// A random moderate subgroup of `Sym(n)`: a conjugated wreath product,
/// Young subgroup or cyclic group, or the group of a random permutation.
pub fn random_group(n: usize, rng: &mut SplitMix64) -> Result<Vec<Permutation>> {
    let x = random_perm(n, rng);
    let gens = match rng.below(4) {
        0 => {
            let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
            let d = divisors[rng.below(divisors.len() as u64) as usize];
            gen_wreath(n / d, d)?
        }
        1 => {
            let a = 1 + rng.below(n as u64 - 1) as usize;
            let mut gens = Vec::new();
            for (lo, hi) in [(0, a), (a, n)] {
                for i in lo + 1..hi {
                    gens.push(Permutation::transposition(n, lo as Point, i as Point));
                }
            }
            gens
        }
        2 => {
            let len = 2 + rng.below(n as u64 - 1) as usize;
            vec![perm((0..n as Point).map(|p| if (p as usize) < len { (p + 1) % len as Point } else { p }).collect())]
        }
        _ => vec![random_perm(n, rng)],
    };
    Ok(conjugate_all(&gens, &x))
}

fn random_family(n: usize, rng: &mut SplitMix64) -> Vec<Vec<Point>> {
    let count = 1 + rng.below(3) as usize;
    (0..count)
        .map(|_| random_subset(n, 1 + rng.below(n as u64 - 1) as usize, rng))
        .collect()
}

fn image_family(g: &Permutation, fam: &[Vec<Point>]) -> Vec<Vec<Point>> {
    fam.iter().map(|s| s.iter().map(|&x| g.image(x)).collect()).collect()
}

/// Number of problem kinds produced by [`mixed_problem`].
pub const MIXED_KINDS: usize = 10;

/// One small problem of kind `kind % MIXED_KINDS`: set, list-of-sets and
/// set-of-sets stabilisers and transporters, centraliser, conjugacy,
/// group intersection and coset intersection. Transporters are solvable
/// about half the time.
pub fn mixed_problem(kind: usize, n: usize, rng: &mut SplitMix64) -> Result<Vec<Constraint>> {
    if n < 2 {
        return Err(Error::InvalidArgument("mixed problems need degree at least 2".into()));
    }
    let g = random_perm(n, rng);
    let solvable = rng.below(2) == 0;
    let other = |rng: &mut SplitMix64| if solvable { g.clone() } else { random_perm(n, rng) };
    Ok(match kind % MIXED_KINDS {
        0 => vec![Constraint::set_stab(n, &random_subset(n, rng.below(n as u64 + 1) as usize, rng))?],
        1 => {
            let from = random_subset(n, 1 + rng.below(n as u64 - 1) as usize, rng);
            let h = other(rng);
            let to: Vec<Point> = from.iter().map(|&x| h.image(x)).collect();
            vec![Constraint::set_transport(n, &from, &to)?]
        }
        2 => vec![Constraint::list_of_sets_stab(n, &random_family(n, rng))?],
        3 => {
            let from = random_family(n, rng);
            let h = other(rng);
            let mut to = image_family(&h, &from);
            if !solvable && rng.below(2) == 0 {
                to.reverse();
            }
            vec![Constraint::list_of_sets_transport(n, &from, &to)?]
        }
        4 => vec![Constraint::set_of_sets_stab(n, &random_family(n, rng))?],
        5 => {
            let from = random_family(n, rng);
            let to = if solvable { image_family(&g, &from) } else { random_family(n, rng) };
            vec![Constraint::set_of_sets_transport(n, &from, &to)?]
        }
        6 => vec![Constraint::Centralizer(random_group(n, rng)?.swap_remove(0))],
        7 => {
            let x = random_group(n, rng)?.swap_remove(0);
            let h = other(rng);
            let y = if solvable { x.conjugate_by(&h) } else { random_perm(n, rng) };
            vec![Constraint::conjugacy(x, y)?]
        }
        8 => vec![
            Constraint::group(random_group(n, rng)?, n)?,
            Constraint::group(random_group(n, rng)?, n)?,
        ],
        _ => {
            let a = random_group(n, rng)?;
            let b = random_group(n, rng)?;
            let ra = random_perm(n, rng);
            let rb = if solvable {
                // ra lies in both cosets
                let c = StabChain::build(&b, n)?;
                c.random_element(&mut |m| rng.below(m)).compose(&ra)?
            } else {
                random_perm(n, rng)
            };
            vec![Constraint::coset(a, ra, n)?, Constraint::coset(b, rb, n)?]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn order(gens: &[Permutation], n: usize) -> BigUint {
        StabChain::build(gens, n).unwrap().order()
    }

    #[test]
    fn grid_orders() {
        assert_eq!(order(&gen_grid_group(3).unwrap(), 9), BigUint::from(36u32));
        assert_eq!(order(&gen_grid_group(2).unwrap(), 4), BigUint::from(4u32));
        assert!(gen_grid_group(1).is_err());
        // generators of the 4x4 grid group permute the rows and the columns
        let rows: Vec<Vec<Point>> = (0..4).map(|r| (0..4).map(|c| r * 4 + c).collect()).collect();
        let cols: Vec<Vec<Point>> = (0..4).map(|c| (0..4).map(|r| r * 4 + c).collect()).collect();
        let rs = Constraint::set_of_sets_stab(16, &rows).unwrap();
        let cs = Constraint::set_of_sets_stab(16, &cols).unwrap();
        for g in gen_grid_group(4).unwrap() {
            assert!(rs.membership(&g) && cs.membership(&g));
        }
    }

    #[test]
    fn wreath_orders() {
        assert_eq!(order(&gen_wreath(2, 2).unwrap(), 4), BigUint::from(8u32));
        assert_eq!(order(&gen_wreath(3, 1).unwrap(), 3), BigUint::from(6u32));
        assert_eq!(order(&gen_wreath(2, 3).unwrap(), 6), BigUint::from(48u32));
    }

    #[test]
    fn subdirect_is_proper_and_subdirect() {
        let mut rng = SplitMix64::new(5);
        let s = gen_subdirect(2, 3, &mut rng).unwrap();
        let h = StabChain::build(&s.gens, 6).unwrap();
        assert!(h.order() < s.ambient.order());
        for b in 0..2 {
            let proj: Vec<Permutation> = s.gens.iter().map(|g| restrict(g, b, 3)).collect();
            let pc = StabChain::build(&proj, 3).unwrap();
            assert_eq!(pc.order_u64(), Some(s.factor_orders[b]));
        }
        assert!(gen_subdirect(1, 3, &mut rng).is_err());
    }

    #[test]
    fn partition_problem_shape() {
        let mut rng = SplitMix64::new(1);
        let cs = grid_partition_problem(4, &mut rng).unwrap();
        assert_eq!(cs.len(), 3);
        if let Constraint::GroupByGens { chain, .. } = &cs[2] {
            // S8 wr S2
            assert_eq!(chain.order(), BigUint::from(40320u64 * 40320 * 2));
        } else {
            panic!("expected a group");
        }
        assert!(grid_partition_problem(3, &mut rng).is_err());
    }
}
