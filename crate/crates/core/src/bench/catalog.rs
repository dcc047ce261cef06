//! A small library of transitive and primitive groups, by generators.

use crate::perm::{Permutation, Point};

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<Permutation>,
    pub order: u64,
}

fn perm(images: Vec<Point>) -> Permutation {
    Permutation::from_images(images).expect("catalog maps are bijections")
}

fn map(n: usize, f: impl Fn(Point) -> Point) -> Permutation {
    perm((0..n as Point).map(f).collect())
}

fn entry(name: impl Into<String>, degree: usize, gens: Vec<Permutation>, order: u64) -> CatalogGroup {
    CatalogGroup {
        name: name.into(),
        degree,
        gens,
        order,
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn cyclic(n: usize) -> CatalogGroup {
    entry(format!("C{n}"), n, vec![map(n, |x| (x + 1) % n as Point)], n as u64)
}

pub fn dihedral(n: usize) -> CatalogGroup {
    let m = n as Point;
    entry(
        format!("D{n}"),
        n,
        vec![map(n, |x| (x + 1) % m), map(n, |x| (m - x) % m)],
        2 * n as u64,
    )
}

pub fn symmetric(n: usize) -> CatalogGroup {
    let mut gens = vec![Permutation::transposition(n, 0, 1)];
    if n > 2 {
        gens.push(map(n, |x| (x + 1) % n as Point));
    }
    entry(format!("S{n}"), n, gens, factorial(n))
}

pub fn alternating(n: usize) -> CatalogGroup {
    // 3-cycles (1,2,k) generate A_n
    let gens = (2..n as Point)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).expect("valid cycle"))
        .collect();
    entry(format!("A{n}"), n, gens, factorial(n) / 2)
}

fn primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| (1..p - 1).all(|e| (0..e).fold(1u64, |a, _| a * g as u64 % p as u64) != 1))
        .expect("p is prime")
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a as u64 * b as u64 % p as u64 == 1).expect("invertible")
}

/// `AGL(1,p)` for prime `p`, or its subgroup with multipliers `<mult>`.
pub fn affine_prime(p: usize, mult: u32, order: u64, name: &str) -> CatalogGroup {
    let q = p as u32;
    entry(
        name,
        p,
        vec![map(p, |x| (x + 1) % q), map(p, |x| x * mult % q)],
        order,
    )
}

/// `PGL(2,p)`, or `PSL(2,p)` when `special`, on the projective line; `∞` is the last point.
pub fn projective_line(p: u32, special: bool) -> CatalogGroup {
    let n = p as usize + 1;
    let inf = p;
    let g = primitive_root(p);
    let a = if special { g * g % p } else { g };
    let trans = map(n, |x| if x == inf { inf } else { (x + 1) % p });
    let scale = map(n, |x| if x == inf { inf } else { x * a % p });
    let invert = map(n, |x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            (p - inv_mod(x, p)) % p
        }
    });
    let full = (p as u64 + 1) * p as u64 * (p as u64 - 1);
    let (name, order) = if special {
        (format!("PSL(2,{p})"), full / 2)
    } else {
        (format!("PGL(2,{p})"), full)
    };
    entry(name, n, vec![trans, scale, invert], order)
}

/// Multiplication in GF(8) modulo x^3 + x + 1.
fn gf8_mul(a: Point, b: Point) -> Point {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

/// Affine groups on GF(8) = F_2^3: `AGL(1,8)`, `AΓL(1,8)` and `AGL(3,2)`.
pub fn affine_eight(kind: &str) -> CatalogGroup {
    let shift = map(8, |x| x ^ 1);
    let singer = map(8, |x| gf8_mul(x, 0b010));
    let frob = map(8, |x| gf8_mul(x, x));
    // transvection e3 -> e3 + e1
    let transvection = map(8, |x| if x & 0b100 != 0 { x ^ 0b001 } else { x });
    match kind {
        "AGL(1,8)" => entry(kind, 8, vec![shift, singer], 56),
        "AGammaL(1,8)" => entry(kind, 8, vec![shift, singer, frob], 168),
        "AGL(3,2)" => entry(kind, 8, vec![shift, singer, frob, transvection], 1344),
        _ => panic!("unknown affine group {kind}"),
    }
}

/// `GL(3,2)` on the seven non-zero vectors of F_2^3.
pub fn psl32() -> CatalogGroup {
    let on_nonzero = |f: &dyn Fn(Point) -> Point| map(7, |x| f(x + 1) - 1);
    entry(
        "PSL(3,2)",
        7,
        vec![
            on_nonzero(&|x| gf8_mul(x, 0b010)),
            on_nonzero(&|x| if x & 0b100 != 0 { x ^ 0b001 } else { x }),
        ],
        168,
    )
}

/// `S5` or `A5` on the ten 2-subsets of five points.
pub fn on_pairs(alternating_only: bool) -> CatalogGroup {
    let pairs: Vec<(Point, Point)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let index = |a: Point, b: Point| {
        let key = (a.min(b), a.max(b));
        pairs.iter().position(|&p| p == key).expect("pair") as Point
    };
    let lift = |g: &Permutation| {
        perm(pairs.iter().map(|&(a, b)| index(g.image(a), g.image(b))).collect())
    };
    let base = if alternating_only {
        alternating(5)
    } else {
        symmetric(5)
    };
    let name = if alternating_only { "A5 on pairs" } else { "S5 on pairs" };
    entry(name, 10, base.gens.iter().map(lift).collect(), base.order)
}

/// `S3 ≀ S2` in product action on the 3x3 grid.
pub fn product_action_s3_wr_s2() -> CatalogGroup {
    let row = |f: fn(Point) -> Point| map(9, move |x| f(x / 3) * 3 + x % 3);
    entry(
        "S3 wr S2 product",
        9,
        vec![
            row(|r| [1, 0, 2][r as usize]),
            row(|r| (r + 1) % 3),
            map(9, |x| (x % 3) * 3 + x / 3),
        ],
        72,
    )
}

/// Transitive groups of degree `n` used for subdirect products.
pub fn transitive(n: usize) -> Vec<CatalogGroup> {
    let mut out = vec![cyclic(n)];
    if n >= 4 {
        out.push(dihedral(n));
        out.push(alternating(n));
    }
    if n >= 3 {
        out.push(symmetric(n));
    }
    match n {
        5 => out.push(affine_prime(5, 2, 20, "AGL(1,5)")),
        6 => {
            out.push(projective_line(5, true));
            out.push(projective_line(5, false));
        }
        7 => {
            out.push(affine_prime(7, 2, 21, "F21"));
            out.push(affine_prime(7, 3, 42, "AGL(1,7)"));
            out.push(psl32());
        }
        8 => {
            out.push(affine_eight("AGL(1,8)"));
            out.push(affine_eight("AGammaL(1,8)"));
            out.push(projective_line(7, true));
            out.push(projective_line(7, false));
            out.push(affine_eight("AGL(3,2)"));
        }
        _ => {}
    }
    out
}

/// Primitive groups of degree `n` other than `A_n` and `S_n`.
pub fn primitive(n: usize) -> Vec<CatalogGroup> {
    match n {
        5 => vec![cyclic(5), dihedral(5), affine_prime(5, 2, 20, "AGL(1,5)")],
        6 => vec![projective_line(5, true), projective_line(5, false)],
        7 => vec![
            cyclic(7),
            dihedral(7),
            affine_prime(7, 2, 21, "F21"),
            affine_prime(7, 3, 42, "AGL(1,7)"),
            psl32(),
        ],
        8 => vec![
            affine_eight("AGL(1,8)"),
            affine_eight("AGammaL(1,8)"),
            affine_eight("AGL(3,2)"),
            projective_line(7, true),
            projective_line(7, false),
        ],
        9 => vec![product_action_s3_wr_s2()],
        10 => vec![on_pairs(true), on_pairs(false)],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::StabChain;

    #[test]
    fn orders_match_the_catalog() {
        let mut all: Vec<CatalogGroup> = (3..=8).flat_map(transitive).collect();
        all.extend((5..=10).flat_map(primitive));
        for g in all {
            let c = StabChain::build(&g.gens, g.degree).unwrap();
            assert_eq!(c.order_u64(), Some(g.order), "{}", g.name);
            assert_eq!(c.orbits().len(), 1, "{} is transitive", g.name);
        }
    }

    #[test]
    fn primitive_groups_have_no_blocks() {
        for n in 5..=10 {
            for g in primitive(n) {
                let c = StabChain::build(&g.gens, n).unwrap();
                let stab = c.pointwise_stabilizer(&[0]).unwrap();
                // G_0 is maximal iff no block {0, b} system is preserved; check via
                // the minimal-block test: <G_0, g> = G for every g outside G_0.
                for b in 1..n as Point {
                    let t = c.tuple_transporter(&[0], &[b]).unwrap().unwrap();
                    let mut gens = stab.strong_generators().to_vec();
                    gens.push(t);
                    let h = StabChain::build(&gens, n).unwrap();
                    assert_eq!(h.order(), c.order(), "{} has a block containing 1 and {}", g.name, b + 1);
                }
            }
        }
    }
}
