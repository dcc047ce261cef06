//! Seeded property checks for approximators, fixed points, splitters,
//! equitable refinement, squashing and refiners.
//!
//! Up to degree 7 isomorphism sets are enumerated; at degree 8 the checks are
//! made element by element on sampled permutations.

use std::sync::Arc;

use crate::approx::{ApproxKind, Approximator, CosetApprox};
use crate::bench::generators::{mixed_problem, random_perm, MIXED_KINDS};
use crate::digraph::{DigraphStack, LabelledDigraph};
use crate::equitable::{equitable, is_equitable};
use crate::error::Result;
use crate::label::LabelTerm;
use crate::oracle::{brute_iso_stacks, digraph_iso};
use crate::perm::Permutation;
use crate::refiner::{random_stack, verify_refiner_law, LawReport, RefinerState};
use crate::rng::SplitMix64;
use crate::search::{split, Mode, SearchConfig};

/// Largest degree at which Iso sets are enumerated.
pub const ENUM_DEGREE: usize = 7;

/// Bound on draws per required checked trial.
const MAX_DRAWS: usize = 50;

/// Degrees used by the suites, cycled by trial.
pub fn trial_degree(trial: usize) -> usize {
    5 + trial % 4
}

/// `T` is `S^g` for random `g` two times in three, otherwise a fresh random stack.
fn partner(s: &DigraphStack, rng: &mut SplitMix64) -> (DigraphStack, Option<Permutation>) {
    let n = s.degree();
    if rng.below(3) < 2 {
        let g = random_perm(n, rng);
        (s.apply_unchecked(&g), Some(g))
    } else {
        (random_stack(n, rng), None)
    }
}

fn stack_iso(g: &Permutation, s: &DigraphStack, t: &DigraphStack) -> bool {
    s.len() == t.len() && s.entries().iter().zip(t.entries()).all(|(a, b)| digraph_iso(g, a, b))
}

fn iso_set(s: &DigraphStack, t: &DigraphStack) -> Result<Option<Vec<Permutation>>> {
    if s.degree() <= ENUM_DEGREE {
        Ok(Some(brute_iso_stacks(s, t)?))
    } else {
        Ok(None)
    }
}

fn random_member(a: &CosetApprox, n: usize, rng: &mut SplitMix64) -> Option<Permutation> {
    match a {
        CosetApprox::Empty => None,
        CosetApprox::Coset { group, rep } => {
            let x = group.to_chain(n).random_element(&mut |m| rng.below(m));
            Some(x.compose_unchecked(rep))
        }
    }
}

fn new_report(trials: usize) -> LawReport {
    LawReport {
        trials,
        ..LawReport::default()
    }
}

/// Containment, length and right-coset laws for one approximator kind.
pub fn check_approximator(kind: ApproxKind, trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut ap = Approximator::new();
    let mut report = new_report(trials);
    for trial in 0..trials {
        let n = trial_degree(trial);
        let s = random_stack(n, &mut rng);
        let (t, g) = partner(&s, &mut rng);
        let a = ap.approx(kind, &s, &t)?;
        match iso_set(&s, &t)? {
            Some(iso) => {
                if let Some(x) = iso.iter().find(|x| !a.contains(x)) {
                    report.violations.push(format!("trial {trial}: {x} in Iso(S,T) but not in Approx(S,T)"));
                }
            }
            None => {
                if let Some(g) = &g {
                    if !a.contains(g) {
                        report.violations.push(format!("trial {trial}: {g} maps S to T but is not in Approx(S,T)"));
                    }
                }
            }
        }
        let mut longer = t.clone();
        longer.push(LabelledDigraph::uniform(n, LabelTerm::int(7)))?;
        if !ap.approx(kind, &s, &longer)?.is_empty() {
            report.violations.push(format!("trial {trial}: stacks of different lengths approximated as non-empty"));
        }
        if let (Some(group), Some(_)) = (a.group(), a.rep()) {
            let aut = ap.approx(kind, &s, &s)?;
            match aut.group() {
                Some(h) if h.same_group(group, n) && aut.contains(&Permutation::identity(n)) => {}
                _ => report
                    .violations
                    .push(format!("trial {trial}: Approx(S,T) is not a right coset of Approx(S)")),
            }
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Fixed points are fixed by `Aut(S)` and move with `S`.
pub fn check_fixed_points(kind: ApproxKind, trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut ap = Approximator::new();
    let mut report = new_report(trials);
    for trial in 0..trials {
        let n = trial_degree(trial);
        let s = random_stack(n, &mut rng);
        let fixed = ap.fixed_points(kind, &s)?;
        let auts = match iso_set(&s, &s)? {
            Some(all) => all,
            None => {
                // the exact approximator gives Aut(S) at degree 8
                let full = ap.approx(ApproxKind::Full, &s, &s)?;
                (0..8).filter_map(|_| random_member(&full, n, &mut rng)).collect()
            }
        };
        for a in &auts {
            if let Some(x) = fixed.iter().find(|&&x| a.image(x) != x) {
                report.violations.push(format!("trial {trial}: {} is moved by automorphism {a}", x + 1));
                break;
            }
        }
        let g = random_perm(n, &mut rng);
        let moved: Vec<_> = fixed.iter().map(|&x| g.image(x)).collect();
        if ap.fixed_points(kind, &s.apply_unchecked(&g))? != moved {
            report.violations.push(format!("trial {trial}: Fixed(S)^g != Fixed(S^g) for g = {g}"));
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Union, shrinking and left-invariance laws of the fixed-point splitter.
/// Draws pairs until `trials` of them have an approximation with at least two elements.
pub fn check_splitter(kind: ApproxKind, trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut ap = Approximator::new();
    let mut report = new_report(trials);
    for trial in 0..trials * MAX_DRAWS {
        if report.checked == trials {
            break;
        }
        let n = trial_degree(trial);
        let s = random_stack(n, &mut rng);
        let (t, g) = partner(&s, &mut rng);
        let a = ap.approx(kind, &s, &t)?;
        if a.is_empty() || a.cardinality() < 2u32.into() {
            continue;
        }
        report.checked += 1;
        let sp = split(&mut ap, kind, &s, &t)?;
        let s1 = s.append(&sp.left)?;
        let branches: Vec<DigraphStack> =
            (0..sp.targets.len()).map(|i| t.append(&sp.right(i))).collect::<Result<_>>()?;
        match iso_set(&s, &t)? {
            Some(iso) => {
                let mut union = Vec::new();
                for b in &branches {
                    union.extend(brute_iso_stacks(&s1, b)?);
                }
                union.sort();
                let mut iso = iso;
                iso.sort();
                if union != iso {
                    report.violations.push(format!("trial {trial}: branches do not partition Iso(S,T)"));
                }
            }
            None => {
                let mut samples: Vec<Permutation> = (0..4).filter_map(|_| random_member(&a, n, &mut rng)).collect();
                samples.extend(g);
                for x in samples {
                    let whole = stack_iso(&x, &s, &t);
                    let parts = branches.iter().any(|b| stack_iso(&x, &s1, b));
                    if whole != parts {
                        report.violations.push(format!("trial {trial}: {x} is split inconsistently"));
                    }
                }
            }
        }
        for b in &branches {
            if ap.approx(kind, &s1, b)?.cardinality() >= a.cardinality() {
                report.violations.push(format!("trial {trial}: a branch does not shrink the approximation"));
                break;
            }
        }
        let u = s.apply_unchecked(&random_perm(n, &mut rng));
        let au = ap.approx(kind, &s, &u)?;
        if !au.is_empty() && au.cardinality() >= 2u32.into() && split(&mut ap, kind, &s, &u)?.left != sp.left {
            report.violations.push(format!("trial {trial}: the left split stack depends on the right stack"));
        }
    }
    Ok(report)
}

/// Equitable refinement is equitable, refines the vertex labels and commutes with the action.
pub fn check_equitable(trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut report = new_report(trials);
    for trial in 0..trials {
        let n = trial_degree(trial);
        let s = random_stack(n, &mut rng);
        let d = s.squash();
        let labels = equitable(&d).vertex_labels(n);
        if !is_equitable(&d, &labels) {
            report.violations.push(format!("trial {trial}: labelling is not equitable"));
        }
        let vl = d.vertex_labels();
        let coarser = (0..n).any(|u| (0..n).any(|v| labels[u] == labels[v] && vl[u] != vl[v]));
        if coarser {
            report.violations.push(format!("trial {trial}: labelling merges vertex labels"));
        }
        let g = random_perm(n, &mut rng);
        let moved = equitable(&d.apply(&g)?).vertex_labels(n);
        if (0..n).any(|v| moved[g.image(v as u32) as usize] != labels[v]) {
            report.violations.push(format!("trial {trial}: labelling is not equivariant under {g}"));
        }
        report.checked += 1;
    }
    Ok(report)
}

/// `Iso(S,T) = Iso(Squash(S), Squash(T))`.
pub fn check_squash(trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut report = new_report(trials);
    for trial in 0..trials {
        let n = trial_degree(trial);
        let s = random_stack(n, &mut rng);
        let (t, g) = partner(&s, &mut rng);
        let (qs, qt) = (s.squash(), t.squash());
        if n <= ENUM_DEGREE {
            let a = brute_iso_stacks(&s, &t)?;
            let qs1 = DigraphStack::from_digraphs(n, vec![qs])?;
            let qt1 = DigraphStack::from_digraphs(n, vec![qt])?;
            if a != brute_iso_stacks(&qs1, &qt1)? {
                report.violations.push(format!("trial {trial}: squashing changed Iso(S,T)"));
            }
        } else {
            let mut samples = vec![random_perm(n, &mut rng)];
            samples.extend(g);
            for x in samples {
                if stack_iso(&x, &s, &t) != digraph_iso(&x, &qs, &qt) {
                    report.violations.push(format!("trial {trial}: squashing disagrees on {x}"));
                }
            }
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Refiner laws over random mixed constraints, cycling through the search modes.
/// Each trial draws a fresh constraint and checks `f_L(S)^g = f_R(S^g)` for a
/// member `g`, and `f_L(S) = f_R(S)` when the identity is a member. Draws
/// continue until `trials` constraints with a member have been checked.
pub fn check_refiners(trials: usize, seed: u64) -> Result<LawReport> {
    let mut rng = SplitMix64::new(seed);
    let mut report = new_report(trials);
    for trial in 0..trials * MAX_DRAWS {
        if report.checked == trials {
            break;
        }
        let n = trial_degree(trial);
        let kind = rng.below(MIXED_KINDS as u64) as usize;
        let problem = mixed_problem(kind, n, &mut rng)?;
        let c = Arc::new(problem[rng.below(problem.len() as u64) as usize].clone());
        let mode = Mode::ALL[trial % Mode::ALL.len()];
        let cfg = SearchConfig::for_mode(mode);
        let r = verify_refiner_law(
            || RefinerState::new(c.clone(), cfg.digraph_mode),
            cfg.approx_kind,
            cfg.digraph_mode,
            cfg.filter_orbitals,
            1,
            rng.next_u64(),
        )?;
        report.checked += r.checked;
        report
            .violations
            .extend(r.violations.into_iter().map(|v| format!("trial {trial} ({mode}): {v}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_suites_pass() {
        for kind in [ApproxKind::Weak, ApproxKind::Strong, ApproxKind::Full] {
            for r in [
                check_approximator(kind, 12, 1).unwrap(),
                check_fixed_points(kind, 12, 2).unwrap(),
                check_splitter(kind, 12, 3).unwrap(),
            ] {
                assert!(r.passed(), "{kind:?}: {:?}", r.violations);
            }
        }
        assert!(check_equitable(12, 4).unwrap().passed());
        assert!(check_squash(12, 5).unwrap().passed());
        let r = check_refiners(16, 6).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.checked > 0);
    }
}
