//! JSON problem and result formats. Points are 1-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::digraph::LabelledDigraph;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};
use crate::refiner::Constraint;
use crate::search::{BsgsResult, CosetResult, Mode, SearchStats};

/// A permutation as cycle text `"(1,2)(3,4)"` or as a 1-based image list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermJson {
    Cycles(String),
    Images(Vec<u32>),
}

impl PermJson {
    pub fn to_perm(&self, n: usize) -> Result<Permutation> {
        match self {
            PermJson::Cycles(s) => Permutation::parse_cycles(s, n),
            PermJson::Images(v) => {
                if v.len() != n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                let im = v
                    .iter()
                    .map(|&x| {
                        if x == 0 || x as usize > n {
                            Err(Error::PointOutOfRange {
                                point: x as usize,
                                degree: n,
                            })
                        } else {
                            Ok(x - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(im)
            }
        }
    }

    pub fn from_perm(p: &Permutation) -> PermJson {
        PermJson::Cycles(p.format_cycles())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConstraintJson {
    Group { gens: Vec<PermJson> },
    Coset { gens: Vec<PermJson>, rep: PermJson },
    SetStab { set: Vec<u32> },
    SetTransport { from: Vec<u32>, to: Vec<u32> },
    ListOfSetsStab { sets: Vec<Vec<u32>> },
    ListOfSetsTransport { from: Vec<Vec<u32>>, to: Vec<Vec<u32>> },
    SetOfSetsStab { sets: Vec<Vec<u32>> },
    SetOfSetsTransport { from: Vec<Vec<u32>>, to: Vec<Vec<u32>> },
    Centralizer { perm: PermJson },
    Conjugacy { from: PermJson, to: PermJson },
    DigraphAuto { digraph: Value },
    DigraphIso { from: Value, to: Value },
}

fn points(n: usize, xs: &[u32]) -> Result<Vec<Point>> {
    xs.iter()
        .map(|&x| {
            if x == 0 || x as usize > n {
                Err(Error::PointOutOfRange {
                    point: x as usize,
                    degree: n,
                })
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn families(n: usize, xs: &[Vec<u32>]) -> Result<Vec<Vec<Point>>> {
    xs.iter().map(|s| points(n, s)).collect()
}

fn one_based(xs: &[Point]) -> Vec<u32> {
    xs.iter().map(|&x| x + 1).collect()
}

fn one_based_all(xs: &[Vec<Point>]) -> Vec<Vec<u32>> {
    xs.iter().map(|s| one_based(s)).collect()
}

fn perms(n: usize, xs: &[PermJson]) -> Result<Vec<Permutation>> {
    xs.iter().map(|p| p.to_perm(n)).collect()
}

fn digraph(n: usize, v: &Value) -> Result<LabelledDigraph> {
    let d = LabelledDigraph::from_json(v)?;
    if d.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: d.degree(),
        });
    }
    Ok(d)
}

impl ConstraintJson {
    pub fn to_constraint(&self, n: usize) -> Result<Constraint> {
        use ConstraintJson as J;
        match self {
            J::Group { gens } => Constraint::group(perms(n, gens)?, n),
            J::Coset { gens, rep } => Constraint::coset(perms(n, gens)?, rep.to_perm(n)?, n),
            J::SetStab { set } => Constraint::set_stab(n, &points(n, set)?),
            J::SetTransport { from, to } => Constraint::set_transport(n, &points(n, from)?, &points(n, to)?),
            J::ListOfSetsStab { sets } => Constraint::list_of_sets_stab(n, &families(n, sets)?),
            J::ListOfSetsTransport { from, to } => {
                Constraint::list_of_sets_transport(n, &families(n, from)?, &families(n, to)?)
            }
            J::SetOfSetsStab { sets } => Constraint::set_of_sets_stab(n, &families(n, sets)?),
            J::SetOfSetsTransport { from, to } => {
                Constraint::set_of_sets_transport(n, &families(n, from)?, &families(n, to)?)
            }
            J::Centralizer { perm } => Ok(Constraint::Centralizer(perm.to_perm(n)?)),
            J::Conjugacy { from, to } => Constraint::conjugacy(from.to_perm(n)?, to.to_perm(n)?),
            J::DigraphAuto { digraph: d } => Ok(Constraint::DigraphAuto(Arc::new(digraph(n, d)?))),
            J::DigraphIso { from, to } => Constraint::digraph_iso(digraph(n, from)?, digraph(n, to)?),
        }
    }

    pub fn from_constraint(c: &Constraint) -> ConstraintJson {
        use ConstraintJson as J;
        let ps = |v: &[Permutation]| v.iter().map(PermJson::from_perm).collect();
        match c {
            Constraint::GroupByGens { gens, .. } => J::Group { gens: ps(gens) },
            Constraint::RightCoset { gens, rep, .. } => J::Coset {
                gens: ps(gens),
                rep: PermJson::from_perm(rep),
            },
            Constraint::SetStab { set, .. } => J::SetStab { set: one_based(set) },
            Constraint::SetTransport { from, to, .. } => J::SetTransport {
                from: one_based(from),
                to: one_based(to),
            },
            Constraint::ListOfSetsStab { sets, .. } => J::ListOfSetsStab {
                sets: one_based_all(sets),
            },
            Constraint::ListOfSetsTransport { from, to, .. } => J::ListOfSetsTransport {
                from: one_based_all(from),
                to: one_based_all(to),
            },
            Constraint::SetOfSetsStab { sets, .. } => J::SetOfSetsStab {
                sets: one_based_all(sets),
            },
            Constraint::SetOfSetsTransport { from, to, .. } => J::SetOfSetsTransport {
                from: one_based_all(from),
                to: one_based_all(to),
            },
            Constraint::Centralizer(g) => J::Centralizer {
                perm: PermJson::from_perm(g),
            },
            Constraint::Conjugacy { from, to } => J::Conjugacy {
                from: PermJson::from_perm(from),
                to: PermJson::from_perm(to),
            },
            Constraint::DigraphAuto(d) => J::DigraphAuto { digraph: d.to_json() },
            Constraint::DigraphIso(a, b) => J::DigraphIso {
                from: a.to_json(),
                to: b.to_json(),
            },
        }
    }
}

/// A problem file: `{"degree": n, "constraints": [...], "mode": "strong", "seed": 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub degree: usize,
    pub constraints: Vec<ConstraintJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemSpec {
    pub fn new(degree: usize, constraints: &[Constraint]) -> ProblemSpec {
        ProblemSpec {
            degree,
            constraints: constraints.iter().map(ConstraintJson::from_constraint).collect(),
            mode: None,
            seed: None,
        }
    }

    pub fn from_json(text: &str) -> Result<ProblemSpec> {
        let p: ProblemSpec = serde_json::from_str(text)?;
        if p.degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        Ok(p)
    }

    pub fn constraints(&self) -> Result<Vec<Constraint>> {
        self.constraints.iter().map(|c| c.to_constraint(self.degree)).collect()
    }
}

fn cycle_list(ps: &[Permutation]) -> Vec<String> {
    ps.iter().map(|p| p.format_cycles()).collect()
}

pub fn elements_json(elements: &[Permutation], stats: &SearchStats) -> Value {
    json!({"elements": cycle_list(elements), "nodes": stats.nodes})
}

pub fn bsgs_json(b: &BsgsResult, stats: &SearchStats) -> Value {
    json!({
        "gens": cycle_list(&b.strong_gens),
        "order": b.order.to_string(),
        "base": one_based(&b.base_points),
        "nodes": stats.nodes,
    })
}

pub fn coset_json(c: &Option<CosetResult>, stats: &SearchStats) -> Value {
    match c {
        None => json!({"empty": true, "nodes": stats.nodes}),
        Some(c) => {
            let mut v = bsgs_json(&c.group, stats);
            v["rep"] = json!(c.rep.format_cycles());
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"degree": 6, "constraints": [
            {"type": "group", "gens": ["(1,2)(3,4)(5,6)", [1,4,3,6,5,2]]},
            {"type": "set_stab", "set": [1, 2]},
            {"type": "centralizer", "perm": "(1 2)(3 6 5)"},
            {"type": "set_of_sets_transport", "from": [[1],[1,2,3]], "to": [[5],[2,3,4]]},
            {"type": "digraph_auto", "digraph": {"n": 6, "arcs": [[1,2],[2,1,"x"]]}}
        ], "mode": "leon"}"#;
        let p = ProblemSpec::from_json(text).unwrap();
        assert_eq!(p.mode, Some(Mode::Leon));
        let cs = p.constraints().unwrap();
        assert_eq!(cs.len(), 5);
        let back = ProblemSpec::new(6, &cs);
        let cs2 = back.constraints().unwrap();
        let g = Permutation::parse_cycles("(1,2)", 6).unwrap();
        for (a, b) in cs.iter().zip(&cs2) {
            assert_eq!(a.membership(&g), b.membership(&g));
        }
    }

    #[test]
    fn rejects_bad_points() {
        let text = r#"{"degree": 3, "constraints": [{"type": "set_stab", "set": [0]}]}"#;
        assert!(ProblemSpec::from_json(text).unwrap().constraints().is_err());
        let text = r#"{"degree": 3, "constraints": [{"type": "centralizer", "perm": [1,1,2]}]}"#;
        assert!(ProblemSpec::from_json(text).unwrap().constraints().is_err());
    }
}
