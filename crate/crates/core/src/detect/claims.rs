//! Instance checks of the structural properties of Y vertices that the
//! charge bounds rely on. A failure means the classification or the
//! detection code is wrong, since the properties hold on every instance.

use serde::Serialize;

use crate::detect::classify::{special_sets, ClassificationReport, Context};
use crate::detect::relations::{contiguous_elements, contiguous_vertices, five_adjacent, four_adjacent};
use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vertex: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub name: &'static str,
    /// Elements the property was checked on.
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ClaimCheck {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub context: Context,
    pub checks: Vec<ClaimCheck>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ClaimCheck::passed)
    }
}

struct Check {
    check: ClaimCheck,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { check: ClaimCheck { name, checked: 0, counterexamples: Vec::new() } }
    }

    fn record(&mut self, vertex: usize, ok: bool, detail: impl FnOnce() -> String) {
        self.check.checked += 1;
        if !ok {
            self.check.counterexamples.push(Counterexample { vertex, detail: detail() });
        }
    }
}

pub fn verify_structural_claims(g: &EmbeddedGraph, report: &ClassificationReport) -> Result<ClaimReport> {
    if !report.is_exact() {
        return Err(Error::RequiresExactClassification);
    }
    let checks = match report.context {
        Context::TriangleFree => triangle_free_claims(g, report)?,
        Context::Planar => vec![planar_high_degree(g, report)],
        Context::Girth5 => {
            return Err(Error::WrongContext("no structural claims for the girth-5 classes".into()))
        }
    };
    Ok(ClaimReport { context: report.context, checks })
}

fn planar_high_degree(g: &EmbeddedGraph, report: &ClassificationReport) -> ClaimCheck {
    let mut c = Check::new("high_degree_y5_neighbours");
    for v in (0..g.n()).filter(|&v| g.degree(v) >= 7) {
        let y5 = g.neighbors(v).iter().filter(|&&u| report.in_y(u, 5)).count();
        c.record(v, y5 <= g.degree(v) / 2, || format!("{y5} neighbours in Y_5"));
    }
    c.check
}

fn y3_around(g: &EmbeddedGraph, report: &ClassificationReport, v: usize) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = contiguous_vertices(g, v)?;
    for &u in g.neighbors(v) {
        if five_adjacent(g, v, u)? {
            out.push(u);
        }
    }
    out.retain(|&u| report.in_y(u, 3));
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn triangle_free_claims(g: &EmbeddedGraph, report: &ClassificationReport) -> Result<Vec<ClaimCheck>> {
    let faces = g.faces()?;
    let special = special_sets(g, report)?;
    let y = |v: usize, d: usize| report.in_y(v, d);

    let mut heavy = Check::new("y3_heavy_contiguous");
    let mut y5 = Check::new("y5_contiguous_y3");
    let mut y53 = Check::new("y3_at_most_one_y53");
    let mut y6 = Check::new("y6_y3_neighbourhood");
    let mut high = Check::new("high_degree_y3_neighbourhood");

    for v in 0..g.n() {
        let d = g.degree(v);
        if y(v, 3) {
            let els = contiguous_elements(g, v)?;
            let count = els.iter().filter(|e| e.degree() >= 5).count();
            let mut ok = count >= 2;
            if count == 2 {
                let mut five = 0;
                for &u in g.neighbors(v) {
                    if g.degree(u) >= 5 && five_adjacent(g, v, u)? {
                        five += 1;
                    }
                }
                let at = g.faces_at(v)?;
                let big = at.iter().any(|&f| faces.get(f).degree >= 5);
                let square = at.iter().any(|&f| faces.get(f).degree == 4);
                ok = five >= 2 && big && square;
            }
            heavy.record(v, ok, || format!("{count} heavy contiguous elements"));

            let mut n53 = 0;
            for &u in g.neighbors(v) {
                if special.in_y53(u) && four_adjacent(g, v, u)? {
                    n53 += 1;
                }
            }
            y53.record(v, n53 <= 1, || format!("4-adjacent to {n53} members of Y_5,3"));
        }
        if y(v, 5) {
            let cont: Vec<usize> = contiguous_vertices(g, v)?.into_iter().filter(|&u| y(u, 3)).collect();
            let mut ok = cont.len() <= 3;
            if cont.len() == 3 {
                let rot = g.rotation(v);
                let pos: Option<Vec<usize>> =
                    cont.iter().map(|u| rot.iter().position(|x| x == u)).collect();
                let all_square = g.faces_at(v)?.iter().all(|&f| faces.get(f).degree == 4);
                ok = all_square && pos.is_some_and(|p| !three_consecutive(&p, rot.len()));
            }
            y5.record(v, ok, || format!("contiguous Y_3 vertices {cont:?}"));
        }
        if y(v, 6) {
            let around = y3_around(g, report, v)?;
            let mut ok = around.len() <= 6;
            if around.len() == 6 {
                let mut five = 0;
                for &u in &around {
                    if five_adjacent(g, v, u)? {
                        five += 1;
                    }
                }
                ok = five >= 2;
            }
            y6.record(v, ok, || format!("Y_3 vertices around: {around:?}"));
        }
        if !report.is_x(v) && d >= 7 {
            let around = y3_around(g, report, v)?;
            high.record(v, around.len() <= d, || format!("{} Y_3 vertices around", around.len()));
        }
    }

    let mut face_rule = Check::new("face_y3_count");
    for f in faces.all() {
        let mut on: Vec<usize> = f.boundary.iter().copied().filter(|&u| y(u, 3)).collect();
        on.sort_unstable();
        on.dedup();
        face_rule.record(f.id, on.len() <= f.degree / 2, || format!("face has {} Y_3 vertices", on.len()));
    }
    Ok(vec![heavy.check, y5.check, y53.check, y6.check, high.check, face_rule.check])
}

/// Whether three rotation positions form a run of consecutive neighbours.
fn three_consecutive(pos: &[usize], d: usize) -> bool {
    (0..d).any(|s| (0..3).all(|i| pos.contains(&((s + i) % d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::classify::{classify_planar, classify_triangle_free, ClassifyOptions, Mode};
    use crate::graph::generate::{generate, FamilySpec};

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn vacuous_passes() {
        let cube = fam("cube");
        let r = classify_triangle_free(&cube, ClassifyOptions::new(Mode::Exact)).unwrap();
        let c = verify_structural_claims(&cube, &r).unwrap();
        assert!(c.passed());
        assert_eq!(c.checks.len(), 6);
        let ico = fam("icosahedron");
        let r = classify_planar(&ico, ClassifyOptions::new(Mode::Exact)).unwrap();
        let c = verify_structural_claims(&ico, &r).unwrap();
        assert!(c.passed() && c.checks[0].checked == 0);
    }

    #[test]
    fn rules_only_is_rejected() {
        let cube = fam("cube");
        let r = classify_triangle_free(&cube, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        assert!(matches!(verify_structural_claims(&cube, &r), Err(Error::RequiresExactClassification)));
    }

    #[test]
    fn consecutive_runs() {
        assert!(three_consecutive(&[4, 0, 1], 5));
        assert!(!three_consecutive(&[0, 1, 3], 5));
    }
}
