//! The global strategy of each graph class: contain the fire from X starts
//! with the strategy named by the classification evidence, and do nothing
//! from Y starts.

use crate::detect::classify::{ClassificationReport, Evidence, LOW_NEIGHBOUR_CHASE, NEIGHBOURS_PROTECTED};
use crate::detect::configs::ConfigId;
use crate::error::{Error, Result};
use crate::fire::Schedule;
use crate::graph::EmbeddedGraph;
use crate::strategy::{ConfigStrategy, DegreeLocal, LatticeStrategy, ProtectionPlan, Strategy};

/// Plan from `start` in the class context of `report`.
pub fn theorem_dispatch(g: &EmbeddedGraph, report: &ClassificationReport, start: usize) -> Result<ProtectionPlan> {
    g.check_vertex(start)?;
    if report.n != g.n() {
        return Err(Error::BadParameter("classification belongs to another graph".into()));
    }
    let schedule = report.context.schedule();
    let vc = &report.vertices[start];
    if !vc.label.x {
        return Ok(ProtectionPlan::null(start, schedule));
    }
    let mut plan = match &vc.evidence {
        Evidence::Rule { rule, .. } if rule == NEIGHBOURS_PROTECTED => DegreeLocal::default().plan(g, start, schedule)?,
        Evidence::Rule { rule, witness } if rule == LOW_NEIGHBOUR_CHASE => {
            DegreeLocal { sacrifice: witness.first().copied() }.plan(g, start, schedule)?
        }
        Evidence::Config { matched } => match matched.config {
            ConfigId::HexNeighbourhood => LatticeStrategy::hex().plan(g, start, schedule)?,
            ConfigId::RectNeighbourhood => LatticeStrategy::rect().plan(g, start, schedule)?,
            _ => ConfigStrategy::new(Some(matched.config)).plan_for(g, matched, schedule)?,
        },
        Evidence::Certificate { burned, protections } => ProtectionPlan {
            strategy: "search_certificate".into(),
            start,
            schedule,
            rounds: protections.clone(),
            burn_bound: Some(*burned),
        },
        other => return Err(Error::BadParameter(format!("X label with evidence {other:?}"))),
    };
    plan.burn_bound = plan.burn_bound.or(report.contract(start));
    Ok(plan)
}

/// [`theorem_dispatch`] as a [`Strategy`].
#[derive(Clone, Debug)]
pub struct Dispatcher<'a> {
    pub report: &'a ClassificationReport,
}

impl Strategy for Dispatcher<'_> {
    fn name(&self) -> String {
        format!("dispatch:{}", self.report.context)
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        if schedule != self.report.context.schedule() {
            return Err(Error::NotApplicable(format!(
                "{} dispatch runs with schedule {}",
                self.report.context,
                self.report.context.schedule()
            )));
        }
        theorem_dispatch(g, self.report, start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::classify::{classify_girth5, classify_planar, ClassifyOptions, Mode};
    use crate::graph::generate::{generate, FamilySpec};

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn dodecahedron_saves_18() {
        let g = fam("dodecahedron");
        let r = classify_girth5(&g).unwrap();
        for v in 0..20 {
            let t = theorem_dispatch(&g, &r, v).unwrap().verify(&g).unwrap();
            assert_eq!(t.saved, 18);
        }
    }

    #[test]
    fn y_start_does_nothing() {
        // K_{2,5} has girth 4, so use a planar graph with a degree-7 vertex:
        // the wheel-like bipyramid over a 7-cycle.
        let mut faces = Vec::new();
        for i in 0..7 {
            faces.push(vec![7, i, (i + 1) % 7]);
            faces.push(vec![8, (i + 1) % 7, i]);
        }
        let g = EmbeddedGraph::from_faces(9, &faces).unwrap();
        let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
        assert!(!r.is_x(7));
        let p = theorem_dispatch(&g, &r, 7).unwrap();
        assert!(p.rounds.is_empty());
        assert_eq!(p.simulate(&g).unwrap().saved, 0);
    }
}
