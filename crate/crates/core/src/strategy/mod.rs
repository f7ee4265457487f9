//! Firefighter strategies as plan generators.
//!
//! The fire spreads deterministically, so every strategy here is fixed by
//! the start: it produces the full list of protections up front, which is
//! replayed through the engine with [`ScriptedPolicy`].

pub mod config;
pub mod dispatch;
pub mod lattice;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fire::{advance_round, run_simulation, FireState, Schedule, ScriptedPolicy, SimTrace};
use crate::graph::EmbeddedGraph;

pub use config::ConfigStrategy;
pub use dispatch::{theorem_dispatch, Dispatcher};
pub use lattice::LatticeStrategy;

/// Protections per round for one start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProtectionPlan {
    pub strategy: String,
    pub start: usize,
    pub schedule: Schedule,
    pub rounds: Vec<Vec<usize>>,
    /// Most vertices the plan may burn, when it promises anything.
    pub burn_bound: Option<usize>,
}

impl ProtectionPlan {
    pub fn null(start: usize, schedule: Schedule) -> Self {
        ProtectionPlan { strategy: "null".into(), start, schedule, rounds: Vec::new(), burn_bound: None }
    }

    pub fn policy(&self) -> ScriptedPolicy {
        ScriptedPolicy { rounds: self.rounds.clone() }
    }

    pub fn simulate(&self, g: &EmbeddedGraph) -> Result<SimTrace> {
        run_simulation(g, self.start, self.schedule, &mut self.policy())
    }

    /// Simulates and checks the promised bound.
    pub fn verify(&self, g: &EmbeddedGraph) -> Result<SimTrace> {
        let t = self.simulate(g)?;
        match self.burn_bound {
            Some(b) if t.burned_total() > b => Err(Error::NotApplicable(format!(
                "{} burns {} from {}, promised {b}",
                self.strategy,
                t.burned_total(),
                self.start
            ))),
            _ => Ok(t),
        }
    }
}

pub trait Strategy {
    fn name(&self) -> String;

    /// Plan from `start`; `NotApplicable` when the start does not fit the
    /// strategy's pattern.
    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan>;

    fn applicable(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> bool {
        self.plan(g, start, schedule).is_ok()
    }
}

/// Protects nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullStrategy;

impl Strategy for NullStrategy {
    fn name(&self) -> String {
        "null".into()
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        g.check_vertex(start)?;
        Ok(ProtectionPlan::null(start, schedule))
    }
}

/// The strategies that only look at degrees near the start: protect every
/// neighbour, or protect all neighbours but one low-degree `u`, let `u`
/// burn and then protect the rest of its neighbourhood.
#[derive(Clone, Copy, Debug, Default)]
pub struct DegreeLocal {
    /// Neighbour to sacrifice; `None` picks one.
    pub sacrifice: Option<usize>,
}

impl DegreeLocal {
    fn chase(g: &EmbeddedGraph, start: usize, u: usize, schedule: Schedule) -> Result<Option<ProtectionPlan>> {
        let first: Vec<usize> = g.neighbors(start).iter().copied().filter(|&x| x != u).collect();
        if first.len() > schedule.budget(1) {
            return Ok(None);
        }
        let s = FireState::ignite(g, start)?;
        let (s, _) = advance_round(g, &s, &first, schedule.budget(1))?;
        let second = s.threatened(g);
        if second.len() > schedule.budget(2) {
            return Ok(None);
        }
        Ok(Some(ProtectionPlan {
            strategy: "low_neighbour_chase".into(),
            start,
            schedule,
            rounds: vec![first, second],
            burn_bound: Some(2),
        }))
    }
}

impl Strategy for DegreeLocal {
    fn name(&self) -> String {
        "degree_local".into()
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        g.check_vertex(start)?;
        let nbrs = g.neighbors(start);
        if self.sacrifice.is_none() && nbrs.len() <= schedule.budget(1) {
            return Ok(ProtectionPlan {
                strategy: "neighbours_protected".into(),
                start,
                schedule,
                rounds: vec![nbrs.to_vec()],
                burn_bound: Some(1),
            });
        }
        let candidates: Vec<usize> = match self.sacrifice {
            Some(u) if nbrs.contains(&u) => vec![u],
            Some(u) => return Err(Error::NotApplicable(format!("{u} is not a neighbour of {start}"))),
            None => nbrs.to_vec(),
        };
        for u in candidates {
            if let Some(p) = Self::chase(g, start, u, schedule)? {
                return Ok(p);
            }
        }
        Err(Error::NotApplicable(format!("no degree-local plan from {start} with schedule {schedule}")))
    }
}

/// Protects a vertex set one vertex per round, nearest first, cutting off
/// every component of the rest of the graph that the start is not in.
#[derive(Clone, Debug)]
pub struct SeparatorStrategy {
    pub separator: Vec<usize>,
}

impl Strategy for SeparatorStrategy {
    fn name(&self) -> String {
        "separator".into()
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        g.check_vertex(start)?;
        for &s in &self.separator {
            g.check_vertex(s)?;
        }
        if self.separator.is_empty() {
            return Err(Error::NotApplicable("empty separator".into()));
        }
        if self.separator.contains(&start) {
            return Err(Error::NotApplicable("the start lies in the separator".into()));
        }
        if schedule.first == 0 || schedule.subsequent == 0 {
            return Err(Error::NotApplicable("a separator needs one firefighter per round".into()));
        }
        let dist = g.distances_from(start);
        let mut sep = self.separator.clone();
        sep.sort_unstable();
        sep.dedup();
        let distance = sep.iter().map(|&s| dist[s]).min().expect("non-empty");
        if sep.len() > distance {
            return Err(Error::SeparatorTooLarge { size: sep.len(), distance });
        }
        let cut = crate::vset::VertexSet::from_slice(g.n(), &sep);
        let mut seen = cut.clone();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        if seen.len() == g.n() {
            return Err(Error::NotApplicable("the separator leaves the start's side connected to everything".into()));
        }
        sep.sort_by_key(|&s| (dist[s], s));
        Ok(ProtectionPlan {
            strategy: self.name(),
            start,
            schedule,
            rounds: sep.into_iter().map(|s| vec![s]).collect(),
            burn_bound: Some(seen.len() - self.separator.len()),
        })
    }
}
