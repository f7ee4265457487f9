//! Round semantics of the firefighter process.
//!
//! The fire ignites at round 0. In every later round the firefighters first
//! protect at most `budget(round)` vertices, then the fire spreads to every
//! unprotected neighbour of a burning vertex.

pub mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::vset::VertexSet;

/// Budget of the first round and of every later round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Schedule {
    pub first: usize,
    pub subsequent: usize,
}

impl Schedule {
    pub const fn constant(k: usize) -> Self {
        Schedule { first: k, subsequent: k }
    }

    pub const fn front_loaded(first: usize, subsequent: usize) -> Self {
        Schedule { first, subsequent }
    }

    /// Budget available in `round` (rounds count from 1).
    pub fn budget(&self, round: usize) -> usize {
        if round <= 1 {
            self.first
        } else {
            self.subsequent
        }
    }
}

impl From<[usize; 2]> for Schedule {
    fn from([first, subsequent]: [usize; 2]) -> Self {
        Schedule { first, subsequent }
    }
}

impl From<Schedule> for [usize; 2] {
    fn from(s: Schedule) -> Self {
        [s.first, s.subsequent]
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.subsequent)
    }
}

impl FromStr for Schedule {
    type Err = Error;

    /// `k` or `first,subsequent`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadParameter(format!("bad schedule '{s}'")))
        };
        match s.split_once(',') {
            Some((a, b)) => Ok(Schedule::front_loaded(num(a)?, num(b)?)),
            None => Ok(Schedule::constant(num(s)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FireState {
    burning: VertexSet,
    protected: VertexSet,
    /// Vertices that ignited in the latest spread; only they can have
    /// untouched neighbours.
    frontier: Vec<usize>,
    burned: usize,
    round: usize,
}

impl FireState {
    pub fn ignite(g: &EmbeddedGraph, start: usize) -> Result<Self> {
        g.check_vertex(start)?;
        Ok(FireState {
            burning: VertexSet::from_slice(g.n(), &[start]),
            protected: VertexSet::new(g.n()),
            frontier: vec![start],
            burned: 1,
            round: 0,
        })
    }

    pub fn burning(&self) -> &VertexSet {
        &self.burning
    }

    pub fn protected(&self) -> &VertexSet {
        &self.protected
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn burned_count(&self) -> usize {
        self.burned
    }

    pub fn is_burning(&self, v: usize) -> bool {
        self.burning.contains(v)
    }

    pub fn is_protected(&self, v: usize) -> bool {
        self.protected.contains(v)
    }

    pub fn is_free(&self, v: usize) -> bool {
        !self.burning.contains(v) && !self.protected.contains(v)
    }

    /// Vertices that ignite in the next spread unless protected first,
    /// in increasing id order.
    pub fn threatened(&self, g: &EmbeddedGraph) -> Vec<usize> {
        let mut seen = VertexSet::new(g.n());
        let mut out = Vec::new();
        for &u in &self.frontier {
            for &w in g.neighbors(u) {
                if self.is_free(w) && seen.insert(w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_contained(&self, g: &EmbeddedGraph) -> bool {
        self.frontier.iter().all(|&u| g.neighbors(u).iter().all(|&w| !self.is_free(w)))
    }
}

/// Applies one round: protections, then spread. Returns the new state and
/// the newly burned vertices in increasing order.
pub fn advance_round(
    g: &EmbeddedGraph,
    state: &FireState,
    protections: &[usize],
    budget: usize,
) -> Result<(FireState, Vec<usize>)> {
    if protections.len() > budget {
        return Err(Error::BudgetExceeded { requested: protections.len(), budget });
    }
    let mut next = state.clone();
    for &p in protections {
        g.check_vertex(p)?;
        if !next.is_free(p) {
            return Err(Error::ProtectBurningVertex(p));
        }
        next.protected.insert(p);
    }
    let fresh = next.threatened(g);
    for &w in &fresh {
        next.burning.insert(w);
    }
    next.burned += fresh.len();
    next.frontier = fresh.clone();
    next.round += 1;
    Ok((next, fresh))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub protect: Vec<usize>,
    pub burned: Vec<usize>,
}

/// Full history of one fire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimTrace {
    pub start: usize,
    pub schedule: Schedule,
    pub rounds: Vec<RoundRecord>,
    pub saved: usize,
}

impl SimTrace {
    pub fn burned_total(&self) -> usize {
        1 + self.rounds.iter().map(|r| r.burned.len()).sum::<usize>()
    }

    pub fn protections(&self) -> Vec<Vec<usize>> {
        self.rounds.iter().map(|r| r.protect.clone()).collect()
    }

    /// Re-runs the recorded protections and checks that the recorded spread
    /// and saved count are reproduced.
    pub fn replay(&self, g: &EmbeddedGraph) -> Result<FireState> {
        let mut state = FireState::ignite(g, self.start)?;
        for (i, rec) in self.rounds.iter().enumerate() {
            let (next, fresh) = advance_round(g, &state, &rec.protect, self.schedule.budget(i + 1))?;
            if fresh != rec.burned {
                return Err(Error::MalformedRecord(format!("round {} spreads differently", i + 1)));
            }
            state = next;
        }
        if g.n() - state.burned_count() != self.saved || !state.is_contained(g) {
            return Err(Error::MalformedRecord("trace does not end contained with its saved count".into()));
        }
        Ok(state)
    }
}

/// A firefighter decision procedure.
pub trait Policy {
    /// Vertices to protect in round `state.round() + 1`.
    fn protect(&mut self, g: &EmbeddedGraph, state: &FireState, budget: usize) -> Result<Vec<usize>>;
}

/// Protects nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullPolicy;

impl Policy for NullPolicy {
    fn protect(&mut self, _: &EmbeddedGraph, _: &FireState, _: usize) -> Result<Vec<usize>> {
        Ok(Vec::new())
    }
}

/// Replays fixed per-round protection lists; rounds past the end protect
/// nothing.
#[derive(Clone, Debug, Default)]
pub struct ScriptedPolicy {
    pub rounds: Vec<Vec<usize>>,
}

impl Policy for ScriptedPolicy {
    fn protect(&mut self, _: &EmbeddedGraph, state: &FireState, _: usize) -> Result<Vec<usize>> {
        Ok(self.rounds.get(state.round()).cloned().unwrap_or_default())
    }
}

/// Runs `policy` from `start` until no burning vertex has an untouched
/// neighbour.
pub fn run_simulation(
    g: &EmbeddedGraph,
    start: usize,
    schedule: Schedule,
    policy: &mut dyn Policy,
) -> Result<SimTrace> {
    let mut state = FireState::ignite(g, start)?;
    let mut rounds = Vec::new();
    while !state.is_contained(g) {
        let budget = schedule.budget(state.round() + 1);
        let mut protect = policy.protect(g, &state, budget)?;
        protect.sort_unstable();
        let (next, burned) = advance_round(g, &state, &protect, budget).map_err(|e| match e {
            Error::BudgetExceeded { requested, budget } => Error::StrategyBudgetViolation(format!(
                "round {} asked for {requested} protections with budget {budget}",
                state.round() + 1
            )),
            other => other,
        })?;
        rounds.push(RoundRecord { protect, burned });
        state = next;
    }
    Ok(SimTrace { start, schedule, rounds, saved: g.n() - state.burned_count() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn path_round() {
        let p3 = fam("path:3");
        let s = FireState::ignite(&p3, 1).unwrap();
        let (s, fresh) = advance_round(&p3, &s, &[0], 1).unwrap();
        assert_eq!(fresh, vec![2]);
        assert_eq!(s.burning().to_vec(), vec![1, 2]);
        assert_eq!(s.protected().to_vec(), vec![0]);
        assert!(s.is_contained(&p3));
    }

    #[test]
    fn star_round_and_errors() {
        let star = fam("star:5");
        let s = FireState::ignite(&star, 0).unwrap();
        let (s2, fresh) = advance_round(&star, &s, &[1, 2], 2).unwrap();
        assert_eq!(fresh, vec![3, 4]);
        assert_eq!(s2.burned_count(), 3);
        assert!(matches!(advance_round(&star, &s, &[0], 1), Err(Error::ProtectBurningVertex(0))));
        assert!(matches!(
            advance_round(&star, &s, &[1, 2], 1),
            Err(Error::BudgetExceeded { requested: 2, budget: 1 })
        ));
        let (s3, fresh) = advance_round(&star, &s, &[], 2).unwrap();
        assert_eq!(fresh.len(), 4);
        assert_eq!(s3.round(), 1);
    }

    #[test]
    fn star_simulations() {
        let star = fam("star:5");
        let mut protect_center = ScriptedPolicy { rounds: vec![vec![0]] };
        let t = run_simulation(&star, 1, Schedule::constant(1), &mut protect_center).unwrap();
        assert_eq!(t.saved, 4);
        let t = run_simulation(&star, 0, Schedule::constant(1), &mut ScriptedPolicy { rounds: vec![vec![1]] }).unwrap();
        assert_eq!(t.saved, 1);
        t.replay(&star).unwrap();
        let t = run_simulation(&star, 3, Schedule::constant(1), &mut NullPolicy).unwrap();
        assert_eq!(t.saved, 0);
        let err = run_simulation(&star, 0, Schedule::constant(1), &mut ScriptedPolicy { rounds: vec![vec![1, 2]] });
        assert!(matches!(err, Err(Error::StrategyBudgetViolation(_))));
    }

    #[test]
    fn schedule_parsing_and_json() {
        assert_eq!("4,3".parse::<Schedule>().unwrap(), Schedule::front_loaded(4, 3));
        assert_eq!("2".parse::<Schedule>().unwrap(), Schedule::constant(2));
        assert_eq!(serde_json::to_string(&Schedule::front_loaded(4, 3)).unwrap(), "[4,3]");
        let t = SimTrace { start: 0, schedule: Schedule::constant(1), rounds: vec![], saved: 0 };
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"start":0,"schedule":[1,1],"rounds":[],"saved":0}"#
        );
    }
}
