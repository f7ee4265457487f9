//! Exact search over firefighter strategies.
//!
//! The search works layer by layer. At round `r` the vertices that would
//! ignite now are the candidates; the search decides which of them are saved
//! (protected at the latest in round `r`) and lets the rest burn. Unused
//! budget carries over as slack, because a vertex saved "at deadline `r`"
//! may as well have been protected in any earlier round. A set of deadlines
//! is realisable exactly when, for every `r`, the deadlines up to `r` fit in
//! the budgets of rounds `1..=r`, which is what the slack tracks. Every
//! strategy is matched by one of these layered choices with the same burned
//! set, so the optimum over layered choices is the true optimum. A plan is
//! turned back into per-round protections by earliest-deadline-first.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fire::{run_simulation, NullPolicy, Schedule, ScriptedPolicy, SimTrace};
use crate::graph::EmbeddedGraph;
use crate::vset::VertexSet;

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

const INF: usize = usize::MAX / 4;

/// Result of [`sn_exact`]. When the node limit is hit the best strategy found
/// so far is returned with `optimal == false`.
#[derive(Clone, Debug)]
pub struct SnResult {
    pub saved: usize,
    pub trace: SimTrace,
    pub optimal: bool,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    /// Stop at the first strategy within the burn cap.
    FirstFeasible,
    /// Find a strategy with the fewest burned vertices.
    MinimumBurn,
}

#[derive(Clone, Debug)]
pub struct ContainmentQuery {
    /// Maximum number of burned vertices, the start included.
    pub burn_cap: usize,
    /// Maximum number of rounds until the fire is contained.
    pub round_cap: Option<usize>,
    pub goal: Goal,
    pub node_limit: u64,
    /// Only these vertices may be protected.
    pub allowed: Option<Vec<usize>>,
}

impl ContainmentQuery {
    pub fn new(burn_cap: usize) -> Self {
        ContainmentQuery {
            burn_cap,
            round_cap: None,
            goal: Goal::FirstFeasible,
            node_limit: DEFAULT_NODE_LIMIT,
            allowed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Feasible(SimTrace),
    Infeasible,
}

impl Containment {
    pub fn trace(&self) -> Option<&SimTrace> {
        match self {
            Containment::Feasible(t) => Some(t),
            Containment::Infeasible => None,
        }
    }
}

/// The graph restricted to the vertices the search can touch, with local ids.
struct Local {
    adj: Vec<Vec<usize>>,
    deg: Vec<usize>,
    global: Vec<usize>,
}

impl Local {
    fn new(g: &EmbeddedGraph, start: usize, radius: Option<usize>) -> (Self, usize) {
        let dist = g.distances_from(start);
        let keep: Vec<usize> =
            (0..g.n()).filter(|&v| radius.is_none_or(|r| dist[v] <= r)).collect();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect())
            .collect();
        let deg = keep.iter().map(|&v| g.degree(v)).collect();
        (Local { adj, deg, global: keep }, local[start])
    }

    fn n(&self) -> usize {
        self.global.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    blocked: VertexSet,
    frontier: VertexSet,
    slack: usize,
    round: usize,
}

enum Memo {
    /// Achievable with the stored saved set; optimal in minimisation mode.
    Exact(usize, Vec<usize>),
    AtLeast(usize),
}

struct Engine<'a> {
    loc: &'a Local,
    schedule: Schedule,
    round_cap: Option<usize>,
    allowed: Option<VertexSet>,
    first_feasible: bool,
    node_limit: u64,
    nodes: u64,
    aborted: bool,
    memo: HashMap<Key, Memo>,
    /// Best root decision found so far: (additional burned, saved set).
    incumbent: Option<(usize, Vec<usize>)>,
}

/// Calls `f` on every `s`-subset of `items`, in lexicographic order of
/// positions; stops when `f` returns false.
fn for_each_subset(items: &[usize], s: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let n = items.len();
    if s > n {
        return;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    let mut buf: Vec<usize> = Vec::with_capacity(s);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        if !f(&buf) {
            return;
        }
        let mut i = s;
        while i > 0 && idx[i - 1] == i - 1 + n - s {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Engine<'_> {
    fn key_round(&self, round: usize) -> usize {
        if self.round_cap.is_some() {
            round
        } else {
            round.min(2)
        }
    }

    /// Candidates in branching order: degree descending, then id.
    fn candidates(&self, blocked: &VertexSet, frontier: &[usize]) -> Vec<usize> {
        let mut seen = VertexSet::new(self.loc.n());
        let mut c = Vec::new();
        for &u in frontier {
            for &w in &self.loc.adj[u] {
                if !blocked.contains(w) && seen.insert(w) {
                    c.push(w);
                }
            }
        }
        c.sort_unstable_by_key(|&v| (std::cmp::Reverse(self.loc.deg[v]), v));
        c
    }

    fn protectable(&self, c: &[usize]) -> Vec<usize> {
        match &self.allowed {
            Some(a) => c.iter().copied().filter(|&v| a.contains(v)).collect(),
            None => c.to_vec(),
        }
    }

    /// Minimum number of further burned vertices if below `ub`; otherwise
    /// some lower bound that is at least `ub`.
    fn solve(&mut self, blocked: &VertexSet, frontier: &[usize], slack: usize, round: usize, ub: usize, root: bool) -> usize {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return INF;
        }
        let c = self.candidates(blocked, frontier);
        if c.is_empty() {
            return 0;
        }
        if self.round_cap.is_some_and(|cap| round > cap) {
            return INF;
        }
        let cap = slack + self.schedule.budget(round);
        let prot = self.protectable(&c);
        let most = cap.min(prot.len());
        if most == c.len() {
            return 0;
        }
        let lb = c.len() - most;
        if lb >= ub {
            return lb;
        }
        let key = Key {
            blocked: blocked.clone(),
            frontier: VertexSet::from_slice(self.loc.n(), frontier),
            slack,
            round: self.key_round(round),
        };
        match self.memo.get(&key) {
            Some(Memo::Exact(v, _)) => return *v,
            Some(Memo::AtLeast(l)) if *l >= ub => return *l,
            _ => {}
        }
        let mut next_blocked = blocked.clone();
        for &v in &c {
            next_blocked.insert(v);
        }
        let mut bound = ub;
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut lower = INF;
        let mut done = false;
        for s in (0..=most).rev() {
            let burn_now = c.len() - s;
            if burn_now >= bound {
                lower = lower.min(burn_now);
                break;
            }
            for_each_subset(&prot, s, &mut |w| {
                let rest: Vec<usize> = c.iter().copied().filter(|v| !w.contains(v)).collect();
                let child = self.solve(&next_blocked, &rest, cap - s, round + 1, bound - burn_now, false);
                if self.aborted {
                    done = true;
                    return false;
                }
                let total = burn_now + child;
                lower = lower.min(total);
                if total < bound {
                    bound = total;
                    best = Some((total, w.to_vec()));
                    if root {
                        self.incumbent = Some((total, w.to_vec()));
                    }
                    if self.first_feasible {
                        done = true;
                        return false;
                    }
                }
                burn_now < bound
            });
            if done {
                break;
            }
        }
        if self.aborted {
            return INF;
        }
        match best {
            Some((v, w)) => {
                self.memo.insert(key, Memo::Exact(v, w));
                v
            }
            None => {
                let l = lower.max(lb);
                self.memo.insert(key, Memo::AtLeast(l));
                l
            }
        }
    }

    /// Saved sets with their deadlines, following memoised decisions from
    /// the root (whose decision may be forced).
    fn deadlines(&self, start: usize, root_choice: Option<&[usize]>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut blocked = VertexSet::from_slice(self.loc.n(), &[start]);
        let mut frontier = vec![start];
        let mut slack = 0;
        let mut round = 1;
        loop {
            let c = self.candidates(&blocked, &frontier);
            if c.is_empty() {
                break;
            }
            let cap = slack + self.schedule.budget(round);
            let prot = self.protectable(&c);
            let w: Vec<usize> = if cap.min(prot.len()) == c.len() {
                c.clone()
            } else if let (1, Some(w)) = (round, root_choice) {
                w.to_vec()
            } else {
                let key = Key {
                    blocked: blocked.clone(),
                    frontier: VertexSet::from_slice(self.loc.n(), &frontier),
                    slack,
                    round: self.key_round(round),
                };
                match self.memo.get(&key) {
                    Some(Memo::Exact(_, w)) => w.clone(),
                    _ => unreachable!("decision on an optimal path is memoised"),
                }
            };
            out.extend(w.iter().map(|&v| (v, round)));
            for &v in &c {
                blocked.insert(v);
            }
            slack = cap - w.len();
            frontier = c.into_iter().filter(|v| !w.contains(v)).collect();
            round += 1;
        }
        out
    }
}

/// Earliest-deadline-first assignment of saved vertices to rounds.
fn edf_rounds(mut deadlines: Vec<(usize, usize)>, schedule: Schedule) -> Vec<Vec<usize>> {
    deadlines.sort_unstable_by_key(|&(v, d)| (d, v));
    let mut rounds = Vec::new();
    let mut it = deadlines.into_iter().peekable();
    let mut round = 1;
    while it.peek().is_some() {
        let mut this: Vec<usize> = Vec::new();
        for _ in 0..schedule.budget(round) {
            match it.next() {
                Some((v, d)) => {
                    debug_assert!(d >= round, "deadline missed");
                    this.push(v);
                }
                None => break,
            }
        }
        this.sort_unstable();
        rounds.push(this);
        round += 1;
    }
    rounds
}

struct Plan {
    additional: usize,
    trace: SimTrace,
}

#[allow(clippy::too_many_arguments)]
fn realise(
    g: &EmbeddedGraph,
    loc: &Local,
    engine: &Engine,
    start: usize,
    local_start: usize,
    schedule: Schedule,
    additional: usize,
    root_choice: Option<&[usize]>,
) -> Result<Plan> {
    let deadlines = engine
        .deadlines(local_start, root_choice)
        .into_iter()
        .map(|(v, d)| (loc.global[v], d))
        .collect();
    let rounds = edf_rounds(deadlines, schedule);
    let trace = run_simulation(g, start, schedule, &mut ScriptedPolicy { rounds })?;
    debug_assert_eq!(trace.burned_total(), 1 + additional);
    Ok(Plan { additional, trace })
}

/// Exact `sn_k(g, start)`: the largest number of vertices any strategy saves.
pub fn sn_exact(g: &EmbeddedGraph, start: usize, schedule: Schedule, node_limit: u64) -> Result<SnResult> {
    g.check_vertex(start)?;
    let (loc, ls) = Local::new(g, start, None);
    let mut engine = Engine {
        loc: &loc,
        schedule,
        round_cap: None,
        allowed: None,
        first_feasible: false,
        node_limit,
        nodes: 0,
        aborted: false,
        memo: HashMap::new(),
        incumbent: None,
    };
    let root = VertexSet::from_slice(loc.n(), &[ls]);
    let best = engine.solve(&root, &[ls], 0, 1, g.n(), true);
    let nodes = engine.nodes;
    if !engine.aborted {
        let plan = realise(g, &loc, &engine, start, ls, schedule, best, None)?;
        return Ok(SnResult { saved: g.n() - 1 - plan.additional, trace: plan.trace, optimal: true, nodes });
    }
    let plan = match engine.incumbent.clone() {
        Some((v, w)) => realise(g, &loc, &engine, start, ls, schedule, v, Some(&w))?,
        None => {
            let trace = run_simulation(g, start, schedule, &mut NullPolicy)?;
            Plan { additional: trace.burned_total() - 1, trace }
        }
    };
    Ok(SnResult { saved: g.n() - 1 - plan.additional, trace: plan.trace, optimal: false, nodes })
}

/// Looks for a strategy burning at most `query.burn_cap` vertices.
/// `Err(Timeout)` means the node limit was reached before a decision.
pub fn containment_search(
    g: &EmbeddedGraph,
    start: usize,
    schedule: Schedule,
    query: &ContainmentQuery,
) -> Result<Containment> {
    g.check_vertex(start)?;
    if query.burn_cap == 0 {
        return Ok(Containment::Infeasible);
    }
    // A burned set is connected and contains the start, so nothing farther
    // than `burn_cap` can be burned or usefully protected.
    let (loc, ls) = Local::new(g, start, Some(query.burn_cap));
    let allowed = query.allowed.as_ref().map(|a| {
        let map: HashMap<usize, usize> = loc.global.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let local: Vec<usize> = a.iter().filter_map(|v| map.get(v).copied()).collect();
        VertexSet::from_slice(loc.n(), &local)
    });
    let mut engine = Engine {
        loc: &loc,
        schedule,
        round_cap: query.round_cap,
        allowed,
        first_feasible: query.goal == Goal::FirstFeasible,
        node_limit: query.node_limit,
        nodes: 0,
        aborted: false,
        memo: HashMap::new(),
        incumbent: None,
    };
    let root = VertexSet::from_slice(loc.n(), &[ls]);
    let best = engine.solve(&root, &[ls], 0, 1, query.burn_cap, true);
    if engine.aborted {
        if let (Goal::MinimumBurn, Some((v, w))) = (query.goal, engine.incumbent.clone()) {
            let plan = realise(g, &loc, &engine, start, ls, schedule, v, Some(&w))?;
            return Ok(Containment::Feasible(plan.trace));
        }
        return Err(Error::Timeout);
    }
    if best >= query.burn_cap {
        return Ok(Containment::Infeasible);
    }
    let plan = realise(g, &loc, &engine, start, ls, schedule, best, None)?;
    Ok(Containment::Feasible(plan.trace))
}

/// Fewest-burned strategy among those burning at most `burn_cap` vertices
/// and contained within `round_cap` rounds.
pub fn min_burned_containment(
    g: &EmbeddedGraph,
    start: usize,
    schedule: Schedule,
    burn_cap: usize,
    round_cap: Option<usize>,
) -> Result<Containment> {
    let query = ContainmentQuery { round_cap, goal: Goal::MinimumBurn, ..ContainmentQuery::new(burn_cap) };
    containment_search(g, start, schedule, &query)
}
