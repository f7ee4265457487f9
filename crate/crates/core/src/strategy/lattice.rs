//! Frozen containment plans for lattice-like neighbourhoods.
//!
//! A plan stores its moves in lattice coordinates relative to the start.
//! To apply it, a chart is grown from the start along the rotation system:
//! the start's rotation fixes the directions, and every vertex up to the
//! interior radius must look like a lattice vertex. Because the chart
//! follows the rotations, mirrored and rotated embeddings need no special
//! handling.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fire::{run_simulation, Schedule, ScriptedPolicy};
use crate::graph::generate::{generate, FamilySpec};
use crate::graph::EmbeddedGraph;
use crate::strategy::{ProtectionPlan, Strategy};

pub type Coord = [i32; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    /// Triangular lattice, axial coordinates.
    Hex,
    /// Square grid.
    Rect,
}

impl Lattice {
    /// Unit steps in counter-clockwise order; opposite steps are half a turn
    /// apart.
    pub fn directions(self) -> &'static [Coord] {
        match self {
            Lattice::Hex => &[[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]],
            Lattice::Rect => &[[1, 0], [0, 1], [-1, 0], [0, -1]],
        }
    }
}

/// Lattice coordinates for the vertices around a start.
#[derive(Clone, Debug)]
pub struct Chart {
    pub lattice: Lattice,
    coords: HashMap<usize, Coord>,
    at: HashMap<Coord, usize>,
}

impl Chart {
    /// Grows a chart from `start`. Vertices at distance below `interior`
    /// must have the lattice degree and are expanded; their neighbours are
    /// charted too, so the chart reaches distance `interior`.
    pub fn grow(g: &EmbeddedGraph, start: usize, lattice: Lattice, interior: usize) -> Result<Chart> {
        g.check_vertex(start)?;
        let dirs = lattice.directions();
        let d = dirs.len();
        let fail = |why: String| Err(Error::NotApplicable(format!("{lattice:?} chart at {start}: {why}")));
        let mut chart = Chart { lattice, coords: HashMap::new(), at: HashMap::new() };
        chart.coords.insert(start, [0, 0]);
        chart.at.insert([0, 0], start);
        // (vertex, distance, reference neighbour position in its rotation, direction index of it)
        let mut queue = std::collections::VecDeque::from([(start, 0usize, 0usize, 0usize)]);
        let mut expanded = vec![false; g.n()];
        while let Some((w, dist, ref_pos, ref_dir)) = queue.pop_front() {
            if dist >= interior || expanded[w] {
                continue;
            }
            expanded[w] = true;
            let rot = g.rotation(w);
            if rot.len() != d {
                return fail(format!("vertex {w} has degree {}", rot.len()));
            }
            let cw = chart.coords[&w];
            for t in 0..d {
                let x = rot[(ref_pos + t) % d];
                let k = (ref_dir + t) % d;
                let c = [cw[0] + dirs[k][0], cw[1] + dirs[k][1]];
                match (chart.coords.get(&x), chart.at.get(&c)) {
                    (Some(&cx), _) if cx != c => return fail(format!("vertex {x} charted twice")),
                    (None, Some(&y)) => return fail(format!("vertices {x} and {y} share a lattice point")),
                    (None, None) => {
                        chart.coords.insert(x, c);
                        chart.at.insert(c, x);
                    }
                    _ => {}
                }
                // x sees w in the opposite direction
                let back = rot_pos(g, x, w);
                queue.push_back((x, dist + 1, back, (k + d / 2) % d));
            }
        }
        Ok(chart)
    }

    pub fn vertex(&self, c: Coord) -> Option<usize> {
        self.at.get(&c).copied()
    }

    pub fn coord(&self, v: usize) -> Option<Coord> {
        self.coords.get(&v).copied()
    }
}

fn rot_pos(g: &EmbeddedGraph, x: usize, w: usize) -> usize {
    g.rotation(x).iter().position(|&y| y == w).expect("symmetric rotation")
}

/// Stored plan: protections per round in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePlanFile {
    pub name: String,
    pub lattice: Lattice,
    pub schedule: Schedule,
    /// Chart radius needed by the moves.
    pub interior: usize,
    pub burn_bound: usize,
    pub round_bound: usize,
    /// Instance the plan was derived on and is re-checked against.
    pub reference: String,
    pub rounds: Vec<Vec<Coord>>,
    /// Hex-encoded SHA-256 of the canonical JSON of `rounds`.
    pub sha256: String,
}

impl LatticePlanFile {
    pub fn digest(rounds: &[Vec<Coord>]) -> String {
        let body = serde_json::to_vec(rounds).expect("coordinates serialize");
        hex::encode(Sha256::digest(&body))
    }

    /// Parses a plan, checks its hash and re-simulates it on its reference
    /// instance.
    pub fn load(json: &str) -> Result<LatticePlanFile> {
        let plan: LatticePlanFile = serde_json::from_str(json)?;
        let digest = Self::digest(&plan.rounds);
        if digest != plan.sha256 {
            return Err(Error::PlanIntegrity(format!("{}: hash {digest} does not match", plan.name)));
        }
        let spec: FamilySpec = plan.reference.parse()?;
        let g = generate(&spec)?;
        let p = plan.apply(&g, spec.center())?;
        let t = p.simulate(&g)?;
        if t.burned_total() > plan.burn_bound || t.rounds.len() > plan.round_bound {
            return Err(Error::PlanIntegrity(format!(
                "{}: burns {} in {} rounds on {}",
                plan.name,
                t.burned_total(),
                t.rounds.len(),
                plan.reference
            )));
        }
        Ok(plan)
    }

    /// Maps the moves onto `g` around `start`.
    pub fn apply(&self, g: &EmbeddedGraph, start: usize) -> Result<ProtectionPlan> {
        let chart = Chart::grow(g, start, self.lattice, self.interior)?;
        let mut rounds = Vec::with_capacity(self.rounds.len());
        for moves in &self.rounds {
            let mut vs = Vec::with_capacity(moves.len());
            for &c in moves {
                match chart.vertex(c) {
                    Some(v) => vs.push(v),
                    None => return Err(Error::NotApplicable(format!("no vertex at {c:?} from {start}"))),
                }
            }
            vs.sort_unstable();
            rounds.push(vs);
        }
        Ok(ProtectionPlan {
            strategy: self.name.clone(),
            start,
            schedule: self.schedule,
            rounds,
            burn_bound: Some(self.burn_bound),
        })
    }

    /// Builds a plan file from a trace found on `g` from `start`.
    pub fn from_protections(
        name: &str,
        lattice: Lattice,
        interior: usize,
        reference: &FamilySpec,
        g: &EmbeddedGraph,
        schedule: Schedule,
        protections: &[Vec<usize>],
    ) -> Result<LatticePlanFile> {
        let start = reference.center();
        let chart = Chart::grow(g, start, lattice, interior)?;
        let mut rounds = Vec::new();
        for moves in protections {
            let mut cs = Vec::new();
            for &v in moves {
                cs.push(chart.coord(v).ok_or_else(|| {
                    Error::NotApplicable(format!("protection {v} lies outside the chart"))
                })?);
            }
            cs.sort_unstable();
            rounds.push(cs);
        }
        let mut policy = ScriptedPolicy { rounds: protections.to_vec() };
        let t = run_simulation(g, start, schedule, &mut policy)?;
        Ok(LatticePlanFile {
            name: name.to_string(),
            lattice,
            schedule,
            interior,
            burn_bound: t.burned_total(),
            round_bound: t.rounds.len(),
            reference: reference.to_string(),
            sha256: Self::digest(&rounds),
            rounds,
        })
    }
}

static HEX: OnceLock<std::result::Result<LatticePlanFile, String>> = OnceLock::new();
static RECT: OnceLock<std::result::Result<LatticePlanFile, String>> = OnceLock::new();

fn shipped(cell: &'static OnceLock<std::result::Result<LatticePlanFile, String>>, json: &str) -> Result<&'static LatticePlanFile> {
    cell.get_or_init(|| LatticePlanFile::load(json).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::PlanIntegrity(e.clone()))
}

/// Plan for a triangular-lattice neighbourhood, budgets 4 then 3.
pub fn hex_plan() -> Result<&'static LatticePlanFile> {
    shipped(&HEX, include_str!("../../plans/hex.json"))
}

/// Plan for a square-grid neighbourhood, two firefighters.
pub fn rect_plan() -> Result<&'static LatticePlanFile> {
    shipped(&RECT, include_str!("../../plans/rect.json"))
}

/// Applies a frozen lattice plan and keeps it only if simulation on the
/// actual graph stays within the plan's bound.
#[derive(Clone, Copy, Debug)]
pub struct LatticeStrategy {
    pub lattice: Lattice,
}

impl LatticeStrategy {
    pub fn hex() -> Self {
        LatticeStrategy { lattice: Lattice::Hex }
    }

    pub fn rect() -> Self {
        LatticeStrategy { lattice: Lattice::Rect }
    }

    fn file(&self) -> Result<&'static LatticePlanFile> {
        match self.lattice {
            Lattice::Hex => hex_plan(),
            Lattice::Rect => rect_plan(),
        }
    }
}

impl Strategy for LatticeStrategy {
    fn name(&self) -> String {
        match self.lattice {
            Lattice::Hex => "hex_containment".into(),
            Lattice::Rect => "rect_containment".into(),
        }
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        let file = self.file()?;
        if schedule.first < file.schedule.first || schedule.subsequent < file.schedule.subsequent {
            return Err(Error::NotApplicable(format!("{} needs schedule {}", file.name, file.schedule)));
        }
        let mut plan = file.apply(g, start)?;
        plan.schedule = schedule;
        plan.strategy = self.name();
        let t = plan.simulate(g)?;
        if t.burned_total() > file.burn_bound {
            return Err(Error::NotApplicable(format!(
                "{} burns {} from {start}, above its bound {}",
                file.name,
                t.burned_total(),
                file.burn_bound
            )));
        }
        Ok(plan)
    }
}
