//! Partition of the vertices into X (the fire can be contained cheaply from
//! there) and Y, in three graph classes.
//!
//! * girth at least 5, two firefighters: X means at most 2 burned;
//! * triangulations, 4 then 3 firefighters: X means at most 6 burned;
//! * triangle-free, two firefighters: X means at most 18 burned.
//!
//! Labels carry a degree index, `X_d` / `Y_d`. Rules that need no search
//! are tried first (a lattice neighbourhood counts only when the frozen
//! lattice plan also works on the graph); in exact mode the remaining candidates are decided by
//! containment search.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::detect::configs::{detect_local_configs, ConfigId, ConfigMatch};
use crate::detect::grid::{grid_neighborhood_test, GridKind};
use crate::error::{Error, Result};
use crate::fire::search::{containment_search, Containment, ContainmentQuery};
use crate::fire::Schedule;
use crate::graph::EmbeddedGraph;
use crate::strategy::{LatticeStrategy, Strategy};

/// Default node limit for one per-vertex containment search.
pub const CLASSIFY_NODE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Girth5,
    Planar,
    TriangleFree,
}

impl Context {
    pub fn name(self) -> &'static str {
        match self {
            Context::Girth5 => "girth5",
            Context::Planar => "planar",
            Context::TriangleFree => "triangle_free",
        }
    }

    pub fn schedule(self) -> Schedule {
        match self {
            Context::Girth5 | Context::TriangleFree => Schedule::constant(2),
            Context::Planar => Schedule::front_loaded(4, 3),
        }
    }

    /// Most vertices an X start may burn.
    pub fn burn_cap(self) -> usize {
        match self {
            Context::Girth5 => 2,
            Context::Planar => 6,
            Context::TriangleFree => 18,
        }
    }

    /// Degree index used in labels; the girth-5 classes lump degrees
    /// below 2 and above 4.
    pub fn label_index(self, degree: usize) -> usize {
        match self {
            Context::Girth5 => degree.clamp(2, 4),
            _ => degree,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "girth5" => Ok(Context::Girth5),
            "planar" => Ok(Context::Planar),
            "triangle_free" | "trianglefree" => Ok(Context::TriangleFree),
            _ => Err(Error::BadParameter(format!("unknown context '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    RulesOnly,
    Exact,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rules_only" => Ok(Mode::RulesOnly),
            "exact" => Ok(Mode::Exact),
            _ => Err(Error::BadParameter(format!("unknown mode '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub x: bool,
    pub degree: usize,
}

impl Label {
    pub fn x(degree: usize) -> Self {
        Label { x: true, degree }
    }

    pub fn y(degree: usize) -> Self {
        Label { x: false, degree }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", if self.x { "X" } else { "Y" }, self.degree)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A degree rule; `witness` holds the vertices the rule refers to.
    Rule { rule: String, witness: Vec<usize> },
    Config { matched: ConfigMatch },
    /// Containment search found a strategy; protections are per round.
    Certificate { burned: usize, protections: Vec<Vec<usize>> },
    /// Containment search proved that no strategy stays within the cap.
    ExactRefuted,
    /// Containment search hit its node limit; counted as Y.
    ExactUnknown,
    /// The degree alone places the vertex in Y.
    DegreeBound,
    /// Rules-only mode and no rule applies; counted as Y.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub vertex: usize,
    pub degree: usize,
    pub label: Label,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub context: Context,
    pub mode: Mode,
    pub n: usize,
    pub vertices: Vec<VertexClass>,
    pub counts: BTreeMap<String, usize>,
}

impl ClassificationReport {
    fn new(context: Context, mode: Mode, vertices: Vec<VertexClass>) -> Self {
        let mut counts = BTreeMap::new();
        for vc in &vertices {
            *counts.entry(vc.label.to_string()).or_insert(0) += 1;
        }
        ClassificationReport { context, mode, n: vertices.len(), vertices, counts }
    }

    pub fn label(&self, v: usize) -> Label {
        self.vertices[v].label
    }

    pub fn is_x(&self, v: usize) -> bool {
        self.vertices[v].label.x
    }

    pub fn count(&self, label: Label) -> usize {
        self.counts.get(&label.to_string()).copied().unwrap_or(0)
    }

    pub fn x_count(&self) -> usize {
        self.vertices.iter().filter(|c| c.label.x).count()
    }

    pub fn y_count(&self) -> usize {
        self.n - self.x_count()
    }

    pub fn unknown_count(&self) -> usize {
        self.vertices.iter().filter(|c| c.evidence == Evidence::ExactUnknown).count()
    }

    /// Exact mode with every search decided.
    pub fn is_exact(&self) -> bool {
        self.mode == Mode::Exact && self.unknown_count() == 0
    }

    pub fn in_y(&self, v: usize, degree: usize) -> bool {
        let l = self.vertices[v].label;
        !l.x && l.degree == degree
    }

    /// Most vertices a dispatched strategy may burn from `v`, for X starts.
    pub fn contract(&self, v: usize) -> Option<usize> {
        let vc = &self.vertices[v];
        if !vc.label.x {
            return None;
        }
        Some(match (&vc.evidence, self.context) {
            (Evidence::Rule { rule, .. }, _) if rule == NEIGHBOURS_PROTECTED => 1,
            (Evidence::Rule { .. }, _) => 2,
            (_, c) => c.burn_cap(),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub mode: Mode,
    pub node_limit: u64,
}

impl ClassifyOptions {
    pub fn new(mode: Mode) -> Self {
        ClassifyOptions { mode, node_limit: CLASSIFY_NODE_LIMIT }
    }
}

pub const NEIGHBOURS_PROTECTED: &str = "neighbours_protected";
pub const LOW_NEIGHBOUR_CHASE: &str = "low_neighbour_chase";

fn rule(name: &str, witness: Vec<usize>) -> Evidence {
    Evidence::Rule { rule: name.to_string(), witness }
}

/// Degree classes of a planar graph of girth at least 5.
pub fn classify_girth5(g: &EmbeddedGraph) -> Result<ClassificationReport> {
    g.faces()?;
    if let crate::graph::Girth::Finite(found @ 0..=4) = g.girth() {
        return Err(Error::GirthTooSmall { found, required: 5 });
    }
    let vertices = (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            let idx = Context::Girth5.label_index(d);
            let low = g.neighbors(v).iter().copied().find(|&u| g.degree(u) <= 3);
            let (label, evidence) = match (d, low) {
                (0..=2, _) => (Label::x(idx), rule(NEIGHBOURS_PROTECTED, g.neighbors(v).to_vec())),
                (3, Some(u)) => (Label::x(idx), rule(LOW_NEIGHBOUR_CHASE, vec![u])),
                _ => (Label::y(idx), Evidence::DegreeBound),
            };
            VertexClass { vertex: v, degree: d, label, evidence }
        })
        .collect();
    Ok(ClassificationReport::new(Context::Girth5, Mode::Exact, vertices))
}

fn search_evidence(g: &EmbeddedGraph, v: usize, context: Context, opts: ClassifyOptions) -> Result<(bool, Evidence)> {
    if opts.mode == Mode::RulesOnly {
        return Ok((false, Evidence::Unresolved));
    }
    let query = ContainmentQuery { node_limit: opts.node_limit, ..ContainmentQuery::new(context.burn_cap()) };
    match containment_search(g, v, context.schedule(), &query) {
        Ok(Containment::Feasible(t)) => {
            Ok((true, Evidence::Certificate { burned: t.burned_total(), protections: t.protections() }))
        }
        Ok(Containment::Infeasible) => Ok((false, Evidence::ExactRefuted)),
        Err(Error::Timeout) => Ok((false, Evidence::ExactUnknown)),
        Err(e) => Err(e),
    }
}

fn classify_each<F>(g: &EmbeddedGraph, f: F) -> Result<Vec<VertexClass>>
where
    F: Fn(usize) -> Result<(bool, Evidence)> + Sync,
{
    (0..g.n())
        .into_par_iter()
        .map(|v| {
            let (x, evidence) = f(v)?;
            let d = g.degree(v);
            Ok(VertexClass { vertex: v, degree: d, label: Label { x, degree: d }, evidence })
        })
        .collect()
}

/// Classes of a triangulation with budgets 4 then 3.
pub fn classify_planar(g: &EmbeddedGraph, opts: ClassifyOptions) -> Result<ClassificationReport> {
    if !g.is_triangulation()? {
        return Err(Error::NotTriangulation);
    }
    let ctx = Context::Planar;
    let vertices = classify_each(g, |v| {
        let d = g.degree(v);
        match d {
            0..=4 => Ok((true, rule(NEIGHBOURS_PROTECTED, g.neighbors(v).to_vec()))),
            5 => match g.neighbors(v).iter().copied().find(|&u| g.degree(u) <= 6) {
                Some(u) => Ok((true, rule(LOW_NEIGHBOUR_CHASE, vec![u]))),
                None => search_evidence(g, v, ctx, opts),
            },
            6 => {
                if grid_neighborhood_test(g, v, GridKind::Hex)?.pure
                    && LatticeStrategy::hex().applicable(g, v, ctx.schedule())
                {
                    let matched = ConfigMatch {
                        config: ConfigId::HexNeighbourhood,
                        anchor: v,
                        witness: Vec::new(),
                        faces: Vec::new(),
                        path: Vec::new(),
                    };
                    Ok((true, Evidence::Config { matched }))
                } else {
                    search_evidence(g, v, ctx, opts)
                }
            }
            _ => Ok((false, Evidence::DegreeBound)),
        }
    })?;
    Ok(ClassificationReport::new(ctx, opts.mode, vertices))
}

/// Classes of a triangle-free plane graph with two firefighters.
pub fn classify_triangle_free(g: &EmbeddedGraph, opts: ClassifyOptions) -> Result<ClassificationReport> {
    g.faces()?;
    if g.has_triangle() {
        return Err(Error::ContainsTriangle);
    }
    let ctx = Context::TriangleFree;
    let vertices = classify_each(g, |v| {
        let d = g.degree(v);
        match d {
            0..=2 => Ok((true, rule(NEIGHBOURS_PROTECTED, g.neighbors(v).to_vec()))),
            3 => match detect_local_configs(g, v)?.into_iter().next() {
                Some(matched) => Ok((true, Evidence::Config { matched })),
                None => search_evidence(g, v, ctx, opts),
            },
            4 => {
                if grid_neighborhood_test(g, v, GridKind::Rect)?.pure
                    && LatticeStrategy::rect().applicable(g, v, ctx.schedule())
                {
                    let matched = ConfigMatch {
                        config: ConfigId::RectNeighbourhood,
                        anchor: v,
                        witness: Vec::new(),
                        faces: Vec::new(),
                        path: Vec::new(),
                    };
                    Ok((true, Evidence::Config { matched }))
                } else {
                    search_evidence(g, v, ctx, opts)
                }
            }
            _ => Ok((false, Evidence::DegreeBound)),
        }
    })?;
    let vertices = vertices
        .into_iter()
        .map(|mut vc| {
            if vc.degree <= 2 {
                vc.label.degree = 2;
            }
            vc
        })
        .collect();
    Ok(ClassificationReport::new(ctx, opts.mode, vertices))
}

pub fn classify(g: &EmbeddedGraph, context: Context, opts: ClassifyOptions) -> Result<ClassificationReport> {
    match context {
        Context::Girth5 => classify_girth5(g),
        Context::Planar => classify_planar(g, opts),
        Context::TriangleFree => classify_triangle_free(g, opts),
    }
}

/// A member of a derived subset of Y with the vertices that put it there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialMember {
    pub vertex: usize,
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpecialSets {
    /// `Y_3` vertices contiguous with exactly two elements of degree at
    /// least 5; witnesses are the vertices among those elements.
    pub y32: Vec<SpecialMember>,
    /// `Y_5` vertices 4-adjacent to at least three `Y_3` vertices.
    pub y53: Vec<SpecialMember>,
}

impl SpecialSets {
    pub fn in_y53(&self, v: usize) -> bool {
        self.y53.iter().any(|m| m.vertex == v)
    }

    pub fn in_y32(&self, v: usize) -> bool {
        self.y32.iter().any(|m| m.vertex == v)
    }
}

pub fn special_sets(g: &EmbeddedGraph, report: &ClassificationReport) -> Result<SpecialSets> {
    use crate::detect::relations::{contiguous_elements, four_adjacent};
    if report.context != Context::TriangleFree || !report.is_exact() {
        return Err(Error::RequiresExactClassification);
    }
    let mut out = SpecialSets::default();
    for v in 0..g.n() {
        if report.in_y(v, 3) {
            let heavy: Vec<_> = contiguous_elements(g, v)?.into_iter().filter(|e| e.degree() >= 5).collect();
            if heavy.len() == 2 {
                let witnesses = heavy.iter().filter_map(|e| e.vertex()).collect();
                out.y32.push(SpecialMember { vertex: v, witnesses });
            }
        }
        if report.in_y(v, 5) {
            let mut witnesses = Vec::new();
            for &u in g.neighbors(v) {
                if report.in_y(u, 3) && four_adjacent(g, v, u)? {
                    witnesses.push(u);
                }
            }
            if witnesses.len() >= 3 {
                out.y53.push(SpecialMember { vertex: v, witnesses });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn girth5_examples() {
        let r = classify_girth5(&fam("dodecahedron")).unwrap();
        assert_eq!(r.count(Label::x(3)), 20);
        assert_eq!(r.counts.len(), 1);
        assert_eq!(classify_girth5(&fam("cycle:5")).unwrap().count(Label::x(2)), 5);
        assert_eq!(classify_girth5(&fam("path:5")).unwrap().count(Label::x(2)), 5);
        assert!(matches!(classify_girth5(&fam("cube")), Err(Error::GirthTooSmall { found: 4, .. })));
    }

    #[test]
    fn planar_solids() {
        let opts = ClassifyOptions::new(Mode::RulesOnly);
        assert_eq!(classify_planar(&fam("octahedron"), opts).unwrap().count(Label::x(4)), 6);
        assert_eq!(classify_planar(&fam("icosahedron"), opts).unwrap().count(Label::x(5)), 12);
        assert!(matches!(classify_planar(&fam("cube"), opts), Err(Error::NotTriangulation)));
    }

    #[test]
    fn triangle_free_small() {
        let opts = ClassifyOptions::new(Mode::Exact);
        let r = classify_triangle_free(&fam("cube"), opts).unwrap();
        assert_eq!(r.count(Label::x(3)), 8);
        assert!(r.vertices.iter().all(|c| matches!(
            &c.evidence,
            Evidence::Config { matched } if matched.config == ConfigId::LowNeighbour
        )));
        let s = special_sets(&fam("cube"), &r).unwrap();
        assert!(s.y32.is_empty() && s.y53.is_empty());
        let c4 = fam("cycle:4");
        let r = classify_triangle_free(&c4, opts).unwrap();
        assert_eq!(r.count(Label::x(2)), 4);
        let rules = classify_triangle_free(&c4, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        assert!(matches!(special_sets(&c4, &rules), Err(Error::RequiresExactClassification)));
    }

    #[test]
    fn grid_centre_is_x4() {
        let spec: FamilySpec = "rect_grid:17x17".parse().unwrap();
        let g = generate(&spec).unwrap();
        let r = classify_triangle_free(&g, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        assert_eq!(r.label(spec.center()), Label::x(4));
    }
}
