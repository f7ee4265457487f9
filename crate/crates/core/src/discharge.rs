//! Charge bookkeeping behind the |Y| = O(|X|) counting arguments.
//!
//! Triangulations: vertex `v` starts with `d(v) - 6` (total -12). Vertices
//! of degree at least 7 give 1/4 to each `Y_5` neighbour, and each `Y_6`
//! vertex receives `alpha` from the end of its escape path.
//!
//! Triangle-free graphs: vertices start with `d(v) - 4` and faces with
//! `d(f) - 4` (total -8). `Y_3` vertices are fed by nearby vertices of
//! degree at least 5 and by large faces; each `Y_4` vertex receives `alpha`
//! from the donor of its escape path.
//!
//! All arithmetic goes through [`Scalar`]; use [`crate::Rational`] for
//! exact audits.

use std::collections::HashMap;

use serde::Serialize;

use crate::detect::classify::{special_sets, ClassificationReport, Context};
use crate::detect::grid::{donor_path, Donor, GridKind};
use crate::detect::relations::{contiguous_vertices, five_adjacent, four_adjacent};
use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChargeContext {
    Planar,
    TriangleFree,
}

impl ChargeContext {
    /// Sum of the initial charges over all elements.
    pub fn total(self) -> i64 {
        match self {
            ChargeContext::Planar => -12,
            ChargeContext::TriangleFree => -8,
        }
    }

    fn classes(self) -> Context {
        match self {
            ChargeContext::Planar => Context::Planar,
            ChargeContext::TriangleFree => Context::TriangleFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    /// Degree at least 7 to each `Y_5` neighbour: 1/4.
    HighDegreeToY5,
    /// End of the hex escape path to a `Y_6` vertex: alpha.
    EscapeDonor,
    /// `Y_5` vertex with three 4-adjacent `Y_3` neighbours to each: 1/3 - beta.
    Y53ToY3,
    /// Other vertex of degree at least 5 to each contiguous `Y_3`: 2/5 - beta.
    HeavyContiguousToY3,
    /// Vertex of degree at least 5 to each 5-adjacent `Y_3`: 1/10 - beta.
    FiveAdjacentToY3,
    /// Face of degree at least 5 to each incident `Y_3`: 1/2 - beta.
    LargeFaceToY3,
    /// Donor of the grid escape path to a `Y_4` vertex: alpha.
    GridEscapeDonor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum ElementId {
    Vertex(usize),
    Face(usize),
}

impl From<Donor> for ElementId {
    fn from(d: Donor) -> Self {
        match d {
            Donor::Vertex(v) => ElementId::Vertex(v),
            Donor::Face(f) => ElementId::Face(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct TransferRecord<S: Scalar> {
    pub rule: RuleId,
    pub donor: ElementId,
    pub recipient: usize,
    #[serde(serialize_with = "scalar::serialize")]
    pub amount: S,
    /// Escape path for the alpha rules, otherwise empty.
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Constants<S: Scalar> {
    #[serde(serialize_with = "scalar::serialize")]
    pub alpha: S,
    #[serde(serialize_with = "scalar::serialize")]
    pub beta: S,
}

impl<S: Scalar> Constants<S> {
    pub fn planar() -> Self {
        Constants { alpha: S::from_ratio(1, 872), beta: S::zero() }
    }

    pub fn triangle_free() -> Self {
        Constants { alpha: S::from_ratio(1, 360_720), beta: S::from_ratio(2186, 360_720) }
    }

    pub fn for_context(c: ChargeContext) -> Self {
        match c {
            ChargeContext::Planar => Self::planar(),
            ChargeContext::TriangleFree => Self::triangle_free(),
        }
    }

    /// Rule amount, derived from the constants.
    pub fn amount(&self, rule: RuleId) -> S {
        let b = self.beta.clone();
        match rule {
            RuleId::HighDegreeToY5 => S::from_ratio(1, 4),
            RuleId::EscapeDonor | RuleId::GridEscapeDonor => self.alpha.clone(),
            RuleId::Y53ToY3 => S::from_ratio(1, 3) - b,
            RuleId::HeavyContiguousToY3 => S::from_ratio(2, 5) - b,
            RuleId::FiveAdjacentToY3 => S::from_ratio(1, 10) - b,
            RuleId::LargeFaceToY3 => S::from_ratio(1, 2) - b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct ChargeLedger<S: Scalar> {
    pub context: ChargeContext,
    pub constants: Constants<S>,
    #[serde(serialize_with = "ser_vec")]
    pub initial_vertex: Vec<S>,
    #[serde(serialize_with = "ser_vec")]
    pub initial_face: Vec<S>,
    #[serde(serialize_with = "ser_vec")]
    pub vertex: Vec<S>,
    #[serde(serialize_with = "ser_vec")]
    pub face: Vec<S>,
    pub transfers: Vec<TransferRecord<S>>,
}

fn ser_vec<S: Scalar, Ser: serde::Serializer>(v: &[S], ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.collect_seq(v.iter().map(|x| x.render()))
}

fn sum<S: Scalar>(xs: &[S]) -> S {
    xs.iter().fold(S::zero(), |a, b| a + b.clone())
}

impl<S: Scalar> ChargeLedger<S> {
    fn new(context: ChargeContext, constants: Constants<S>, vertex: Vec<S>, face: Vec<S>) -> Self {
        ChargeLedger {
            context,
            constants,
            initial_vertex: vertex.clone(),
            initial_face: face.clone(),
            vertex,
            face,
            transfers: Vec::new(),
        }
    }

    pub fn initial_total(&self) -> S {
        sum(&self.initial_vertex) + sum(&self.initial_face)
    }

    pub fn total(&self) -> S {
        sum(&self.vertex) + sum(&self.face)
    }

    pub fn charge(&self, e: ElementId) -> &S {
        match e {
            ElementId::Vertex(v) => &self.vertex[v],
            ElementId::Face(f) => &self.face[f],
        }
    }

    fn slot(&mut self, e: ElementId) -> &mut S {
        match e {
            ElementId::Vertex(v) => &mut self.vertex[v],
            ElementId::Face(f) => &mut self.face[f],
        }
    }

    fn give(&mut self, rule: RuleId, donor: ElementId, recipient: usize, witnesses: Vec<usize>) {
        let amount = self.constants.amount(rule);
        let d = self.slot(donor);
        *d = d.clone() - amount.clone();
        let r = &mut self.vertex[recipient];
        *r = r.clone() + amount.clone();
        self.transfers.push(TransferRecord { rule, donor, recipient, amount, witnesses });
    }

    /// Final charges recomputed from the initial ones and the transfer log.
    pub fn replay(&self) -> (Vec<S>, Vec<S>) {
        let mut v = self.initial_vertex.clone();
        let mut f = self.initial_face.clone();
        for t in &self.transfers {
            match t.donor {
                ElementId::Vertex(x) => v[x] = v[x].clone() - t.amount.clone(),
                ElementId::Face(x) => f[x] = f[x].clone() - t.amount.clone(),
            }
            v[t.recipient] = v[t.recipient].clone() + t.amount.clone();
        }
        (v, f)
    }

    /// How often each element gave under the given rule.
    pub fn donations(&self, rule: RuleId) -> HashMap<ElementId, usize> {
        let mut out = HashMap::new();
        for t in self.transfers.iter().filter(|t| t.rule == rule) {
            *out.entry(t.donor).or_insert(0) += 1;
        }
        out
    }
}

pub fn init_planar_charges<S: Scalar>(g: &EmbeddedGraph) -> Result<ChargeLedger<S>> {
    if !g.is_triangulation()? {
        return Err(Error::NotTriangulation);
    }
    let v = (0..g.n()).map(|x| S::from_count(g.degree(x)) - S::from_count(6)).collect();
    Ok(ChargeLedger::new(ChargeContext::Planar, Constants::planar(), v, Vec::new()))
}

pub fn init_tf_charges<S: Scalar>(g: &EmbeddedGraph) -> Result<ChargeLedger<S>> {
    let faces = g.faces()?;
    if g.has_triangle() {
        return Err(Error::ContainsTriangle);
    }
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    let four = S::from_count(4);
    let v = (0..g.n()).map(|x| S::from_count(g.degree(x)) - four.clone()).collect();
    let f = faces.all().iter().map(|f| S::from_count(f.degree) - four.clone()).collect();
    Ok(ChargeLedger::new(ChargeContext::TriangleFree, Constants::triangle_free(), v, f))
}

fn require(report: &ClassificationReport, ctx: ChargeContext) -> Result<()> {
    if report.context != ctx.classes() {
        return Err(Error::WrongContext(format!("{} classification for {ctx:?} charges", report.context)));
    }
    if !report.is_exact() {
        return Err(Error::RequiresExactClassification);
    }
    Ok(())
}

pub fn transfer_planar<S: Scalar>(
    g: &EmbeddedGraph,
    mut ledger: ChargeLedger<S>,
    report: &ClassificationReport,
) -> Result<ChargeLedger<S>> {
    require(report, ChargeContext::Planar)?;
    for v in 0..g.n() {
        if g.degree(v) >= 7 {
            for &u in g.neighbors(v) {
                if report.in_y(u, 5) {
                    ledger.give(RuleId::HighDegreeToY5, ElementId::Vertex(v), u, Vec::new());
                }
            }
        }
    }
    for v in 0..g.n() {
        if report.in_y(v, 6) {
            let p = donor_path(g, v, GridKind::Hex)?.ok_or(Error::NoEscapePath(v))?;
            ledger.give(RuleId::EscapeDonor, p.donor.into(), v, p.path);
        }
    }
    Ok(ledger)
}

pub fn transfer_tf<S: Scalar>(
    g: &EmbeddedGraph,
    mut ledger: ChargeLedger<S>,
    report: &ClassificationReport,
) -> Result<ChargeLedger<S>> {
    require(report, ChargeContext::TriangleFree)?;
    let special = special_sets(g, report)?;
    let y3 = |u: usize| report.in_y(u, 3);
    for v in 0..g.n() {
        if g.degree(v) < 5 {
            continue;
        }
        if special.in_y53(v) {
            for &u in g.neighbors(v) {
                if y3(u) && four_adjacent(g, v, u)? {
                    ledger.give(RuleId::Y53ToY3, ElementId::Vertex(v), u, Vec::new());
                }
            }
        } else {
            for u in contiguous_vertices(g, v)? {
                if y3(u) {
                    ledger.give(RuleId::HeavyContiguousToY3, ElementId::Vertex(v), u, Vec::new());
                }
            }
        }
        for &u in g.neighbors(v) {
            if y3(u) && five_adjacent(g, v, u)? {
                ledger.give(RuleId::FiveAdjacentToY3, ElementId::Vertex(v), u, Vec::new());
            }
        }
    }
    for f in g.faces()?.all() {
        if f.degree >= 5 {
            let mut on: Vec<usize> = f.boundary.iter().copied().filter(|&u| y3(u)).collect();
            on.sort_unstable();
            on.dedup();
            for u in on {
                ledger.give(RuleId::LargeFaceToY3, ElementId::Face(f.id), u, Vec::new());
            }
        }
    }
    for v in 0..g.n() {
        if report.in_y(v, 4) {
            let p = donor_path(g, v, GridKind::Rect)?.ok_or(Error::NoEscapePath(v))?;
            ledger.give(RuleId::GridEscapeDonor, p.donor.into(), v, p.path);
        }
    }
    Ok(ledger)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundViolation {
    pub element: ElementId,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct AuditReport<S: Scalar> {
    pub context: ChargeContext,
    pub constants: Constants<S>,
    #[serde(serialize_with = "scalar::serialize")]
    pub initial_total: S,
    #[serde(serialize_with = "scalar::serialize")]
    pub final_total: S,
    /// Final total minus the Euler constant.
    #[serde(serialize_with = "scalar::serialize")]
    pub conservation_residual: S,
    pub replay_consistent: bool,
    pub x: usize,
    pub y: usize,
    /// `|Y| <= coefficient * |X|` (strict for triangle-free graphs).
    #[serde(serialize_with = "scalar::serialize")]
    pub counting_coefficient: S,
    pub counting_holds: bool,
    pub elements_checked: usize,
    /// X vertices meeting their lower bound with equality; the planar bound
    /// is strict.
    pub tight_x: Vec<usize>,
    pub violations: Vec<BoundViolation>,
    pub transfers: Vec<TransferRecord<S>>,
}

impl<S: Scalar> AuditReport<S> {
    pub fn passed(&self) -> bool {
        self.conservation_residual.is_zero()
            && self.replay_consistent
            && self.counting_holds
            && self.violations.is_empty()
            && (self.context == ChargeContext::TriangleFree || self.tight_x.is_empty())
    }
}

struct Audit<S: Scalar> {
    checked: usize,
    tight: Vec<usize>,
    violations: Vec<BoundViolation>,
    _s: std::marker::PhantomData<S>,
}

impl<S: Scalar> Audit<S> {
    fn at_least(&mut self, element: ElementId, check: &str, value: &S, bound: &S) {
        self.checked += 1;
        if value < bound {
            self.violations.push(BoundViolation {
                element,
                check: check.to_string(),
                detail: format!("{} < {}", value.render(), bound.render()),
            });
        }
    }

    fn cap(&mut self, element: ElementId, check: &str, count: usize, cap: usize) {
        if count > cap {
            self.violations.push(BoundViolation {
                element,
                check: check.to_string(),
                detail: format!("{count} donations, cap {cap}"),
            });
        }
    }
}

fn finish<S: Scalar>(
    ledger: &ChargeLedger<S>,
    report: &ClassificationReport,
    audit: Audit<S>,
    coefficient: S,
    strict: bool,
) -> AuditReport<S> {
    let (x, y) = (report.x_count(), report.y_count());
    let rhs = coefficient.clone() * S::from_count(x);
    let lhs = S::from_count(y);
    let counting_holds = if strict { lhs < rhs } else { lhs <= rhs };
    let (rv, rf) = ledger.replay();
    let final_total = ledger.total();
    AuditReport {
        context: ledger.context,
        constants: ledger.constants.clone(),
        initial_total: ledger.initial_total(),
        conservation_residual: final_total.clone() - S::from_ratio(ledger.context.total(), 1),
        final_total,
        replay_consistent: rv == ledger.vertex && rf == ledger.face,
        x,
        y,
        counting_coefficient: coefficient,
        counting_holds,
        elements_checked: audit.checked,
        tight_x: audit.tight,
        violations: audit.violations,
        transfers: ledger.transfers.clone(),
    }
}

fn amounts_ok<S: Scalar>(ledger: &ChargeLedger<S>, audit: &mut Audit<S>) {
    for t in &ledger.transfers {
        if t.amount != ledger.constants.amount(t.rule) {
            audit.violations.push(BoundViolation {
                element: t.donor,
                check: "transfer_amount".into(),
                detail: format!("{:?} moved {}", t.rule, t.amount.render()),
            });
        }
    }
}

pub fn audit_planar<S: Scalar>(
    g: &EmbeddedGraph,
    ledger: &ChargeLedger<S>,
    report: &ClassificationReport,
) -> Result<AuditReport<S>> {
    require(report, ChargeContext::Planar)?;
    let a = ledger.constants.alpha.clone();
    let mut audit = Audit { checked: 0, tight: Vec::new(), violations: Vec::new(), _s: Default::default() };
    amounts_ok(ledger, &mut audit);
    let x_bound = -S::from_count(3) - S::from_count(93) * a.clone();
    for v in 0..g.n() {
        let c = &ledger.vertex[v];
        if report.is_x(v) {
            audit.at_least(ElementId::Vertex(v), "x_lower_bound", c, &x_bound);
            if *c == x_bound {
                audit.tight.push(v);
            }
        } else {
            audit.at_least(ElementId::Vertex(v), "y_lower_bound", c, &a);
        }
        let d = g.degree(v);
        if d >= 7 {
            let y5 = g.neighbors(v).iter().filter(|&&u| report.in_y(u, 5)).count();
            audit.cap(ElementId::Vertex(v), "y5_neighbours", y5, d / 2);
        }
    }
    for (donor, count) in ledger.donations(RuleId::EscapeDonor) {
        if let ElementId::Vertex(v) = donor {
            audit.cap(donor, "escape_donations", count, 31 * g.degree(v));
        }
    }
    // -12 >= (-3 - 93 alpha)|X| + alpha |Y|
    let coefficient = S::from_count(93) + S::from_count(3) / a;
    Ok(finish(ledger, report, audit, coefficient, false))
}

pub fn audit_tf<S: Scalar>(
    g: &EmbeddedGraph,
    ledger: &ChargeLedger<S>,
    report: &ClassificationReport,
) -> Result<AuditReport<S>> {
    require(report, ChargeContext::TriangleFree)?;
    let a = ledger.constants.alpha.clone();
    let b = ledger.constants.beta.clone();
    let mut audit = Audit { checked: 0, tight: Vec::new(), violations: Vec::new(), _s: Default::default() };
    amounts_ok(ledger, &mut audit);
    let x_bound = -S::from_count(2) - b.clone();
    for v in 0..g.n() {
        let c = &ledger.vertex[v];
        if report.is_x(v) {
            audit.at_least(ElementId::Vertex(v), "x_lower_bound", c, &x_bound);
            if *c == x_bound {
                audit.tight.push(v);
            }
        } else {
            audit.at_least(ElementId::Vertex(v), "y_lower_bound", c, &a);
        }
    }
    let faces = g.faces()?;
    for f in faces.all() {
        audit.at_least(ElementId::Face(f.id), "face_lower_bound", &ledger.face[f.id], &S::zero());
    }
    for (donor, count) in ledger.donations(RuleId::GridEscapeDonor) {
        match donor {
            ElementId::Vertex(v) => audit.cap(donor, "grid_escape_donations", count, 1093 * g.degree(v)),
            ElementId::Face(f) => audit.cap(donor, "grid_escape_donations", count, 728 * faces.get(f).degree),
        }
    }
    // -8 >= (-2 - beta)|X| + alpha |Y|
    let coefficient = (S::from_count(2) + b) / a;
    Ok(finish(ledger, report, audit, coefficient, true))
}

/// Initial charges, transfers and audit in one go.
pub fn discharge<S: Scalar>(
    g: &EmbeddedGraph,
    report: &ClassificationReport,
    constants: Option<Constants<S>>,
) -> Result<AuditReport<S>> {
    match report.context {
        Context::Planar => {
            let mut l = init_planar_charges::<S>(g)?;
            if let Some(c) = constants {
                l.constants = c;
            }
            let l = transfer_planar(g, l, report)?;
            audit_planar(g, &l, report)
        }
        Context::TriangleFree => {
            let mut l = init_tf_charges::<S>(g)?;
            if let Some(c) = constants {
                l.constants = c;
            }
            let l = transfer_tf(g, l, report)?;
            audit_tf(g, &l, report)
        }
        Context::Girth5 => Err(Error::WrongContext("the girth-5 classes are counted without charges".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::classify::{classify_planar, classify_triangle_free, ClassifyOptions, Mode};
    use crate::graph::generate::{generate, FamilySpec};
    use crate::Rational;

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn planar_initial_charges() {
        for (name, each) in [("tetrahedron", -3), ("octahedron", -2), ("icosahedron", -1)] {
            let l = init_planar_charges::<Rational>(&fam(name)).unwrap();
            assert!(l.vertex.iter().all(|c| *c == q(each, 1)));
            assert_eq!(l.total(), q(-12, 1));
        }
        assert!(matches!(init_planar_charges::<Rational>(&fam("cube")), Err(Error::NotTriangulation)));
    }

    #[test]
    fn tf_initial_charges() {
        let l = init_tf_charges::<Rational>(&fam("rect_grid:3x3")).unwrap();
        assert_eq!(l.total(), q(-8, 1));
        assert_eq!(l.vertex[4], q(0, 1));
        assert_eq!(l.vertex[0], q(-2, 1));
        assert_eq!(l.vertex[1], q(-1, 1));
        assert!(l.face.contains(&q(4, 1)));
        assert!(matches!(init_tf_charges::<Rational>(&fam("path:3")), Err(Error::NotTwoConnected)));
        assert!(matches!(init_tf_charges::<Rational>(&fam("octahedron")), Err(Error::ContainsTriangle)));
    }

    #[test]
    fn solids_audit_cleanly() {
        let ico = fam("icosahedron");
        let r = classify_planar(&ico, ClassifyOptions::new(Mode::Exact)).unwrap();
        let a = discharge::<Rational>(&ico, &r, None).unwrap();
        assert!(a.passed() && a.transfers.is_empty());
        assert_eq!(a.counting_coefficient, q(2709, 1));
        let cube = fam("cube");
        let r = classify_triangle_free(&cube, ClassifyOptions::new(Mode::Exact)).unwrap();
        let a = discharge::<Rational>(&cube, &r, None).unwrap();
        assert!(a.passed() && a.transfers.is_empty());
        assert_eq!(a.final_total, q(-8, 1));
        assert_eq!(a.counting_coefficient, q(723_626, 1));
        let rules = classify_triangle_free(&cube, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        assert!(matches!(discharge::<Rational>(&cube, &rules, None), Err(Error::RequiresExactClassification)));
    }

    #[test]
    fn hand_labelled_y3_on_large_faces() {
        // a square and a pentagon sharing the edge 0-3, inside a 7-face
        let g = EmbeddedGraph::from_faces(7, &[vec![0, 1, 2, 3], vec![0, 3, 4, 5, 6], vec![0, 6, 5, 4, 3, 2, 1]])
            .unwrap();
        let mut r = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
        r.vertices[0].label.x = false;
        r.vertices[0].evidence = crate::detect::classify::Evidence::ExactRefuted;
        let ledger = transfer_tf(&g, init_tf_charges::<Rational>(&g).unwrap(), &r).unwrap();
        let c = Constants::<Rational>::triangle_free();
        let faces = g.faces().unwrap();
        let mut degrees: Vec<usize> = ledger
            .transfers
            .iter()
            .map(|t| {
                assert_eq!((t.rule, t.recipient, &t.amount), (RuleId::LargeFaceToY3, 0, &(q(1, 2) - c.beta.clone())));
                match t.donor {
                    ElementId::Face(f) => faces.get(f).degree,
                    ElementId::Vertex(_) => panic!("vertex donor"),
                }
            })
            .collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![5, 7]);
        assert_eq!(ledger.total(), q(-8, 1));
    }

    #[test]
    fn default_constants() {
        let c = Constants::<Rational>::triangle_free();
        assert_eq!(c.beta, c.alpha.clone() * q(2186, 1));
        assert_eq!(c.amount(RuleId::LargeFaceToY3), q(1, 2) - c.beta.clone());
        let f = Constants::<f64>::planar();
        assert!((f.alpha - 1.0 / 872.0).abs() < 1e-15);
    }
}
