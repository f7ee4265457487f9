//! Surviving rates: the average, over uniformly random starts, of the
//! fraction of vertices saved. Exact values come from the solver; lower
//! bounds come from simulating the class strategies.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::detect::classify::{classify, ClassificationReport, ClassifyOptions, Context, Mode};
use crate::error::{Error, Result};
use crate::fire::search::sn_exact;
use crate::fire::Schedule;
use crate::graph::augment::augment_maximal_planar;
use crate::graph::EmbeddedGraph;
use crate::scalar::{self, Scalar};
use crate::strategy::theorem_dispatch;

/// Largest graph for which certification tries the exact rate first.
pub const EXACT_RATE_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateMode {
    Exact,
    StrategyLowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StartResult {
    pub start: usize,
    pub saved: usize,
    /// The saved count is the true optimum for this start.
    pub optimal: bool,
    pub strategy: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Girth at least 5, two firefighters: rate at least 1/22.
    Girth5K2,
    /// Planar, four then three firefighters: rate at least 1/2712.
    Planar43,
    /// Triangle-free planar, two firefighters: rate at least 1/723636.
    TriangleFreeK2,
    /// `K_{2,m}` with one firefighter: rate at most 2/(m+2).
    K2mUpper,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Girth5K2 => "girth5_k2",
            Theorem::Planar43 => "planar_4_3",
            Theorem::TriangleFreeK2 => "triangle_free_k2",
            Theorem::K2mUpper => "k2m_upper",
        }
    }

    pub fn schedule(self) -> Schedule {
        match self {
            Theorem::Girth5K2 | Theorem::TriangleFreeK2 => Schedule::constant(2),
            Theorem::Planar43 => Schedule::front_loaded(4, 3),
            Theorem::K2mUpper => Schedule::constant(1),
        }
    }

    /// Threshold on the rate; `n` matters only for `K2mUpper`.
    pub fn threshold<S: Scalar>(self, n: usize) -> S {
        match self {
            Theorem::Girth5K2 => S::from_ratio(1, 22),
            Theorem::Planar43 => S::from_ratio(1, 2712),
            Theorem::TriangleFreeK2 => S::from_ratio(1, 723_636),
            Theorem::K2mUpper => S::from_ratio(2, n as i64),
        }
    }

    pub fn is_upper(self) -> bool {
        self == Theorem::K2mUpper
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "girth5_k2" | "girth5" | "thm2" | "thm2_girth5" => Ok(Theorem::Girth5K2),
            "planar_4_3" | "planar" | "thm3" | "thm3_planar" => Ok(Theorem::Planar43),
            "triangle_free_k2" | "triangle_free" | "thm5" | "thm5_trianglefree" => Ok(Theorem::TriangleFreeK2),
            "k2m_upper" | "k2n_upper" => Ok(Theorem::K2mUpper),
            _ => Err(Error::BadParameter(format!("unknown theorem '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct RateReport<S: Scalar> {
    pub instance: String,
    pub n: usize,
    pub schedule: Schedule,
    pub mode: RateMode,
    /// Every per-start value is final (no search hit its node limit).
    pub complete: bool,
    pub per_start: Vec<StartResult>,
    pub total_saved: usize,
    #[serde(serialize_with = "scalar::serialize")]
    pub rate: S,
    pub theorem: Option<Theorem>,
    #[serde(serialize_with = "scalar::serialize_opt")]
    pub threshold: Option<S>,
    pub verdict: Option<Verdict>,
    /// The rate was computed on an edge-augmented supergraph, which can only
    /// lower it.
    pub augmented: bool,
}

impl<S: Scalar> RateReport<S> {
    fn new(instance: &str, g: &EmbeddedGraph, schedule: Schedule, mode: RateMode, per_start: Vec<StartResult>) -> Self {
        let total_saved = per_start.iter().map(|s| s.saved).sum();
        let n = g.n();
        RateReport {
            instance: instance.to_string(),
            n,
            schedule,
            mode,
            complete: per_start.iter().all(|s| s.optimal) || mode == RateMode::StrategyLowerBound,
            rate: S::from_count(total_saved) / S::from_count(n * n),
            per_start,
            total_saved,
            theorem: None,
            threshold: None,
            verdict: None,
            augmented: false,
        }
    }

    pub const CSV_HEADER: &'static str = "instance,n,mode,rate_num,rate_den,threshold,verdict";

    pub fn csv_row(&self) -> String {
        let r = self.rate.render();
        let (num, den) = r.split_once('/').unwrap_or((r.as_str(), "1"));
        let mode = match self.mode {
            RateMode::Exact => "exact",
            RateMode::StrategyLowerBound => "strategy_lower_bound",
        };
        let threshold = self.threshold.as_ref().map(|t| t.render()).unwrap_or_default();
        let verdict = match self.verdict {
            Some(Verdict::Pass) => "pass",
            Some(Verdict::Fail) => "fail",
            None => "",
        };
        format!("{},{},{mode},{num},{den},{threshold},{verdict}", self.instance, self.n)
    }
}

/// Exact rate; starts whose search hits `node_limit` contribute the best
/// value found and mark the report incomplete.
pub fn surviving_rate_exact<S: Scalar>(
    instance: &str,
    g: &EmbeddedGraph,
    schedule: Schedule,
    node_limit: u64,
) -> Result<RateReport<S>> {
    let per_start = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let r = sn_exact(g, v, schedule, node_limit)?;
            Ok(StartResult { start: v, saved: r.saved, optimal: r.optimal, strategy: "exact".into() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport::new(instance, g, schedule, RateMode::Exact, per_start))
}

/// Rate of the class strategy: X starts are simulated, Y starts save 0.
pub fn surviving_rate_lower_bound<S: Scalar>(
    instance: &str,
    g: &EmbeddedGraph,
    report: &ClassificationReport,
) -> Result<RateReport<S>> {
    let per_start = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let plan = theorem_dispatch(g, report, v)?;
            let t = plan.verify(g)?;
            Ok(StartResult { start: v, saved: t.saved, optimal: false, strategy: plan.strategy })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport::new(instance, g, report.context.schedule(), RateMode::StrategyLowerBound, per_start))
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub classify: ClassifyOptions,
    pub exact_max_n: usize,
    pub node_limit: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            classify: ClassifyOptions::new(Mode::Exact),
            exact_max_n: EXACT_RATE_MAX_N,
            node_limit: crate::fire::search::DEFAULT_NODE_LIMIT,
        }
    }
}

/// The hub pair of `K_{2,m}`, if `g` is one.
pub fn k2m_hubs(g: &EmbeddedGraph) -> Option<(usize, usize)> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let m = n - 2;
    let hubs: Vec<usize> = (0..n).filter(|&v| g.degree(v) == m).collect();
    let (a, b) = match hubs.as_slice() {
        [a, b] if !g.adjacent(*a, *b) => (*a, *b),
        // m = 2 gives a 4-cycle: any two opposite vertices are hubs
        _ if m == 2 && n == 4 && (0..4).all(|v| g.degree(v) == 2) => {
            let a = 0;
            let b = (0..4).find(|&v| v != a && !g.adjacent(a, v))?;
            (a, b)
        }
        _ => return None,
    };
    let ok = (0..n).filter(|&v| v != a && v != b).all(|v| g.degree(v) == 2 && g.adjacent(v, a) && g.adjacent(v, b));
    ok.then_some((a, b))
}

fn check_hypothesis(g: &EmbeddedGraph, theorem: Theorem) -> Result<()> {
    let fail = |why: &str| Err(Error::HypothesisViolated(format!("{theorem}: {why}")));
    g.faces()?;
    if g.n() < 2 {
        return fail("needs at least two vertices");
    }
    match theorem {
        Theorem::Girth5K2 if !g.girth().at_least(5) => fail("girth below 5"),
        Theorem::TriangleFreeK2 if g.has_triangle() => fail("graph has a triangle"),
        Theorem::K2mUpper if k2m_hubs(g).is_none() => fail("graph is not K_{2,m}"),
        _ => Ok(()),
    }
}

/// Computes the best available rate and compares it with the theorem's
/// threshold. Each start is credited with at least the `min(b1, n - 1)`
/// vertices that the first round's protections save outright.
pub fn certify_bound<S: Scalar>(
    instance: &str,
    g: &EmbeddedGraph,
    theorem: Theorem,
    opts: CertifyOptions,
) -> Result<RateReport<S>> {
    check_hypothesis(g, theorem)?;
    let schedule = theorem.schedule();
    let mut report = if theorem.is_upper() {
        surviving_rate_exact::<S>(instance, g, schedule, opts.node_limit)?
    } else {
        let exact = if g.n() <= opts.exact_max_n {
            Some(surviving_rate_exact::<S>(instance, g, schedule, opts.node_limit)?).filter(|r| r.complete)
        } else {
            None
        };
        match exact {
            Some(r) => r,
            None => lower_bound_for(instance, g, theorem, opts)?,
        }
    };
    let threshold: S = theorem.threshold(g.n());
    let pass = if theorem.is_upper() {
        report.complete && report.rate <= threshold
    } else {
        report.rate >= threshold
    };
    report.theorem = Some(theorem);
    report.threshold = Some(threshold);
    report.verdict = Some(if pass { Verdict::Pass } else { Verdict::Fail });
    Ok(report)
}

fn lower_bound_for<S: Scalar>(
    instance: &str,
    g: &EmbeddedGraph,
    theorem: Theorem,
    opts: CertifyOptions,
) -> Result<RateReport<S>> {
    let context = match theorem {
        Theorem::Girth5K2 => Context::Girth5,
        Theorem::Planar43 => Context::Planar,
        Theorem::TriangleFreeK2 => Context::TriangleFree,
        Theorem::K2mUpper => unreachable!("upper bounds are exact"),
    };
    let (host, augmented) = if context == Context::Planar && !g.is_triangulation()? {
        (augment_maximal_planar(g)?, true)
    } else {
        (g.clone(), false)
    };
    let classes = classify(&host, context, opts.classify)?;
    let mut report = surviving_rate_lower_bound::<S>(instance, &host, &classes)?;
    let floor = theorem.schedule().first.min(g.n() - 1);
    for s in &mut report.per_start {
        if s.saved < floor {
            s.saved = floor;
            s.strategy = "first_round_only".into();
        }
    }
    report.total_saved = report.per_start.iter().map(|s| s.saved).sum();
    report.rate = S::from_count(report.total_saved) / S::from_count(g.n() * g.n());
    report.augmented = augmented;
    Ok(report)
}

/// Lower bound on the girth-5 rate that the counting argument gives once
/// `y_3 + y_4 <= 20 (x_2 + x_3)`: every X start saves `n - 2`.
pub fn girth5_counting_bound<S: Scalar>(n: usize) -> S {
    S::from_ratio(n as i64 - 2, 21 * n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};
    use crate::Rational;

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn exact_small_rates() {
        let lim = crate::fire::search::DEFAULT_NODE_LIMIT;
        let r = surviving_rate_exact::<Rational>("star:4", &fam("star:4"), Schedule::constant(2), lim).unwrap();
        assert_eq!(r.rate, q(11, 16));
        let r = surviving_rate_exact::<Rational>("k23", &fam("complete_bipartite_2_m:3"), Schedule::constant(1), lim)
            .unwrap();
        assert_eq!(r.rate, q(2, 5));
        let r = surviving_rate_exact::<Rational>("p2", &fam("path:2"), Schedule::constant(1), lim).unwrap();
        assert_eq!(r.rate, q(1, 2));
    }

    #[test]
    fn lower_bounds_on_solids() {
        let dod = fam("dodecahedron");
        let c = crate::detect::classify::classify_girth5(&dod).unwrap();
        assert_eq!(surviving_rate_lower_bound::<Rational>("d", &dod, &c).unwrap().rate, q(9, 10));
        let ico = fam("icosahedron");
        let c = crate::detect::classify::classify_planar(&ico, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        assert_eq!(surviving_rate_lower_bound::<Rational>("i", &ico, &c).unwrap().rate, q(5, 6));
    }

    #[test]
    fn certification() {
        let r = certify_bound::<Rational>("d", &fam("dodecahedron"), Theorem::Girth5K2, CertifyOptions::default())
            .unwrap();
        assert_eq!(r.verdict, Some(Verdict::Pass));
        assert!(r.rate >= q(9, 10));
        let r = certify_bound::<Rational>("k28", &fam("complete_bipartite_2_m:8"), Theorem::K2mUpper, CertifyOptions::default())
            .unwrap();
        assert_eq!(r.verdict, Some(Verdict::Pass));
        assert!(r.rate <= q(2, 10));
        assert!(matches!(
            certify_bound::<Rational>("c", &fam("cube"), Theorem::Girth5K2, CertifyOptions::default()),
            Err(Error::HypothesisViolated(_))
        ));
        assert_eq!(k2m_hubs(&fam("cycle:4")), Some((0, 2)));
        assert!(k2m_hubs(&fam("cube")).is_none());
    }
}
