mod common;

use common::{family, stacked_icosahedron};
use firecontain::detect::classify::{classify_planar, classify_triangle_free, ClassifyOptions, Mode};
use firecontain::discharge::{discharge, Constants, ElementId, RuleId};
use firecontain::graph::random::{random_triangle_free, random_triangulation};
use firecontain::{Rational, Scalar};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

#[test]
fn y5_gadget_takes_a_quarter_from_each_heavy_neighbour() {
    let g = stacked_icosahedron(false, 5);
    let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let a = discharge::<Rational>(&g, &r, None).unwrap();
    assert!(a.passed(), "{:?}", a.violations);
    assert_eq!(a.transfers.len(), 5);
    for t in &a.transfers {
        assert_eq!((t.rule, t.recipient, t.amount.clone()), (RuleId::HighDegreeToY5, 0, q(1, 4)));
        let ElementId::Vertex(d) = t.donor else { panic!("face donor") };
        assert!(g.degree(d) >= 7 && g.adjacent(d, 0));
    }
    // -1 + 5/4
    assert_eq!(a.final_total, q(-12, 1));
}

#[test]
fn y6_gadget_draws_alpha_along_its_escape_path() {
    let g = stacked_icosahedron(true, 2);
    let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let a = discharge::<Rational>(&g, &r, None).unwrap();
    assert!(a.passed(), "{:?}", a.violations);
    assert_eq!(a.transfers.len(), 1);
    let t = &a.transfers[0];
    assert_eq!((t.rule, t.recipient, t.amount.clone()), (RuleId::EscapeDonor, 0, q(1, 872)));
    assert!(!t.witnesses.is_empty());
}

#[test]
fn floating_point_run_tracks_the_exact_one() {
    let g = stacked_icosahedron(false, 5);
    let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let exact = discharge::<Rational>(&g, &r, None).unwrap();
    let approx = discharge::<f64>(&g, &r, None).unwrap();
    assert_eq!(exact.transfers.len(), approx.transfers.len());
    assert!((approx.final_total + 12.0).abs() < 1e-9);
}

#[test]
fn alpha_above_the_y5_surplus_is_caught() {
    // the Y_5 start ends at -1 + 5/4 = 1/4, below a required alpha of 1/2
    let g = stacked_icosahedron(false, 5);
    let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let c = Constants { alpha: q(1, 2), beta: q(0, 1) };
    let a = discharge::<Rational>(&g, &r, Some(c)).unwrap();
    assert_eq!(a.conservation_residual, q(0, 1));
    assert_eq!(a.violations.len(), 1);
    assert_eq!((a.violations[0].element, a.violations[0].check.as_str()), (ElementId::Vertex(0), "y_lower_bound"));
}

#[test]
fn grid_runs_have_no_transfers() {
    let g = family("rect_grid:6x6");
    let r = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let a = discharge::<Rational>(&g, &r, None).unwrap();
    assert!(a.passed() && a.transfers.is_empty());
    assert_eq!(a.y, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planar_audits_conserve_and_pass(seed in 0u64..10_000, n in 4usize..40) {
        let g = random_triangulation(n, seed).unwrap();
        let r = classify_planar(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
        let a = discharge::<Rational>(&g, &r, None).unwrap();
        prop_assert_eq!(a.final_total.clone(), q(-12, 1));
        prop_assert!(a.replay_consistent);
        prop_assert!(a.passed());
    }

    #[test]
    fn triangle_free_audits_conserve_and_pass(seed in 0u64..10_000, n in 4usize..40) {
        let g = random_triangle_free(n, seed).unwrap();
        let r = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
        let a = discharge::<Rational>(&g, &r, None).unwrap();
        prop_assert_eq!(a.final_total.clone(), q(-8, 1));
        prop_assert!(a.passed());
    }
}
