mod common;

use common::{family, stacked_icosahedron};
use firecontain::detect::claims::verify_structural_claims;
use firecontain::detect::classify::{
    classify, classify_girth5, classify_planar, classify_triangle_free, special_sets, ClassifyOptions, Context,
    Evidence, Label, Mode,
};
use firecontain::detect::configs::{detect_local_configs, ConfigId};
use firecontain::graph::augment::augment_maximal_planar;
use firecontain::graph::random::{random_triangle_free, random_triangulation};
use firecontain::Error;
use proptest::prelude::*;

#[test]
fn dodecahedron_starts_are_x3() {
    let r = classify_girth5(&family("dodecahedron")).unwrap();
    assert_eq!(r.count(Label::x(3)), 20);
    assert!(matches!(classify_girth5(&family("cube")), Err(Error::GirthTooSmall { found: 4, .. })));
}

#[test]
fn hex_patch_interior_uses_the_lattice_plan() {
    let spec = "hex_patch:5".parse::<firecontain::FamilySpec>().unwrap();
    let g = augment_maximal_planar(&family("hex_patch:5")).unwrap();
    let r = classify_planar(&g, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
    let centre = &r.vertices[spec.center()];
    assert_eq!(centre.label, Label::x(6));
    match &centre.evidence {
        Evidence::Config { matched } => assert_eq!(matched.config, ConfigId::HexNeighbourhood),
        other => panic!("unexpected evidence {other:?}"),
    }
}

#[test]
fn stacked_gadgets_have_y_starts() {
    let y5 = stacked_icosahedron(false, 5);
    let r = classify_planar(&y5, ClassifyOptions::new(Mode::Exact)).unwrap();
    assert_eq!((y5.n(), r.label(0)), (37, Label::y(5)));
    assert!(matches!(r.vertices[0].evidence, Evidence::ExactRefuted));
    let y6 = stacked_icosahedron(true, 2);
    let r = classify_planar(&y6, ClassifyOptions::new(Mode::Exact)).unwrap();
    assert_eq!((y6.n(), r.label(0)), (25, Label::y(6)));
    // one fewer round of stacking leaves a cheap containment
    let r = classify_planar(&stacked_icosahedron(false, 4), ClassifyOptions::new(Mode::Exact)).unwrap();
    assert!(r.is_x(0));
}

#[test]
fn grid_corner_and_centre() {
    let g = family("rect_grid:9x9");
    let r = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    assert_eq!(r.x_count(), 81);
    // corners have degree 2, so their neighbours are protected at once; the
    // boundary vertex next to a corner has a low neighbour
    assert_eq!(r.contract(0), Some(1));
    assert!(detect_local_configs(&g, 1).unwrap().iter().any(|m| m.config == ConfigId::LowNeighbour));
}

#[test]
fn special_sets_need_exact_mode() {
    let g = family("cube");
    let rules = classify_triangle_free(&g, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
    assert!(matches!(special_sets(&g, &rules), Err(Error::RequiresExactClassification)));
    assert!(matches!(verify_structural_claims(&g, &rules), Err(Error::RequiresExactClassification)));
    let exact = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
    let s = special_sets(&g, &exact).unwrap();
    assert!(s.y32.is_empty() && s.y53.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Rule and configuration evidence is sound: whatever rules-only mode
    /// labels X stays X under exact classification, and the labels cover
    /// every vertex once.
    #[test]
    fn rules_only_x_is_exact_x(seed in 0u64..10_000, n in 4usize..36) {
        let g = random_triangulation(n, seed).unwrap();
        let rules = classify(&g, Context::Planar, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
        let exact = classify(&g, Context::Planar, ClassifyOptions::new(Mode::Exact)).unwrap();
        prop_assert_eq!(exact.x_count() + exact.y_count(), n);
        for v in 0..n {
            prop_assert!(!rules.is_x(v) || exact.is_x(v));
            prop_assert_eq!(rules.label(v).degree, exact.label(v).degree);
        }
    }

    #[test]
    fn triangle_free_claims_hold(seed in 0u64..10_000, n in 8usize..30) {
        let g = random_triangle_free(n, seed).unwrap();
        let r = classify_triangle_free(&g, ClassifyOptions::new(Mode::Exact)).unwrap();
        prop_assert!(verify_structural_claims(&g, &r).unwrap().passed());
    }
}
