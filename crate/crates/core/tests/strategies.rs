mod common;

use common::family;
use firecontain::detect::classify::{classify, ClassifyOptions, Context, Mode};
use firecontain::fire::Schedule;
use firecontain::graph::random::random_triangle_free;
use firecontain::strategy::config::ConfigStrategy;
use firecontain::strategy::{theorem_dispatch, Dispatcher, LatticeStrategy, Strategy};
use firecontain::{Error, FamilySpec};
use proptest::prelude::*;

fn centre(spec: &str) -> usize {
    spec.parse::<FamilySpec>().unwrap().center()
}

#[test]
fn hex_plan_contains_on_a_larger_patch() {
    let g = family("hex_patch:5");
    let t = LatticeStrategy::hex()
        .plan(&g, centre("hex_patch:5"), Schedule::front_loaded(4, 3))
        .unwrap()
        .verify(&g)
        .unwrap();
    assert!(t.burned_total() <= 6);
    assert_eq!(t.saved, g.n() - t.burned_total());
}

#[test]
fn rect_plan_contains_on_a_larger_grid() {
    let g = family("rect_grid:21x21");
    let t = LatticeStrategy::rect()
        .plan(&g, centre("rect_grid:21x21"), Schedule::constant(2))
        .unwrap()
        .verify(&g)
        .unwrap();
    assert!(t.burned_total() <= 18 && t.rounds.len() <= 8);
}

#[test]
fn lattice_plans_need_room() {
    let hex = family("hex_patch:2");
    let r = LatticeStrategy::hex().plan(&hex, centre("hex_patch:2"), Schedule::front_loaded(4, 3));
    assert!(matches!(r, Err(Error::NotApplicable(_))));
    let rect = family("rect_grid:5x5");
    let r = LatticeStrategy::rect().plan(&rect, centre("rect_grid:5x5"), Schedule::constant(2));
    assert!(matches!(r, Err(Error::NotApplicable(_))));
    let big = family("rect_grid:17x17");
    let r = LatticeStrategy::rect().plan(&big, centre("rect_grid:17x17"), Schedule::constant(1));
    assert!(matches!(r, Err(Error::NotApplicable(_))));
}

#[test]
fn cube_configuration_plans_burn_two() {
    let cube = family("cube");
    for v in 0..8 {
        let t = ConfigStrategy::new(None).plan(&cube, v, Schedule::constant(2)).unwrap().verify(&cube).unwrap();
        assert!(t.burned_total() <= 2);
    }
}

#[test]
fn dispatcher_checks_the_schedule() {
    let g = family("icosahedron");
    let r = classify(&g, Context::Planar, ClassifyOptions::new(Mode::RulesOnly)).unwrap();
    let d = Dispatcher { report: &r };
    assert!(matches!(d.plan(&g, 0, Schedule::constant(2)), Err(Error::NotApplicable(_))));
    let t = d.plan(&g, 0, Schedule::front_loaded(4, 3)).unwrap().verify(&g).unwrap();
    assert_eq!(t.saved, 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Dispatched plans respect the round budgets and their burn bound.
    #[test]
    fn dispatched_plans_keep_their_promise(seed in 0u64..10_000, n in 6usize..32) {
        let g = random_triangle_free(n, seed).unwrap();
        let r = classify(&g, Context::TriangleFree, ClassifyOptions::new(Mode::Exact)).unwrap();
        for v in 0..n {
            let p = theorem_dispatch(&g, &r, v).unwrap();
            let t = p.verify(&g).unwrap();
            if r.is_x(v) {
                prop_assert!(t.burned_total() <= r.contract(v).unwrap());
            } else {
                prop_assert!(p.rounds.is_empty());
            }
        }
    }
}
