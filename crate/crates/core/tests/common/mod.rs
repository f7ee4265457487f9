//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use firecontain::fire::Schedule;
use firecontain::graph::format::parse_graph6;
use firecontain::EmbeddedGraph;

pub fn corpus_upto7() -> Vec<EmbeddedGraph> {
    parse_graph6(include_bytes!("../data/connected_upto7.g6")).expect("stored corpus parses")
}

/// Best saved count by trying every protection set of every size up to the
/// budget in every round, with no restriction to vertices near the fire.
pub fn brute_force_sn(g: &EmbeddedGraph, start: usize, schedule: Schedule) -> usize {
    assert!(g.n() <= 16);
    let nbr: Vec<u32> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut memo = HashMap::new();
    brute(&nbr, g.n(), 1 << start, 0, 1, schedule, &mut memo)
}

fn spread(nbr: &[u32], burning: u32, protected: u32) -> u32 {
    let mut reach = 0;
    for (v, &m) in nbr.iter().enumerate() {
        if burning & (1 << v) != 0 {
            reach |= m;
        }
    }
    reach & !burning & !protected
}

fn brute(
    nbr: &[u32],
    n: usize,
    burning: u32,
    protected: u32,
    round: usize,
    schedule: Schedule,
    memo: &mut HashMap<(u32, u32, bool), usize>,
) -> usize {
    if spread(nbr, burning, protected) == 0 {
        return n - burning.count_ones() as usize;
    }
    let key = (burning, protected, round == 1);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let all = (1u32 << n) - 1;
    let free = all & !burning & !protected;
    let budget = schedule.budget(round);
    let mut best = 0;
    // every subset of the free vertices with at most `budget` elements
    let mut sub = free;
    loop {
        if (sub.count_ones() as usize) <= budget {
            let p = protected | sub;
            let b = burning | spread(nbr, burning, p);
            best = best.max(brute(nbr, n, b, p, round + 1, schedule, memo));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    memo.insert(key, best);
    best
}

use firecontain::graph::augment::augment_maximal_planar;
use firecontain::graph::random::{random_girth5, random_triangle_free, random_triangulation};
use firecontain::{generate, FamilySpec};

pub fn family(spec: &str) -> EmbeddedGraph {
    generate(&spec.parse::<FamilySpec>().expect("family spec")).expect("family generates")
}

/// Named maximal planar instances: the solids, augmented hex patches of
/// radius 2 to 5, two stacked icosahedra with a Y start and 100 random
/// triangulations on at most 40 vertices.
pub fn planar_suite() -> Vec<(String, EmbeddedGraph)> {
    let mut out: Vec<(String, EmbeddedGraph)> = ["tetrahedron", "octahedron", "icosahedron"]
        .iter()
        .map(|s| (s.to_string(), family(s)))
        .collect();
    for r in 2..=5 {
        let g = augment_maximal_planar(&family(&format!("hex_patch:{r}"))).expect("hex patch augments");
        out.push((format!("hex_patch:{r}+aug"), g));
    }
    out.push(("stacked_icosahedron_y5".into(), stacked_icosahedron(false, 5)));
    out.push(("stacked_icosahedron_y6".into(), stacked_icosahedron(true, 2)));
    for seed in 0..100u64 {
        let n = 4 + (seed as usize * 7) % 37;
        out.push((format!("random_triangulation:{n}@{seed}"), random_triangulation(n, seed).unwrap()));
    }
    out
}

/// Named edge-maximal triangle-free instances: C4, the cube, grids up to
/// 9x9 and 100 random instances on at most 40 vertices.
pub fn triangle_free_suite() -> Vec<(String, EmbeddedGraph)> {
    let mut out = vec![("cycle:4".to_string(), family("cycle:4")), ("cube".to_string(), family("cube"))];
    for w in 2..=9 {
        for h in 2..=w {
            let s = format!("rect_grid:{w}x{h}");
            out.push((s.clone(), family(&s)));
        }
    }
    for seed in 0..100u64 {
        let n = 4 + (seed as usize * 11) % 37;
        out.push((format!("random_triangle_free:{n}@{seed}"), random_triangle_free(n, seed).unwrap()));
    }
    out
}

/// Dodecahedron, C5, P5 and 50 random girth-5 instances on at most 200
/// vertices.
pub fn girth5_suite() -> Vec<(String, EmbeddedGraph)> {
    let mut out: Vec<(String, EmbeddedGraph)> =
        ["dodecahedron", "cycle:5", "path:5"].iter().map(|s| (s.to_string(), family(s))).collect();
    for seed in 0..50u64 {
        let n = 2 + (seed as usize * 37) % 199;
        out.push((format!("random_girth5:{n}@{seed}"), random_girth5(n, seed).unwrap()));
    }
    out
}

fn stack(faces: &mut Vec<Vec<usize>>, i: usize, n: &mut usize) {
    let f = faces.remove(i);
    let x = *n;
    *n += 1;
    faces.push(vec![f[0], f[1], x]);
    faces.push(vec![f[1], f[2], x]);
    faces.push(vec![f[2], f[0], x]);
}

/// Icosahedron with `times` vertices stacked around each neighbour `u` of
/// vertex 0, into faces at `u` that avoid 0. With `raise` one vertex is
/// first stacked into a face at 0, lifting its degree to 6. Stacking
/// raises the neighbours' degrees until no cheap containment from 0 is
/// left: `(false, 5)` makes 0 a `Y_5`, `(true, 2)` a `Y_6`.
pub fn stacked_icosahedron(raise: bool, times: usize) -> EmbeddedGraph {
    let ico = family("icosahedron");
    let mut faces: Vec<Vec<usize>> = ico.faces().unwrap().all().iter().map(|f| f.boundary.clone()).collect();
    let mut n = 12;
    if raise {
        let i = faces.iter().position(|f| f.contains(&0)).unwrap();
        stack(&mut faces, i, &mut n);
    }
    let around = EmbeddedGraph::from_faces(n, &faces).unwrap().neighbors(0).to_vec();
    for &u in &around {
        for _ in 0..times {
            let at_u = |f: &Vec<usize>| f.contains(&u) && !f.contains(&0);
            let i = faces
                .iter()
                .position(|f| at_u(f) && f.iter().all(|&v| v < 12))
                .or_else(|| faces.iter().position(at_u))
                .unwrap();
            stack(&mut faces, i, &mut n);
        }
    }
    EmbeddedGraph::from_faces(n, &faces).unwrap()
}
