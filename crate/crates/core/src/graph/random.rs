//! Seeded random generators for test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::augment::augment_maximal_triangle_free;
use crate::graph::plane::PlaneBuilder;
use crate::graph::EmbeddedGraph;

fn bfs(b: &PlaneBuilder, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; b.n()];
    let mut queue = std::collections::VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in &b.rot[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn k4() -> PlaneBuilder {
    PlaneBuilder::new(vec![vec![1, 3, 2], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]])
}

fn flip(b: &mut PlaneBuilder, u: usize, v: usize) -> bool {
    let (ru, rv) = (&b.rot[u], &b.rot[v]);
    if ru.len() <= 3 || rv.len() <= 3 {
        return false;
    }
    let p = ru.iter().position(|&x| x == v).unwrap();
    let w = ru[(p + 1) % ru.len()];
    let x = ru[(p + ru.len() - 1) % ru.len()];
    if w == x || b.adjacent(w, x) {
        return false;
    }
    b.remove_edge(u, v);
    let faces = b.faces();
    let walk = faces
        .iter()
        .find(|f| f.len() == 4 && f.contains(&w) && f.contains(&x))
        .expect("quadrilateral left by removed diagonal");
    let i = walk.iter().position(|&y| y == w).unwrap();
    let j = walk.iter().position(|&y| y == x).unwrap();
    b.add_chord(walk, i, j);
    true
}

/// Random maximal planar graph on `n >= 3` vertices: stacked insertions into
/// random faces followed by random edge flips.
pub fn random_triangulation(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::BadParameter("a triangulation needs at least 3 vertices".into()));
    }
    if n == 3 {
        return EmbeddedGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = k4();
    while b.n() < n {
        let faces = b.faces();
        let walk = faces.choose(&mut rng).unwrap();
        b.add_vertex_in_face(walk, &[0, 1, 2]);
    }
    for _ in 0..2 * n {
        let edges = b.edges();
        let &(u, v) = edges.choose(&mut rng).unwrap();
        flip(&mut b, u, v);
    }
    EmbeddedGraph::build(b.rot)
}

/// Random 2-connected triangle-free plane graph on exactly `n >= 4` vertices
/// grown from a 4- or 5-cycle, then augmented with chords until no face
/// admits one.
pub fn random_triangle_free(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 4 {
        return Err(Error::BadParameter("need at least 4 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = if n >= 5 && rng.gen_bool(0.5) { 5 } else { 4 };
    let mut b = PlaneBuilder::new((0..c).map(|i| vec![(i + 1) % c, (i + c - 1) % c]).collect());
    while b.n() < n {
        if rng.gen_bool(0.3) {
            let edges = b.edges();
            let &(u, v) = edges.choose(&mut rng).unwrap();
            b.subdivide(u, v);
            continue;
        }
        let faces = b.faces();
        let walk = faces.choose(&mut rng).unwrap();
        let k = walk.len();
        let want = if rng.gen_bool(0.5) { 3 } else { 2 };
        let mut picked: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(&mut rng);
        for p in order {
            let x = walk[p];
            if picked.iter().all(|&q| walk[q] != x && !b.adjacent(walk[q], x)) {
                picked.push(p);
                if picked.len() == want {
                    break;
                }
            }
        }
        if picked.len() < 2 {
            continue;
        }
        picked.sort_unstable();
        b.add_vertex_in_face(walk, &picked);
    }
    augment_maximal_triangle_free(&EmbeddedGraph::build(b.rot)?)
}

/// Random plane graph of girth at least 5 on exactly `n >= 2` vertices.
pub fn random_girth5(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 2 {
        return Err(Error::BadParameter("need at least 2 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = if n >= 5 && rng.gen_bool(0.7) {
        PlaneBuilder::new((0..5).map(|i| vec![(i + 1) % 5, (i + 4) % 5]).collect())
    } else {
        PlaneBuilder::new(vec![vec![1], vec![0]])
    };
    while b.n() < n {
        match rng.gen_range(0..10) {
            0..=2 => {
                let edges = b.edges();
                let &(u, v) = edges.choose(&mut rng).unwrap();
                b.subdivide(u, v);
            }
            3 => {
                let u = rng.gen_range(0..b.n());
                let w = b.n();
                b.rot[u].push(w);
                b.rot.push(vec![u]);
            }
            _ => {
                let faces = b.faces();
                let walk = faces.choose(&mut rng).unwrap();
                let k = walk.len();
                let i = rng.gen_range(0..k);
                let dist = bfs(&b, walk[i]);
                let chord = rng.gen_bool(0.3);
                let need = if chord { 4 } else { 3 };
                let mut cands: Vec<usize> =
                    (0..k).filter(|&j| dist[walk[j]] >= need && dist[walk[j]] != usize::MAX).collect();
                cands.sort_unstable();
                cands.dedup_by_key(|j| walk[*j]);
                let Some(&j) = cands.choose(&mut rng) else {
                    continue;
                };
                if chord {
                    b.add_chord(walk, i, j);
                } else {
                    let (a, c) = if i < j { (i, j) } else { (j, i) };
                    b.add_vertex_in_face(walk, &[a, c]);
                }
            }
        }
    }
    EmbeddedGraph::build(b.rot)
}
