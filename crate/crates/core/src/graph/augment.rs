//! Chord insertion towards maximal planar and maximal triangle-free graphs.

use crate::error::{Error, Result};
use crate::graph::plane::PlaneBuilder;
use crate::graph::EmbeddedGraph;

fn finish(g: &EmbeddedGraph, b: PlaneBuilder) -> Result<EmbeddedGraph> {
    let out = EmbeddedGraph::build(b.rot)?;
    match g.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => Ok(out),
    }
}

/// Chord for a face of degree at least 4: fan from the smallest vertex on the
/// walk, moving to the next smallest vertex when every chord from it already
/// exists.
fn triangulating_chord(b: &PlaneBuilder, walk: &[usize]) -> Option<(usize, usize)> {
    let k = walk.len();
    let mut roots: Vec<usize> = (0..k).collect();
    roots.sort_by_key(|&i| (walk[i], i));
    for i in roots {
        for step in 2..k - 1 {
            let j = (i + step) % k;
            if walk[j] != walk[i] && !b.adjacent(walk[i], walk[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Adds chords until every face is a triangle.
pub fn augment_maximal_planar(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    g.faces()?;
    let mut b = PlaneBuilder::new(g.rotations().to_vec());
    if b.n() < 3 {
        return Err(Error::CannotTriangulate { face: 0 });
    }
    loop {
        let faces = b.faces();
        let Some((id, walk)) = faces.iter().enumerate().find(|(_, w)| w.len() >= 4) else {
            break;
        };
        let (i, j) = triangulating_chord(&b, walk).ok_or(Error::CannotTriangulate { face: id })?;
        b.add_chord(walk, i, j);
    }
    finish(g, b)
}

fn triangle_free_chord(b: &PlaneBuilder, faces: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    for (f, walk) in faces.iter().enumerate() {
        let k = walk.len();
        if k < 5 {
            continue;
        }
        for i in 0..k {
            for j in i + 3..k {
                if k - (j - i) < 3 {
                    break;
                }
                let (u, v) = (walk[i], walk[j]);
                if u != v && !b.adjacent(u, v) && !b.common_neighbour(u, v) {
                    return Some((f, i, j));
                }
            }
        }
    }
    None
}

/// Adds chords inside faces of degree at least 5 while a chord creating no
/// triangle exists. The result is maximal with respect to single-face chords,
/// not necessarily edge-maximal among all triangle-free planar supergraphs.
pub fn augment_maximal_triangle_free(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    g.faces()?;
    if g.has_triangle() {
        return Err(Error::NotTriangleFree);
    }
    let mut b = PlaneBuilder::new(g.rotations().to_vec());
    loop {
        let faces = b.faces();
        let Some((f, i, j)) = triangle_free_chord(&b, &faces) else {
            break;
        };
        b.add_chord(&faces[f], i, j);
    }
    finish(g, b)
}
