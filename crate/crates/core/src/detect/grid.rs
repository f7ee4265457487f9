//! Tests for a lattice-like neighbourhood around a vertex, and the escape
//! paths that certify the neighbourhood is not lattice-like.
//!
//! Hex: a path of length at most 3 from `v` whose internal vertices have
//! degree 6 and whose end has degree other than 6.
//!
//! Rect: a path of length at most 7 from `v` whose internal vertices have
//! degree 4, where both faces on every edge before the last one have
//! degree 4, and whose end `u` has degree other than 4 or lies with its
//! predecessor on a face of degree at least 5.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Hex,
    Rect,
}

impl GridKind {
    pub fn lattice_degree(self) -> usize {
        match self {
            GridKind::Hex => 6,
            GridKind::Rect => 4,
        }
    }

    pub fn max_length(self) -> usize {
        match self {
            GridKind::Hex => 3,
            GridKind::Rect => 7,
        }
    }
}

/// Element that ends an escape path and pays for it in the charge rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Donor {
    Vertex(usize),
    Face(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapePath {
    pub path: Vec<usize>,
    pub donor: Donor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridTest {
    pub kind: GridKind,
    pub vertex: usize,
    /// The neighbourhood matches the lattice pattern (no escape path).
    pub pure: bool,
    pub escape: Option<EscapePath>,
}

fn faces_on(g: &EmbeddedGraph, a: usize, b: usize) -> Result<[(usize, usize); 2]> {
    let (f1, f2) = g.faces_of_edge(a, b)?;
    let faces = g.faces()?;
    Ok([(f1, faces.get(f1).degree), (f2, faces.get(f2).degree)])
}

/// Large faces (degree at least 5) on the edge `ab`, smallest id first.
fn large_faces(g: &EmbeddedGraph, a: usize, b: usize) -> Result<Vec<usize>> {
    let mut out: Vec<usize> =
        faces_on(g, a, b)?.iter().filter(|(_, d)| *d >= 5).map(|(f, _)| *f).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn is_end(g: &EmbeddedGraph, kind: GridKind, prev: usize, u: usize) -> Result<bool> {
    Ok(match kind {
        GridKind::Hex => g.degree(u) != 6,
        GridKind::Rect => g.degree(u) != 4 || !large_faces(g, prev, u)?.is_empty(),
    })
}

/// Whether the path may continue through `u`, entered from `prev`.
fn passable(g: &EmbeddedGraph, kind: GridKind, prev: usize, u: usize) -> Result<bool> {
    if g.degree(u) != kind.lattice_degree() {
        return Ok(false);
    }
    Ok(match kind {
        GridKind::Hex => true,
        GridKind::Rect => faces_on(g, prev, u)?.iter().all(|(_, d)| *d == 4),
    })
}

/// All escape paths of the smallest possible length, in lexicographic order.
pub fn shortest_escape_paths(g: &EmbeddedGraph, v: usize, kind: GridKind) -> Result<Vec<Vec<usize>>> {
    g.check_vertex(v)?;
    g.faces()?;
    for len in 1..=kind.max_length() {
        let mut found = Vec::new();
        let mut path = vec![v];
        extend(g, kind, len, &mut path, &mut found)?;
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(Vec::new())
}

fn extend(
    g: &EmbeddedGraph,
    kind: GridKind,
    len: usize,
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let last = *path.last().expect("non-empty");
    for &w in g.neighbors(last) {
        if path.contains(&w) {
            continue;
        }
        if path.len() == len {
            if is_end(g, kind, last, w)? {
                let mut p = path.clone();
                p.push(w);
                found.push(p);
            }
        } else if passable(g, kind, last, w)? {
            path.push(w);
            extend(g, kind, len, path, found)?;
            path.pop();
        }
    }
    Ok(())
}

fn donor_of(g: &EmbeddedGraph, kind: GridKind, path: &[usize]) -> Result<Donor> {
    let u = path[path.len() - 1];
    let prev = path[path.len() - 2];
    if g.degree(u) != kind.lattice_degree() {
        return Ok(Donor::Vertex(u));
    }
    let f = large_faces(g, prev, u)?;
    Ok(Donor::Face(f[0]))
}

/// The lexicographically least shortest escape path, if any.
pub fn escape_path(g: &EmbeddedGraph, v: usize, kind: GridKind) -> Result<Option<EscapePath>> {
    match shortest_escape_paths(g, v, kind)?.into_iter().next() {
        Some(path) => Ok(Some(EscapePath { donor: donor_of(g, kind, &path)?, path })),
        None => Ok(None),
    }
}

/// The escape path used to pick a donor: shortest, then smallest end
/// vertex, then the smallest donor id, then lexicographically least.
pub fn donor_path(g: &EmbeddedGraph, v: usize, kind: GridKind) -> Result<Option<EscapePath>> {
    let mut best: Option<((usize, Donor), EscapePath)> = None;
    for path in shortest_escape_paths(g, v, kind)? {
        let donor = donor_of(g, kind, &path)?;
        let key = (*path.last().unwrap(), donor);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, EscapePath { path, donor }));
        }
    }
    Ok(best.map(|(_, p)| p))
}

pub fn grid_neighborhood_test(g: &EmbeddedGraph, v: usize, kind: GridKind) -> Result<GridTest> {
    g.check_vertex(v)?;
    let d = g.degree(v);
    match kind {
        GridKind::Hex => {
            if !g.is_triangulation()? {
                return Err(Error::WrongContext("hex test needs a triangulation".into()));
            }
        }
        GridKind::Rect => {
            if g.has_triangle() {
                return Err(Error::WrongContext("rect test needs a triangle-free graph".into()));
            }
        }
    }
    if d != kind.lattice_degree() {
        return Err(Error::WrongContext(format!(
            "vertex {v} has degree {d}, the {kind:?} test needs {}",
            kind.lattice_degree()
        )));
    }
    let escape = escape_path(g, v, kind)?;
    Ok(GridTest { kind, vertex: v, pure: escape.is_none(), escape })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};

    fn patch(s: &str) -> (EmbeddedGraph, usize) {
        let spec: FamilySpec = s.parse().unwrap();
        (generate(&spec).unwrap(), spec.center())
    }

    #[test]
    fn hex_patches() {
        let (g, c) = patch("hex_patch:4");
        assert!(grid_neighborhood_test(&g, c, GridKind::Hex).is_err(), "not a triangulation");
        let t = crate::graph::augment::augment_maximal_planar(&g).unwrap();
        let r = grid_neighborhood_test(&t, c, GridKind::Hex).unwrap();
        assert!(r.pure);
        let (g, c) = patch("hex_patch:2");
        let t = crate::graph::augment::augment_maximal_planar(&g).unwrap();
        let r = grid_neighborhood_test(&t, c, GridKind::Hex).unwrap();
        assert!(!r.pure);
        let p = r.escape.unwrap().path;
        assert!(p.len() <= 4);
        assert_ne!(t.degree(*p.last().unwrap()), 6);
    }

    #[test]
    fn rect_grids() {
        let (g, c) = patch("rect_grid:17x17");
        assert!(grid_neighborhood_test(&g, c, GridKind::Rect).unwrap().pure);
        let (g, c) = patch("rect_grid:5x5");
        let r = grid_neighborhood_test(&g, c, GridKind::Rect).unwrap();
        assert!(!r.pure);
        // Two steps to a boundary vertex of degree 3.
        assert_eq!(r.escape.unwrap().path.len(), 3);
        assert!(matches!(grid_neighborhood_test(&g, 0, GridKind::Rect), Err(Error::WrongContext(_))));
    }

    #[test]
    fn rect_escape_through_large_face() {
        // In a 15x15 grid the centre reaches the boundary cycle in seven
        // steps, but boundary vertices of degree 3 come first.
        let (g, c) = patch("rect_grid:15x15");
        let p = escape_path(&g, c, GridKind::Rect).unwrap().unwrap();
        assert_eq!(p.path.len(), 8);
        assert_eq!(p.donor, Donor::Vertex(*p.path.last().unwrap()));
    }
}
