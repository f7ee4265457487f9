//! Face-degree relations between vertices of a plane graph.
//!
//! Two vertices are 4-opposite when they are opposite corners `u, a, v, b`
//! of a face of degree 4 in which `a` or `b` has degree 4. Adjacent vertices
//! are 4-adjacent when both faces on their edge have degree 4, and
//! 5-adjacent when exactly one of them has. An element (vertex or face) is
//! contiguous with `v` when it is a face at `v` or a vertex 4-opposite or
//! 4-adjacent to `v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub u: usize,
    pub v: usize,
    /// Faces of degree 4 witnessing that `u` and `v` are 4-opposite.
    pub four_opposite: Vec<usize>,
    pub four_adjacent: bool,
    pub five_adjacent: bool,
    /// Either vertex is contiguous with the other.
    pub contiguous: bool,
    /// Faces on the edge `uv`, when adjacent.
    pub edge_faces: Option<(usize, usize)>,
}

impl Relation {
    pub fn flavors(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.four_opposite.is_empty() {
            out.push("four_opposite");
        }
        if self.four_adjacent {
            out.push("four_adjacent");
        }
        if self.five_adjacent {
            out.push("five_adjacent");
        }
        if self.contiguous {
            out.push("contiguous");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Element {
    Face { id: usize, degree: usize },
    FourOpposite { vertex: usize, degree: usize, face: usize },
    FourAdjacent { vertex: usize, degree: usize },
}

impl Element {
    pub fn degree(&self) -> usize {
        match *self {
            Element::Face { degree, .. }
            | Element::FourOpposite { degree, .. }
            | Element::FourAdjacent { degree, .. } => degree,
        }
    }

    pub fn vertex(&self) -> Option<usize> {
        match *self {
            Element::Face { .. } => None,
            Element::FourOpposite { vertex, .. } | Element::FourAdjacent { vertex, .. } => Some(vertex),
        }
    }
}

fn face_degree(g: &EmbeddedGraph, f: usize) -> Result<usize> {
    Ok(g.faces()?.get(f).degree)
}

/// Degrees of the two faces on the edge `uv`.
pub fn edge_face_degrees(g: &EmbeddedGraph, u: usize, v: usize) -> Result<(usize, usize)> {
    let (f1, f2) = g.faces_of_edge(u, v)?;
    Ok((face_degree(g, f1)?, face_degree(g, f2)?))
}

pub fn four_adjacent(g: &EmbeddedGraph, u: usize, v: usize) -> Result<bool> {
    if !g.adjacent(u, v) {
        return Ok(false);
    }
    let (a, b) = edge_face_degrees(g, u, v)?;
    Ok(a == 4 && b == 4)
}

pub fn five_adjacent(g: &EmbeddedGraph, u: usize, v: usize) -> Result<bool> {
    if !g.adjacent(u, v) {
        return Ok(false);
    }
    let (a, b) = edge_face_degrees(g, u, v)?;
    Ok((a == 4) != (b == 4))
}

/// Vertices 4-opposite to `v`, each with its witnessing face, ordered by
/// (vertex, face).
pub fn four_opposite_partners(g: &EmbeddedGraph, v: usize) -> Result<Vec<(usize, usize)>> {
    let faces = g.faces()?;
    let mut out = Vec::new();
    let mut at = g.faces_at(v)?;
    at.sort_unstable();
    at.dedup();
    for f in at {
        let face = faces.get(f);
        if face.degree != 4 {
            continue;
        }
        let b = &face.boundary;
        let mut distinct = b.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 4 {
            continue;
        }
        let i = b.iter().position(|&x| x == v).expect("face at v");
        let (a, w, c) = (b[(i + 1) % 4], b[(i + 2) % 4], b[(i + 3) % 4]);
        if g.degree(a) == 4 || g.degree(c) == 4 {
            out.push((w, f));
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn relation_flavors(g: &EmbeddedGraph, u: usize, v: usize) -> Result<Relation> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.faces()?;
    let four_opposite: Vec<usize> = four_opposite_partners(g, u)?
        .into_iter()
        .filter(|&(w, _)| w == v)
        .map(|(_, f)| f)
        .collect();
    let edge_faces = if g.adjacent(u, v) { Some(g.faces_of_edge(u, v)?) } else { None };
    let four_adj = four_adjacent(g, u, v)?;
    Ok(Relation {
        u,
        v,
        contiguous: four_adj || !four_opposite.is_empty(),
        four_opposite,
        four_adjacent: four_adj,
        five_adjacent: five_adjacent(g, u, v)?,
        edge_faces,
    })
}

/// Every element contiguous with `v`: the distinct faces at `v`, then the
/// 4-opposite vertices, then the 4-adjacent neighbours.
pub fn contiguous_elements(g: &EmbeddedGraph, v: usize) -> Result<Vec<Element>> {
    g.check_vertex(v)?;
    let faces = g.faces()?;
    let mut at = g.faces_at(v)?;
    at.sort_unstable();
    at.dedup();
    let mut out: Vec<Element> =
        at.into_iter().map(|id| Element::Face { id, degree: faces.get(id).degree }).collect();
    let mut seen = Vec::new();
    for (w, f) in four_opposite_partners(g, v)? {
        if !seen.contains(&w) {
            seen.push(w);
            out.push(Element::FourOpposite { vertex: w, degree: g.degree(w), face: f });
        }
    }
    for &w in g.neighbors(v) {
        if four_adjacent(g, v, w)? {
            out.push(Element::FourAdjacent { vertex: w, degree: g.degree(w) });
        }
    }
    Ok(out)
}

/// Vertices contiguous with `v` (4-opposite or 4-adjacent), without repeats.
pub fn contiguous_vertices(g: &EmbeddedGraph, v: usize) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = contiguous_elements(g, v)?.iter().filter_map(Element::vertex).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub(crate) fn require_triangle_free(g: &EmbeddedGraph) -> Result<()> {
    g.faces()?;
    if g.has_triangle() {
        return Err(Error::ContainsTriangle);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};

    fn fam(s: &str) -> EmbeddedGraph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn grid_interior_edge_is_four_adjacent() {
        let g = fam("rect_grid:4x4");
        let r = relation_flavors(&g, 5, 6).unwrap();
        assert_eq!(r.flavors(), vec!["four_adjacent", "contiguous"]);
        let r = relation_flavors(&g, 0, 1).unwrap();
        assert_eq!(r.flavors(), vec!["five_adjacent"]);
    }

    #[test]
    fn k24_leaves_are_four_opposite() {
        let g = fam("complete_bipartite_2_m:4");
        let r = relation_flavors(&g, 2, 3).unwrap();
        assert!(!r.four_opposite.is_empty());
        assert_eq!(r, relation_flavors(&g, 3, 2).map(|mut x| {
            std::mem::swap(&mut x.u, &mut x.v);
            x
        }).unwrap());
        assert!(!g.adjacent(2, 3));
    }

    #[test]
    fn cube_diagonal_is_not_four_opposite() {
        let g = fam("cube");
        let r = relation_flavors(&g, 0, 2).unwrap();
        assert!(r.four_opposite.is_empty());
        let els = contiguous_elements(&g, 0).unwrap();
        assert_eq!(els.iter().filter(|e| matches!(e, Element::Face { .. })).count(), 3);
        assert_eq!(els.iter().filter(|e| matches!(e, Element::FourAdjacent { .. })).count(), 3);
        assert_eq!(els.len(), 6);
    }

    #[test]
    fn square_vertex_elements() {
        // Both faces of C4 have degree 4, so the two neighbours are
        // 4-adjacent; the opposite corner is not 4-opposite (degree 2 mids).
        let g = fam("cycle:4");
        let els = contiguous_elements(&g, 0).unwrap();
        assert_eq!(els.len(), 4);
        assert_eq!(contiguous_vertices(&g, 0).unwrap(), vec![1, 3]);
    }

    #[test]
    fn grid_corner_elements() {
        let g = fam("rect_grid:3x3");
        let els = contiguous_elements(&g, 0).unwrap();
        let mut degs: Vec<usize> = els.iter().map(|e| e.degree()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![4, 8]);
        let g = fam("rect_grid:4x4");
        assert!(four_opposite_partners(&g, 0).unwrap().is_empty());
        let partners: Vec<usize> = four_opposite_partners(&g, 1).unwrap().iter().map(|p| p.0).collect();
        assert_eq!(partners, vec![4, 6]);
    }
}
