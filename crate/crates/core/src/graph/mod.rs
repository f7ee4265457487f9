//! Plane graphs given by a rotation system.

pub mod augment;
pub mod format;
pub mod generate;
pub(crate) mod plane;
pub mod random;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use plane::{trace, DartTable};

/// A face of the embedding: one boundary walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<usize>,
    pub degree: usize,
}

/// All faces of an embedding together with the dart-to-face incidence.
#[derive(Clone, Debug)]
pub struct Faces {
    faces: Vec<Face>,
    dart_face: Vec<usize>,
}

impl Faces {
    pub fn all(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn get(&self, id: usize) -> &Face {
        &self.faces[id]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A connected simple graph with a fixed cyclic order of neighbours at every
/// vertex. Immutable once built.
#[derive(Clone)]
pub struct EmbeddedGraph {
    rotations: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    verified: bool,
    sorted_adj: Vec<Vec<usize>>,
    darts: DartTable,
    faces: OnceLock<Faces>,
}

impl fmt::Debug for EmbeddedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EmbeddedGraph")
            .field("n", &self.n())
            .field("rotations", &self.rotations)
            .field("verified", &self.verified)
            .finish()
    }
}

/// Wire form of `rotation_json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RotationJson {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport<S: Scalar> {
    #[serde(serialize_with = "crate::scalar::serialize")]
    pub avg_degree: S,
    pub girth: Girth,
    /// The strict upper bound that applies for this girth.
    #[serde(serialize_with = "crate::scalar::serialize")]
    pub bound: S,
    pub bound_satisfied: bool,
}

impl EmbeddedGraph {
    /// Validates a rotation system as a plane embedding.
    pub fn build(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::assemble(rotations, true)?;
        let residual = g.euler_residual();
        if residual != 0 {
            return Err(Error::EmbeddingInconsistent { residual });
        }
        Ok(g)
    }

    /// Accepts an adjacency structure whose rotation order carries no
    /// embedding information. Face-dependent operations refuse such graphs.
    pub fn build_unverified(rotations: Vec<Vec<usize>>) -> Result<Self> {
        Self::assemble(rotations, false)
    }

    fn assemble(rotations: Vec<Vec<usize>>, verified: bool) -> Result<Self> {
        let n = rotations.len();
        if n == 0 {
            return Err(Error::BadParameter("graph has no vertices".into()));
        }
        let mut sorted_adj = Vec::with_capacity(n);
        for (v, r) in rotations.iter().enumerate() {
            let mut s = r.clone();
            for &w in &s {
                if w >= n {
                    return Err(Error::VertexIndexOutOfRange { index: w, n });
                }
            }
            s.sort_unstable();
            if s.windows(2).any(|p| p[0] == p[1]) || s.binary_search(&v).is_ok() {
                return Err(Error::LoopOrMultiEdge(v));
            }
            sorted_adj.push(s);
        }
        for (u, adj) in sorted_adj.iter().enumerate() {
            for &v in adj {
                if sorted_adj[v].binary_search(&u).is_err() {
                    return Err(Error::AsymmetricAdjacency { u, v });
                }
            }
        }
        let darts = DartTable::new(&rotations);
        let g = EmbeddedGraph {
            rotations,
            labels: None,
            verified,
            sorted_adj,
            darts,
            faces: OnceLock::new(),
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Builds the embedding whose faces are the given consistently oriented
    /// vertex cycles.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut succ: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
        for f in faces {
            let k = f.len();
            for i in 0..k {
                let (a, b, c) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                if b >= n {
                    return Err(Error::VertexIndexOutOfRange { index: b, n });
                }
                if succ[b].insert(a, c).is_some() {
                    return Err(Error::BadParameter(format!("dart {a}->{b} used twice")));
                }
            }
        }
        let mut rot = Vec::with_capacity(n);
        for (v, s) in succ.iter().enumerate() {
            let Some(&first) = s.keys().min() else {
                rot.push(Vec::new());
                continue;
            };
            let mut r = vec![first];
            let mut cur = first;
            loop {
                cur = *s
                    .get(&cur)
                    .ok_or_else(|| Error::BadParameter(format!("open corner at {v}")))?;
                if cur == first {
                    break;
                }
                r.push(cur);
                if r.len() > s.len() {
                    return Err(Error::BadParameter(format!("non-disc corner at {v}")));
                }
            }
            if r.len() != s.len() {
                return Err(Error::BadParameter(format!("vertex {v} is pinched")));
            }
            rot.push(r);
        }
        Self::build(rot)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::BadParameter("label count differs from n".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// Neighbours in increasing id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.sorted_adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.sorted_adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, adj) in self.sorted_adj.iter().enumerate() {
            out.extend(adj.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexIndexOutOfRange { index: v, n: self.n() });
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    fn traced(&self) -> &Faces {
        self.faces.get_or_init(|| {
            if self.darts.len() == 0 {
                return Faces {
                    faces: vec![Face { id: 0, boundary: vec![0], degree: 0 }],
                    dart_face: Vec::new(),
                };
            }
            let (raw, dart_face) = trace(&self.darts);
            let faces = raw
                .into_iter()
                .enumerate()
                .map(|(id, f)| Face {
                    id,
                    degree: f.darts.len(),
                    boundary: f.darts.iter().map(|&d| self.darts.tail[d]).collect(),
                })
                .collect();
            Faces { faces, dart_face }
        })
    }

    /// Faces of a verified embedding.
    pub fn faces(&self) -> Result<&Faces> {
        if !self.verified {
            return Err(Error::UnverifiedEmbedding);
        }
        Ok(self.traced())
    }

    /// Faces traced from the rotation order even when it is not a verified
    /// embedding.
    pub fn faces_forced(&self) -> &Faces {
        self.traced()
    }

    pub fn trace_faces(&self) -> Result<Vec<Face>> {
        let faces = self.faces()?;
        if self.euler_residual() != 0 {
            return Err(Error::EmbeddingInconsistent { residual: self.euler_residual() });
        }
        Ok(faces.faces.clone())
    }

    /// `|V| - |E| + |F| - 2` for the traced faces.
    pub fn euler_residual(&self) -> i64 {
        self.n() as i64 - self.edge_count() as i64 + self.traced().faces.len() as i64 - 2
    }

    /// Face lying on the walk that uses the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Result<usize> {
        let faces = self.faces()?;
        let d = self
            .darts
            .dart(&self.rotations, u, v)
            .ok_or_else(|| Error::BadParameter(format!("{u}-{v} is not an edge")))?;
        Ok(faces.dart_face[d])
    }

    /// The two face ids on either side of the edge `uv` (equal for a bridge).
    pub fn faces_of_edge(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        Ok((self.face_of_dart(u, v)?, self.face_of_dart(v, u)?))
    }

    /// Faces at the corners of `v`, in rotation order (one entry per corner).
    pub fn faces_at(&self, v: usize) -> Result<Vec<usize>> {
        let faces = self.faces()?;
        let off = self.darts.offset[v];
        Ok((0..self.degree(v)).map(|i| faces.dart_face[off + i]).collect())
    }

    /// Breadth-first distances; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.sorted_adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.distances_from(u)[v]
    }

    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.sorted_adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().into_iter().any(|(u, v)| {
            let (a, b) = (&self.sorted_adj[u], &self.sorted_adj[v]);
            a.iter().any(|w| b.binary_search(w).is_ok())
        })
    }

    /// No cut vertex and at least three vertices.
    pub fn is_two_connected(&self) -> bool {
        let n = self.n();
        if n < 3 {
            return false;
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        // iterative DFS from 0: (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        let mut root_children = 0;
        while let Some(&mut (u, p, ref mut i)) = stack.last_mut() {
            if *i < self.sorted_adj[u].len() {
                let w = self.sorted_adj[u][*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    timer += 1;
                    disc[w] = timer;
                    low[w] = timer;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != p {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[u]);
                    if p != 0 && low[u] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        root_children <= 1
    }

    /// Every face has degree 3.
    pub fn is_triangulation(&self) -> Result<bool> {
        Ok(self.faces()?.all().iter().all(|f| f.degree == 3))
    }

    /// Plane dual; requires every edge to separate two distinct faces and no
    /// two faces to share more than one edge.
    pub fn dual(&self) -> Result<EmbeddedGraph> {
        let faces = self.faces()?;
        let mut rot = Vec::with_capacity(faces.len());
        for f in faces.all() {
            let k = f.boundary.len();
            let r: Vec<usize> = (0..k)
                .map(|i| {
                    let (a, b) = (f.boundary[i], f.boundary[(i + 1) % k]);
                    self.face_of_dart(b, a)
                })
                .collect::<Result<_>>()?;
            rot.push(r.into_iter().rev().collect());
        }
        Self::build(rot)
    }

    pub fn density_report<S: Scalar>(&self) -> DensityReport<S> {
        let n = self.n() as i64;
        let avg = S::from_ratio(2 * self.edge_count() as i64, n);
        let girth = self.girth();
        let bound = if girth.at_least(6) {
            S::from_count(3)
        } else if girth.at_least(5) {
            S::from_ratio(10, 3)
        } else {
            S::from_count(6)
        };
        DensityReport { bound_satisfied: avg < bound, avg_degree: avg, girth, bound }
    }

    pub fn to_rotation_json(&self) -> RotationJson {
        RotationJson {
            n: self.n(),
            rotations: self.rotations.clone(),
            labels: self.labels.clone(),
            embedding: if self.verified { None } else { Some("unverified".into()) },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::generate::{generate, FamilySpec, Solid};
    use super::*;
    use num_rational::BigRational;

    fn triangle() -> EmbeddedGraph {
        EmbeddedGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn build_accepts_triangle() {
        let g = triangle();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.trace_faces().unwrap().len(), 2);
    }

    #[test]
    fn build_rejects_asymmetry_and_disconnection() {
        let err = EmbeddedGraph::build(vec![vec![1], vec![]]).unwrap_err();
        assert!(matches!(err, Error::AsymmetricAdjacency { u: 0, v: 1 }));
        let err = EmbeddedGraph::build(vec![vec![1], vec![0], vec![3], vec![2]]).unwrap_err();
        assert!(matches!(err, Error::Disconnected));
        let err = EmbeddedGraph::build(vec![vec![1, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::LoopOrMultiEdge(0)));
        let err = EmbeddedGraph::build(vec![vec![0]]).unwrap_err();
        assert!(matches!(err, Error::LoopOrMultiEdge(0)));
    }

    #[test]
    fn build_rejects_non_planar_rotation() {
        // K4 with one vertex's rotation reversed is a torus embedding.
        let k4 = generate(&FamilySpec::Platonic(Solid::Tetrahedron)).unwrap();
        let mut rot = k4.rotations().to_vec();
        rot[0].reverse();
        let err = EmbeddedGraph::build(rot).unwrap_err();
        assert!(matches!(err, Error::EmbeddingInconsistent { .. }));
    }

    #[test]
    fn face_counts_for_small_solids() {
        let k4 = generate(&FamilySpec::Platonic(Solid::Tetrahedron)).unwrap();
        let f = k4.trace_faces().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|f| f.degree == 3));
        let cube = generate(&FamilySpec::Platonic(Solid::Cube)).unwrap();
        let f = cube.trace_faces().unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|f| f.degree == 4));
        let c5 = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
        let f = c5.trace_faces().unwrap();
        assert_eq!(f.iter().map(|f| f.degree).collect::<Vec<_>>(), vec![5, 5]);
    }

    #[test]
    fn girths() {
        let g = |s| generate(&s).unwrap().girth();
        assert_eq!(g(FamilySpec::Platonic(Solid::Tetrahedron)), Girth::Finite(3));
        assert_eq!(g(FamilySpec::Platonic(Solid::Cube)), Girth::Finite(4));
        assert_eq!(g(FamilySpec::Platonic(Solid::Dodecahedron)), Girth::Finite(5));
        assert_eq!(g(FamilySpec::Star { n: 6 }), Girth::Infinite);
        assert_eq!(g(FamilySpec::Cycle { n: 7 }), Girth::Finite(7));
    }

    #[test]
    fn distances() {
        let grid = generate(&FamilySpec::RectGrid { width: 3, height: 3 }).unwrap();
        assert_eq!(grid.distance(0, 0), 0);
        assert_eq!(grid.distance(0, 1), 1);
        assert_eq!(grid.distance(0, 8), 4);
    }

    #[test]
    fn density_reports() {
        let d = generate(&FamilySpec::Platonic(Solid::Dodecahedron)).unwrap();
        let r = d.density_report::<BigRational>();
        assert_eq!(r.avg_degree, BigRational::from_count(3));
        assert_eq!(r.girth, Girth::Finite(5));
        assert_eq!(r.bound, BigRational::from_ratio(10, 3));
        assert!(r.bound_satisfied);
        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap().density_report::<BigRational>();
        assert_eq!(c6.bound, BigRational::from_count(3));
        assert!(c6.bound_satisfied);
        let s = generate(&FamilySpec::Star { n: 10 }).unwrap().density_report::<BigRational>();
        assert_eq!(s.avg_degree, BigRational::from_ratio(9, 5));
        assert_eq!(s.girth, Girth::Infinite);
        assert!(s.bound_satisfied);
    }

    #[test]
    fn two_connectivity() {
        assert!(generate(&FamilySpec::Cycle { n: 4 }).unwrap().is_two_connected());
        assert!(!generate(&FamilySpec::Star { n: 4 }).unwrap().is_two_connected());
        assert!(!generate(&FamilySpec::Path { n: 5 }).unwrap().is_two_connected());
        assert!(generate(&FamilySpec::Platonic(Solid::Cube)).unwrap().is_two_connected());
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let cube = generate(&FamilySpec::Platonic(Solid::Cube)).unwrap();
        let oct = cube.dual().unwrap();
        assert_eq!(oct.n(), 6);
        assert_eq!(oct.edge_count(), 12);
        assert!((0..6).all(|v| oct.degree(v) == 4));
    }

    #[test]
    fn single_vertex_has_one_face() {
        let g = EmbeddedGraph::build(vec![vec![]]).unwrap();
        assert_eq!(g.euler_residual(), 0);
        assert_eq!(g.girth(), Girth::Infinite);
    }
}
