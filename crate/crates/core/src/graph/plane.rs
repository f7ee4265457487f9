//! Raw rotation-system machinery shared by the validated graph type, the
//! augmentation routines and the random generators.
//!
//! Convention: the dart `u -> v` is followed on its face by `v -> w`, where
//! `w` is the successor of `u` in the cyclic rotation of `v`.

use std::collections::HashMap;

#[derive(Clone, Debug)]
pub(crate) struct DartTable {
    /// First dart id of each vertex; dart `offset[v] + i` is `v -> rot[v][i]`.
    pub offset: Vec<usize>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub twin: Vec<usize>,
}

impl DartTable {
    pub fn new(rot: &[Vec<usize>]) -> Self {
        let mut offset = Vec::with_capacity(rot.len() + 1);
        let mut acc = 0;
        for r in rot {
            offset.push(acc);
            acc += r.len();
        }
        offset.push(acc);
        let mut tail = Vec::with_capacity(acc);
        let mut head = Vec::with_capacity(acc);
        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(acc);
        for (v, r) in rot.iter().enumerate() {
            for (i, &w) in r.iter().enumerate() {
                tail.push(v);
                head.push(w);
                index.insert((v, w), offset[v] + i);
            }
        }
        let twin = (0..acc)
            .map(|d| *index.get(&(head[d], tail[d])).unwrap_or(&usize::MAX))
            .collect();
        DartTable { offset, tail, head, twin }
    }

    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offset[v + 1] - self.offset[v]
    }

    /// Position of the dart's tail inside the rotation of its head.
    pub fn pos_in_head(&self, d: usize) -> usize {
        let t = self.twin[d];
        t - self.offset[self.head[d]]
    }

    pub fn next(&self, d: usize) -> usize {
        let v = self.head[d];
        let p = self.pos_in_head(d);
        self.offset[v] + (p + 1) % self.degree(v)
    }

    pub fn dart(&self, rot: &[Vec<usize>], u: usize, v: usize) -> Option<usize> {
        rot[u].iter().position(|&w| w == v).map(|i| self.offset[u] + i)
    }
}

/// One traced face: its darts in walk order.
#[derive(Clone, Debug)]
pub(crate) struct RawFace {
    pub darts: Vec<usize>,
}

/// Traces all faces; returns the faces and the face id of every dart.
pub(crate) fn trace(table: &DartTable) -> (Vec<RawFace>, Vec<usize>) {
    let mut face_of = vec![usize::MAX; table.len()];
    let mut faces = Vec::new();
    for start in 0..table.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut darts = Vec::new();
        let mut d = start;
        while face_of[d] == usize::MAX {
            face_of[d] = id;
            darts.push(d);
            d = table.next(d);
        }
        faces.push(RawFace { darts });
    }
    (faces, face_of)
}

/// Mutable rotation system used while constructing or augmenting embeddings.
#[derive(Clone, Debug)]
pub(crate) struct PlaneBuilder {
    pub rot: Vec<Vec<usize>>,
}

impl PlaneBuilder {
    pub fn new(rot: Vec<Vec<usize>>) -> Self {
        PlaneBuilder { rot }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }

    pub fn common_neighbour(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.rot[u].len() <= self.rot[v].len() { (u, v) } else { (v, u) };
        self.rot[a].iter().any(|w| self.rot[b].contains(w))
    }

    /// Faces as boundary vertex walks (`walk[i]` is the tail of the i-th dart).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let table = DartTable::new(&self.rot);
        let (faces, _) = trace(&table);
        faces
            .into_iter()
            .map(|f| f.darts.iter().map(|&d| table.tail[d]).collect())
            .collect()
    }

    /// Inserts `x` into the rotation of `at`, directly after `after`.
    fn insert_after(&mut self, at: usize, after: usize, x: usize) {
        let p = self.rot[at].iter().position(|&w| w == after).expect("corner neighbour");
        self.rot[at].insert(p + 1, x);
    }

    /// Adds the chord between walk positions `i` and `j` of the face `walk`,
    /// drawn inside that face.
    pub fn add_chord(&mut self, walk: &[usize], i: usize, j: usize) {
        let k = walk.len();
        let (a, b) = (walk[i], walk[j]);
        let a_prev = walk[(i + k - 1) % k];
        let b_prev = walk[(j + k - 1) % k];
        self.insert_after(a, a_prev, b);
        self.insert_after(b, b_prev, a);
    }

    /// Adds a new vertex inside the face `walk`, joined to the boundary
    /// corners at the given (strictly increasing) walk positions.
    pub fn add_vertex_in_face(&mut self, walk: &[usize], positions: &[usize]) -> usize {
        let k = walk.len();
        let w = self.rot.len();
        self.rot.push(Vec::new());
        for &p in positions {
            let prev = walk[(p + k - 1) % k];
            if k == 1 || prev == walk[p] {
                // isolated-vertex face (single vertex graph)
                self.rot[walk[p]].push(w);
            } else {
                self.insert_after(walk[p], prev, w);
            }
        }
        self.rot[w] = positions.iter().rev().map(|&p| walk[p]).collect();
        w
    }

    pub fn subdivide(&mut self, u: usize, v: usize) -> usize {
        let w = self.rot.len();
        for (a, b) in [(u, v), (v, u)] {
            let p = self.rot[a].iter().position(|&x| x == b).expect("edge");
            self.rot[a][p] = w;
        }
        self.rot.push(vec![u, v]);
        w
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rot[u].retain(|&x| x != v);
        self.rot[v].retain(|&x| x != u);
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, r) in self.rot.iter().enumerate() {
            for &v in r {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler(b: &PlaneBuilder) -> i64 {
        let e: usize = b.rot.iter().map(|r| r.len()).sum::<usize>() / 2;
        b.n() as i64 - e as i64 + b.faces().len() as i64 - 2
    }

    #[test]
    fn chord_and_vertex_insertion_keep_euler() {
        // square 0-1-2-3
        let mut b = PlaneBuilder::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]);
        assert_eq!(b.faces().len(), 2);
        let face = b.faces()[0].clone();
        let i = face.iter().position(|&x| x == 0).unwrap();
        let j = face.iter().position(|&x| x == 2).unwrap();
        b.add_chord(&face, i, j);
        assert_eq!(euler(&b), 0);
        assert_eq!(b.faces().len(), 3);
        let big = b.faces().into_iter().find(|f| f.len() == 4).unwrap();
        b.add_vertex_in_face(&big, &[0, 1, 2, 3]);
        assert_eq!(euler(&b), 0);
        assert!(b.faces().iter().all(|f| f.len() == 3));
        let w = b.subdivide(0, 1);
        assert_eq!(b.rot[w], vec![0, 1]);
        assert_eq!(euler(&b), 0);
    }
}
