//! Local configurations around a degree-3 vertex of a triangle-free plane
//! graph from which two firefighters contain the fire cheaply.

use std::fmt;

use serde::Serialize;

use crate::detect::relations::{four_adjacent, four_opposite_partners, require_triangle_free};
use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigId {
    /// Adjacent to a vertex of degree at most 3.
    LowNeighbour,
    /// Adjacent to a degree-4 vertex that has another neighbour of degree
    /// at most 3.
    Degree4LowPair,
    /// 4-opposite to a vertex of degree at most 4.
    OppositeLow,
    /// 4-opposite to a degree-5 vertex with a neighbour of degree at most 3.
    OppositeDegree5Low,
    /// Adjacent to a degree-5 vertex with three consecutive neighbours of
    /// degree at most 3 (one of them `v`), the middle one 4-adjacent to it.
    Degree5LowTriple,
    /// 4-adjacent to a degree-6 vertex that is 4-adjacent to six vertices of
    /// degree at most 3.
    Degree6LowStar,
    /// Degree-6 start whose radius-3 neighbourhood is a triangular lattice.
    HexNeighbourhood,
    /// Degree-4 start whose radius-7 neighbourhood is a square grid.
    RectNeighbourhood,
}

impl ConfigId {
    pub const LOCAL: [ConfigId; 6] = [
        ConfigId::LowNeighbour,
        ConfigId::Degree4LowPair,
        ConfigId::OppositeLow,
        ConfigId::OppositeDegree5Low,
        ConfigId::Degree5LowTriple,
        ConfigId::Degree6LowStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigId::LowNeighbour => "low_neighbour",
            ConfigId::Degree4LowPair => "degree4_low_pair",
            ConfigId::OppositeLow => "opposite_low",
            ConfigId::OppositeDegree5Low => "opposite_degree5_low",
            ConfigId::Degree5LowTriple => "degree5_low_triple",
            ConfigId::Degree6LowStar => "degree6_low_star",
            ConfigId::HexNeighbourhood => "hex_neighbourhood",
            ConfigId::RectNeighbourhood => "rect_neighbourhood",
        }
    }
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One occurrence of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigMatch {
    pub config: ConfigId,
    pub anchor: usize,
    /// Key vertices, in the order given by the predicate (see [`ConfigId`]).
    pub witness: Vec<usize>,
    pub faces: Vec<usize>,
    /// Escape or lattice path, for the neighbourhood configurations.
    pub path: Vec<usize>,
}

impl ConfigMatch {
    fn new(config: ConfigId, anchor: usize, witness: Vec<usize>, faces: Vec<usize>) -> Self {
        ConfigMatch { config, anchor, witness, faces, path: Vec::new() }
    }

    /// Vertices whose neighbourhoods hold the moves of the configuration's
    /// strategy.
    pub fn core(&self) -> Vec<usize> {
        let w = &self.witness;
        let mut core = vec![self.anchor];
        if !matches!(self.config, ConfigId::HexNeighbourhood | ConfigId::RectNeighbourhood) {
            core.extend(w.iter().copied());
        }
        core.sort_unstable();
        core.dedup();
        core
    }

    /// Re-checks the defining predicate on `g`.
    pub fn holds(&self, g: &EmbeddedGraph) -> Result<bool> {
        Ok(detect_local_configs(g, self.anchor)?.contains(self))
    }
}

/// Every configuration occurrence at the degree-3 vertex `v`.
pub fn detect_local_configs(g: &EmbeddedGraph, v: usize) -> Result<Vec<ConfigMatch>> {
    g.check_vertex(v)?;
    require_triangle_free(g)?;
    if g.degree(v) != 3 {
        return Err(Error::WrongDegree { vertex: v, degree: g.degree(v), expected: "3".into() });
    }
    let d = |x: usize| g.degree(x);
    let mut out = Vec::new();
    for &u in g.neighbors(v) {
        if d(u) <= 3 {
            out.push(ConfigMatch::new(ConfigId::LowNeighbour, v, vec![u], vec![]));
        }
    }
    for &u in g.neighbors(v) {
        if d(u) == 4 {
            for &w in g.neighbors(u) {
                if w != v && d(w) <= 3 {
                    out.push(ConfigMatch::new(ConfigId::Degree4LowPair, v, vec![u, w], vec![]));
                }
            }
        }
    }
    let faces = g.faces()?;
    let opposite = four_opposite_partners(g, v)?;
    for &(w, f) in &opposite {
        if d(w) <= 4 {
            out.push(ConfigMatch::new(ConfigId::OppositeLow, v, with_mids(v, w, f, faces), vec![f]));
        }
    }
    for &(w, f) in &opposite {
        if d(w) == 5 {
            for &x in g.neighbors(w) {
                if d(x) <= 3 {
                    let mut wit = with_mids(v, w, f, faces);
                    wit.insert(1, x);
                    out.push(ConfigMatch::new(ConfigId::OppositeDegree5Low, v, wit, vec![f]));
                }
            }
        }
    }
    for &w in g.neighbors(v) {
        if d(w) != 5 {
            continue;
        }
        let rot = g.rotation(w);
        let pos = rot.iter().position(|&x| x == v).expect("symmetric rotation");
        // the three windows of consecutive neighbours containing v
        for off in [4, 3, 0] {
            let tri: Vec<usize> = (0..3).map(|i| rot[(pos + off + i) % 5]).collect();
            if tri.iter().all(|&x| d(x) <= 3) && four_adjacent(g, w, tri[1])? {
                let mut wit = vec![w];
                wit.extend(tri);
                out.push(ConfigMatch::new(ConfigId::Degree5LowTriple, v, wit, vec![]));
            }
        }
    }
    for &w in g.neighbors(v) {
        if d(w) != 6 || !four_adjacent(g, v, w)? {
            continue;
        }
        let mut all = true;
        for &x in g.neighbors(w) {
            all &= d(x) <= 3 && four_adjacent(g, w, x)?;
        }
        if all {
            let mut wit = vec![w];
            wit.extend(g.rotation(w).iter().copied());
            out.push(ConfigMatch::new(ConfigId::Degree6LowStar, v, wit, vec![]));
        }
    }
    Ok(out)
}

/// `[w, a, b]` for the face `v, a, w, b`.
fn with_mids(v: usize, w: usize, f: usize, faces: &crate::graph::Faces) -> Vec<usize> {
    let b = &faces.get(f).boundary;
    let i = b.iter().position(|&x| x == v).expect("face at v");
    vec![w, b[(i + 1) % 4], b[(i + 3) % 4]]
}
