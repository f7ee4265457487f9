//! Named graph families with fixed embeddings.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl Solid {
    pub const ALL: [Solid; 5] = [
        Solid::Tetrahedron,
        Solid::Cube,
        Solid::Octahedron,
        Solid::Dodecahedron,
        Solid::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Cube => "cube",
            Solid::Octahedron => "octahedron",
            Solid::Dodecahedron => "dodecahedron",
            Solid::Icosahedron => "icosahedron",
        }
    }
}

impl FromStr for Solid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Solid::ALL
            .into_iter()
            .find(|x| x.name() == s || (s == "k4" && *x == Solid::Tetrahedron))
            .ok_or_else(|| Error::BadParameter(format!("unknown solid '{s}'")))
    }
}

/// A member of one of the built-in families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Triangular-lattice ball of the given radius (interior degree 6).
    HexPatch { radius: usize },
    RectGrid { width: usize, height: usize },
    /// `K_{1,n-1}`, centre is vertex 0.
    Star { n: usize },
    /// `K_{2,m}`, hubs are vertices 0 and 1.
    CompleteBipartite2M { m: usize },
    Cycle { n: usize },
    Path { n: usize },
    Platonic(Solid),
}

impl FamilySpec {
    /// Vertex the families are usually ignited at: the lattice centre for
    /// patches and grids, vertex 0 otherwise.
    pub fn center(&self) -> usize {
        match *self {
            FamilySpec::HexPatch { radius } => (3 * radius * radius + 3 * radius) / 2,
            FamilySpec::RectGrid { width, height } => (height / 2) * width + width / 2,
            _ => 0,
        }
    }

    /// Planar drawing coordinates matching the generated vertex ids.
    pub fn layout(&self) -> Vec<(f64, f64)> {
        match *self {
            FamilySpec::HexPatch { radius } => hex_points(radius)
                .into_iter()
                .map(|(q, r)| (q as f64 + r as f64 / 2.0, -(r as f64) * 3f64.sqrt() / 2.0))
                .collect(),
            FamilySpec::RectGrid { width, height } => (0..width * height)
                .map(|i| ((i % width) as f64, -((i / width) as f64)))
                .collect(),
            FamilySpec::Star { n } => {
                let mut pts = vec![(0.0, 0.0)];
                pts.extend(circle(n.saturating_sub(1), 1.0));
                pts
            }
            FamilySpec::CompleteBipartite2M { m } => {
                let mut pts = vec![(0.0, 1.0), (0.0, -1.0)];
                let w = (m.max(2) - 1) as f64;
                pts.extend((0..m).map(|i| (2.0 * i as f64 / w - 1.0, 0.0)));
                pts
            }
            FamilySpec::Cycle { n } => circle(n, 1.0),
            FamilySpec::Path { n } => (0..n).map(|i| (i as f64, 0.0)).collect(),
            FamilySpec::Platonic(_) => Vec::new(),
        }
    }
}

fn circle(k: usize, radius: f64) -> Vec<(f64, f64)> {
    (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::HexPatch { radius } => write!(f, "hex_patch:{radius}"),
            FamilySpec::RectGrid { width, height } => write!(f, "rect_grid:{width}x{height}"),
            FamilySpec::Star { n } => write!(f, "star:{n}"),
            FamilySpec::CompleteBipartite2M { m } => write!(f, "complete_bipartite_2_m:{m}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Platonic(s) => write!(f, "platonic:{}", s.name()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts `name:params` (for example `hex_patch:4`, `rect_grid:17x17`,
    /// `platonic:cube`) or a bare solid name.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = s.split_once(':').unwrap_or((&s, ""));
        let num = |a: &str| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadParameter(format!("expected a size in '{s}'")))
        };
        let spec = match name {
            "hex_patch" | "hex" => FamilySpec::HexPatch { radius: num(arg)? },
            "rect_grid" | "grid" | "rect" => {
                let (w, h) = arg.split_once(['x', ',']).unwrap_or((arg, arg));
                FamilySpec::RectGrid { width: num(w)?, height: num(h)? }
            }
            "star" => FamilySpec::Star { n: num(arg)? },
            "complete_bipartite_2_m" | "k2m" => FamilySpec::CompleteBipartite2M { m: num(arg)? },
            "cycle" => FamilySpec::Cycle { n: num(arg)? },
            "path" => FamilySpec::Path { n: num(arg)? },
            "platonic" => FamilySpec::Platonic(arg.parse()?),
            other => FamilySpec::Platonic(other.parse().map_err(|_| {
                Error::BadParameter(format!("unknown family '{other}'"))
            })?),
        };
        Ok(spec)
    }
}

fn hex_points(radius: usize) -> Vec<(i64, i64)> {
    let r = radius as i64;
    let mut pts = Vec::new();
    for y in -r..=r {
        for x in -r..=r {
            if (x + y).abs() <= r {
                pts.push((x, y));
            }
        }
    }
    pts
}

const HEX_DIRS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
const RECT_DIRS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

fn lattice(points: Vec<(i64, i64)>, dirs: &[(i64, i64)]) -> Result<EmbeddedGraph> {
    let index: HashMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let rot = points
        .iter()
        .map(|&(x, y)| dirs.iter().filter_map(|&(dx, dy)| index.get(&(x + dx, y + dy)).copied()).collect())
        .collect();
    let labels = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
    EmbeddedGraph::build(rot)?.with_labels(labels)
}

fn positive(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::BadParameter(format!("{name} must be at least {min}")));
    }
    Ok(())
}

pub fn generate(spec: &FamilySpec) -> Result<EmbeddedGraph> {
    match *spec {
        FamilySpec::HexPatch { radius } => {
            positive("hex_patch radius", radius, 1)?;
            lattice(hex_points(radius), &HEX_DIRS)
        }
        FamilySpec::RectGrid { width, height } => {
            positive("rect_grid width", width, 1)?;
            positive("rect_grid height", height, 1)?;
            let pts = (0..height as i64)
                .flat_map(|y| (0..width as i64).map(move |x| (x, y)))
                .collect();
            lattice(pts, &RECT_DIRS)
        }
        FamilySpec::Star { n } => {
            positive("star size", n, 1)?;
            let mut rot = vec![(1..n).collect::<Vec<_>>()];
            rot.extend((1..n).map(|_| vec![0]));
            EmbeddedGraph::build(rot)
        }
        FamilySpec::CompleteBipartite2M { m } => {
            positive("complete_bipartite_2_m size", m, 1)?;
            let leaves: Vec<usize> = (2..m + 2).collect();
            let mut rot = vec![leaves.clone(), leaves.into_iter().rev().collect()];
            rot.extend((0..m).map(|_| vec![0, 1]));
            EmbeddedGraph::build(rot)
        }
        FamilySpec::Cycle { n } => {
            positive("cycle length", n, 3)?;
            EmbeddedGraph::build((0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect())
        }
        FamilySpec::Path { n } => {
            positive("path length", n, 1)?;
            let rot = (0..n)
                .map(|i| {
                    let mut r = Vec::new();
                    if i + 1 < n {
                        r.push(i + 1);
                    }
                    if i > 0 {
                        r.push(i - 1);
                    }
                    r
                })
                .collect();
            EmbeddedGraph::build(rot)
        }
        FamilySpec::Platonic(solid) => platonic(solid),
    }
}

fn platonic(solid: Solid) -> Result<EmbeddedGraph> {
    let faces: Vec<Vec<usize>> = match solid {
        Solid::Tetrahedron => vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]],
        Solid::Cube => vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ],
        Solid::Octahedron => vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ],
        Solid::Icosahedron => {
            let up = |i: usize| 1 + i % 5;
            let lo = |i: usize| 6 + i % 5;
            let mut f = Vec::new();
            for i in 0..5 {
                f.push(vec![0, up(i), up(i + 1)]);
                f.push(vec![up(i), lo(i), up(i + 1)]);
                f.push(vec![up(i + 1), lo(i), lo(i + 1)]);
                f.push(vec![11, lo(i + 1), lo(i)]);
            }
            f
        }
        Solid::Dodecahedron => return platonic(Solid::Icosahedron)?.dual(),
    };
    let n = faces.iter().flatten().max().map_or(0, |m| m + 1);
    EmbeddedGraph::from_faces(n, &faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solids_have_expected_shape() {
        let expect = [
            (Solid::Tetrahedron, 4, 6, 3),
            (Solid::Cube, 8, 12, 3),
            (Solid::Octahedron, 6, 12, 4),
            (Solid::Dodecahedron, 20, 30, 3),
            (Solid::Icosahedron, 12, 30, 5),
        ];
        for (s, n, e, d) in expect {
            let g = generate(&FamilySpec::Platonic(s)).unwrap();
            assert_eq!((g.n(), g.edge_count()), (n, e), "{s:?}");
            assert!((0..n).all(|v| g.degree(v) == d), "{s:?}");
            assert_eq!(g.euler_residual(), 0);
        }
    }

    #[test]
    fn hex_patch_counts() {
        for r in 1..6 {
            let spec = FamilySpec::HexPatch { radius: r };
            let g = generate(&spec).unwrap();
            assert_eq!(g.n(), 3 * r * r + 3 * r + 1);
            assert_eq!(g.degree(spec.center()), 6);
            assert_eq!(g.labels().unwrap()[spec.center()], "0,0");
            let faces = g.trace_faces().unwrap();
            let outer = faces.iter().filter(|f| f.degree != 3).count();
            assert_eq!(outer, 1);
        }
    }

    #[test]
    fn rect_grid_and_star() {
        let g = generate(&FamilySpec::RectGrid { width: 3, height: 3 }).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!((0..9).filter(|&v| g.degree(v) == 2).count(), 4);
        let spec = FamilySpec::RectGrid { width: 17, height: 17 };
        let g = generate(&spec).unwrap();
        assert_eq!(g.labels().unwrap()[spec.center()], "8,8");
        let s = generate(&FamilySpec::Star { n: 5 }).unwrap();
        assert_eq!(s.degree(0), 4);
        assert!((1..5).all(|v| s.degree(v) == 1));
    }

    #[test]
    fn complete_bipartite_faces_are_quadrilaterals() {
        let g = generate(&FamilySpec::CompleteBipartite2M { m: 4 }).unwrap();
        let f = g.trace_faces().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|f| f.degree == 4));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["hex_patch:4", "rect_grid:17x17", "star:5", "complete_bipartite_2_m:3", "cycle:5", "path:5", "platonic:cube"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("dodecahedron".parse::<FamilySpec>().unwrap(), FamilySpec::Platonic(Solid::Dodecahedron));
        assert!("moebius:3".parse::<FamilySpec>().is_err());
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
    }
}
