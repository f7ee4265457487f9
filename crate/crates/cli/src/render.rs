//! SVG frames of a fire trace. Burning vertices are drawn as squares and
//! protected ones circled, each labelled with the round it changed state.

use std::fmt::Write;

use firecontain::fire::SimTrace;
use firecontain::EmbeddedGraph;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 32.0;
const TUTTE_SWEEPS: usize = 2000;

/// Drawing coordinates: `hint` when it covers every vertex, otherwise a
/// Tutte embedding with the longest face pinned to a circle, otherwise a
/// circle.
pub fn layout(g: &EmbeddedGraph, hint: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    if hint.len() == g.n() {
        return hint;
    }
    let n = g.n();
    let circle = |k: usize, i: usize| {
        let t = std::f64::consts::TAU * i as f64 / k.max(1) as f64;
        (t.cos(), t.sin())
    };
    let outer = g
        .is_verified()
        .then(|| g.faces().ok())
        .flatten()
        .and_then(|fs| fs.all().iter().max_by_key(|f| (f.degree, std::cmp::Reverse(f.id))).cloned());
    let Some(outer) = outer.filter(|f| {
        let mut b = f.boundary.clone();
        b.sort_unstable();
        b.dedup();
        b.len() == f.boundary.len() && b.len() >= 3
    }) else {
        return (0..n).map(|i| circle(n, i)).collect();
    };
    let mut pos = vec![(0.0, 0.0); n];
    let mut pinned = vec![false; n];
    for (i, &v) in outer.boundary.iter().enumerate() {
        pos[v] = circle(outer.boundary.len(), i);
        pinned[v] = true;
    }
    for _ in 0..TUTTE_SWEEPS {
        for v in 0..n {
            if pinned[v] || g.degree(v) == 0 {
                continue;
            }
            let (sx, sy) = g.neighbors(v).iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let d = g.degree(v) as f64;
            pos[v] = (sx / d, sy / d);
        }
    }
    pos
}

fn to_viewport(pos: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in pos {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    pos.iter()
        .map(|&(x, y)| (MARGIN + (x - lo_x) * scale, MARGIN + (hi_y - y) * scale))
        .collect()
}

/// One SVG per round, round 0 being the ignition.
pub fn frames(g: &EmbeddedGraph, trace: &SimTrace, pos: &[(f64, f64)]) -> Vec<String> {
    let pts = to_viewport(pos);
    let n = g.n();
    let mut burned_at: Vec<Option<usize>> = vec![None; n];
    let mut protected_at: Vec<Option<usize>> = vec![None; n];
    burned_at[trace.start] = Some(0);
    for (i, r) in trace.rounds.iter().enumerate() {
        for &v in &r.burned {
            burned_at[v] = Some(i + 1);
        }
        for &v in &r.protect {
            protected_at[v] = Some(i + 1);
        }
    }
    (0..=trace.rounds.len())
        .map(|round| frame(g, &pts, round, &burned_at, &protected_at))
        .collect()
}

fn frame(
    g: &EmbeddedGraph,
    pts: &[(f64, f64)],
    round: usize,
    burned_at: &[Option<usize>],
    protected_at: &[Option<usize>],
) -> String {
    let r = (SIZE / (6.0 * (g.n() as f64).sqrt().max(1.0))).clamp(3.0, 14.0);
    let font = r * 1.1;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"#,
        h = SIZE + 24.0
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{y}" font-size="16" font-family="sans-serif">round {round}</text>"#, y = SIZE + 16.0);
    let _ = writeln!(s, r##"<g stroke="#888" stroke-width="1">"##);
    for (u, v) in g.edges() {
        let (a, b) = (pts[u], pts[v]);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
    }
    let _ = writeln!(s, "</g>");
    for v in 0..g.n() {
        let (x, y) = pts[v];
        let burnt = burned_at[v].filter(|&t| t <= round);
        let saved = protected_at[v].filter(|&t| t <= round);
        match (burnt, saved) {
            (Some(t), _) => {
                let _ = writeln!(
                    s,
                    r##"<rect class="burning" x="{:.2}" y="{:.2}" width="{w:.2}" height="{w:.2}" fill="#e4572e" stroke="black"/>"##,
                    x - r,
                    y - r,
                    w = 2.0 * r
                );
                label(&mut s, x, y, font, t);
            }
            (None, Some(t)) => {
                let _ = writeln!(
                    s,
                    r##"<circle class="protected" cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="#d9f0ff" stroke="#1f5fa8" stroke-width="2"/>"##
                );
                label(&mut s, x, y, font, t);
            }
            (None, None) => {
                let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="black"/>"#, r / 3.0);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn label(s: &mut String, x: f64, y: f64, font: f64, round: usize) {
    let _ = writeln!(
        s,
        r#"<text x="{x:.2}" y="{:.2}" font-size="{font:.1}" font-family="sans-serif" text-anchor="middle">{round}</text>"#,
        y + font / 3.0
    );
}
