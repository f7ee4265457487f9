//! Readers and writers for graph6, planar_code and rotation JSON.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, RotationJson};

const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";
const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    PlanarCode,
    RotationJson,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "planar_code" | "pc" => Ok(Format::PlanarCode),
            "rotation_json" | "json" => Ok(Format::RotationJson),
            _ => Err(Error::BadParameter(format!("unknown format '{s}'"))),
        }
    }
}

/// Parses every graph in `bytes`. graph6 carries no embedding, so it is
/// refused unless `allow_unverified` is set; the resulting graphs keep their
/// neighbours in id order and are marked unverified.
pub fn parse(bytes: &[u8], format: Format, allow_unverified: bool) -> Result<Vec<EmbeddedGraph>> {
    match format {
        Format::Graph6 => {
            if !allow_unverified {
                return Err(Error::UnverifiedEmbedding);
            }
            parse_graph6(bytes)
        }
        Format::PlanarCode => parse_planar_code(bytes),
        Format::RotationJson => parse_rotation_json(bytes, allow_unverified),
    }
}

pub fn parse_graph6(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedRecord("graph6 input is not ASCII".into()))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line).trim();
        if line.is_empty() {
            continue;
        }
        let adj = decode_graph6(line.as_bytes())?;
        out.push(EmbeddedGraph::build_unverified(adj)?);
    }
    Ok(out)
}

/// Adjacency lists (ascending) of one graph6 record.
pub fn decode_graph6(rec: &[u8]) -> Result<Vec<Vec<usize>>> {
    if let Some(&b) = rec.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::MalformedRecord(format!("invalid graph6 byte {b:#x}")));
    }
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = match rec {
        [] => return Err(Error::TruncatedRecord),
        [126, 126, rest @ ..] if rest.len() >= 6 => (six(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => (six(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::TruncatedRecord),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() < bits.div_ceil(6) {
        return Err(Error::TruncatedRecord);
    }
    if body.len() > bits.div_ceil(6) {
        return Err(Error::MalformedRecord("trailing graph6 bytes".into()));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
        }
    }
    adj.iter_mut().for_each(|a| a.sort_unstable());
    Ok(adj)
}

pub fn encode_graph6(g: &EmbeddedGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>> {
    let mut body = bytes
        .strip_prefix(PLANAR_CODE_HEADER)
        .ok_or_else(|| Error::MalformedHeader("expected '>>planar_code<<'".into()))?;
    let mut out = Vec::new();
    while let Some((&n, rest)) = body.split_first() {
        let n = n as usize;
        if n == 0 {
            return Err(Error::MalformedRecord("zero vertex count".into()));
        }
        body = rest;
        let mut rot = Vec::with_capacity(n);
        for _ in 0..n {
            let end = body.iter().position(|&b| b == 0).ok_or(Error::TruncatedRecord)?;
            let nbrs = body[..end]
                .iter()
                .map(|&b| {
                    let b = b as usize;
                    if b > n {
                        Err(Error::VertexIndexOutOfRange { index: b - 1, n })
                    } else {
                        Ok(b - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            rot.push(nbrs);
            body = &body[end + 1..];
        }
        out.push(EmbeddedGraph::build(rot)?);
    }
    Ok(out)
}

pub fn encode_planar_code(graphs: &[EmbeddedGraph]) -> Result<Vec<u8>> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for g in graphs {
        if g.n() > 255 {
            return Err(Error::BadParameter("planar_code supports at most 255 vertices".into()));
        }
        out.push(g.n() as u8);
        for v in 0..g.n() {
            out.extend(g.rotation(v).iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    Ok(out)
}

/// Accepts one object, an array of objects, or one object per line.
pub fn parse_rotation_json(bytes: &[u8], allow_unverified: bool) -> Result<Vec<EmbeddedGraph>> {
    let records: Vec<RotationJson> = match serde_json::from_slice::<serde_json::Value>(bytes) {
        Ok(serde_json::Value::Array(items)) => items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<std::result::Result<_, _>>()?,
        Ok(value) => vec![serde_json::from_value(value)?],
        Err(_) => serde_json::Deserializer::from_slice(bytes)
            .into_iter::<RotationJson>()
            .collect::<std::result::Result<_, _>>()?,
    };
    records.into_iter().map(|r| from_rotation_json(r, allow_unverified)).collect()
}

pub fn from_rotation_json(rec: RotationJson, allow_unverified: bool) -> Result<EmbeddedGraph> {
    if rec.rotations.len() != rec.n {
        return Err(Error::MalformedRecord(format!(
            "n = {} but {} rotations given",
            rec.n,
            rec.rotations.len()
        )));
    }
    let unverified = rec.embedding.as_deref() == Some("unverified");
    let g = if unverified {
        if !allow_unverified {
            return Err(Error::UnverifiedEmbedding);
        }
        EmbeddedGraph::build_unverified(rec.rotations)?
    } else {
        EmbeddedGraph::build(rec.rotations)?
    };
    match rec.labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

pub fn encode_rotation_json(g: &EmbeddedGraph) -> String {
    serde_json::to_string(&g.to_rotation_json()).expect("plain data serializes")
}
