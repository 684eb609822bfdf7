//! Plain-text graph and sequence formats.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! sg directed weighted 3
//! v 0 a
//! e 0 1 2
//! e a 2 1
//! ```
//!
//! Edge endpoints are resolved as a vertex label first, then as a numeric id.
//! Sequence files hold one whitespace-separated sequence per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

pub fn parse_graph(text: &str) -> Result<SeqGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    if header.len() != 4 || header[0] != "sg" {
        return Err(Error::parse(
            hl,
            "expected `sg <directed|undirected> <weighted|unweighted> <n>`",
        ));
    }
    let directed = match header[1] {
        "directed" => true,
        "undirected" => false,
        o => return Err(Error::parse(hl, format!("unknown orientation {o:?}"))),
    };
    let weighted = match header[2] {
        "weighted" => true,
        "unweighted" => false,
        o => return Err(Error::parse(hl, format!("unknown weighting {o:?}"))),
    };
    let n: usize = header[3]
        .parse()
        .map_err(|_| Error::parse(hl, format!("invalid vertex count {:?}", header[3])))?;

    let body: Vec<(usize, Vec<&str>)> = lines.collect();
    let mut labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    for (ln, f) in body.iter().filter(|(_, f)| f[0] == "v") {
        if f.len() != 3 {
            return Err(Error::parse(*ln, "expected `v <id> <label>`"));
        }
        let id: VertexId = f[1]
            .parse()
            .map_err(|_| Error::parse(*ln, format!("invalid vertex id {:?}", f[1])))?;
        if id >= n {
            return Err(Error::parse(*ln, format!("vertex id {id} out of range")));
        }
        labels[id] = f[2].to_string();
    }
    let mut g = SeqGraph::with_labels(labels, directed, weighted)?;

    let resolve = |g: &SeqGraph, ln: usize, tok: &str| -> Result<VertexId> {
        if let Some(v) = g.vertex_by_label(tok) {
            return Ok(v);
        }
        match tok.parse::<VertexId>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(Error::parse(ln, format!("unknown vertex {tok:?}"))),
        }
    };
    for (ln, f) in &body {
        match f[0] {
            "v" => {}
            "e" => {
                let expect = if weighted { 4 } else { 3 };
                if f.len() != expect {
                    let shape = if weighted { "`e <u> <v> <pi>`" } else { "`e <u> <v>`" };
                    return Err(Error::parse(*ln, format!("expected {shape}")));
                }
                let u = resolve(&g, *ln, f[1])?;
                let v = resolve(&g, *ln, f[2])?;
                let r = if weighted {
                    let pi: u64 = f[3]
                        .parse()
                        .map_err(|_| Error::parse(*ln, format!("invalid weight {:?}", f[3])))?;
                    g.add_weighted_edge(u, v, pi)
                } else {
                    g.add_edge(u, v)
                };
                r.map_err(|e| Error::parse(*ln, e.to_string()))?;
            }
            o => return Err(Error::parse(*ln, format!("unknown record {o:?}"))),
        }
    }
    Ok(g)
}

/// Serializes `g`; `v` lines appear only for labels that differ from the id.
pub fn write_graph(g: &SeqGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sg {} {} {}",
        if g.is_directed() { "directed" } else { "undirected" },
        if g.is_weighted() { "weighted" } else { "unweighted" },
        g.n()
    );
    for v in 0..g.n() {
        if g.label(v) != v.to_string() {
            let _ = writeln!(out, "v {v} {}", g.label(v));
        }
    }
    for (u, v, pi) in g.edges() {
        if g.is_weighted() {
            let _ = writeln!(out, "e {u} {v} {pi}");
        } else {
            let _ = writeln!(out, "e {u} {v}");
        }
    }
    out
}

/// Parses sequences against `g`'s labels (numeric ids accepted as fallback).
pub fn parse_sequences(text: &str, g: &SeqGraph) -> Result<Vec<Sequence>> {
    content_lines(text)
        .map(|(ln, toks)| {
            toks.iter()
                .map(|t| {
                    g.vertex_by_label(t)
                        .or_else(|| t.parse::<VertexId>().ok().filter(|&v| v < g.n()))
                        .ok_or_else(|| Error::parse(ln, format!("unknown token {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Sequence::new)
        })
        .collect()
}

/// Splits a sequence file into word lists, one per non-comment line.
pub fn parse_word_lines(text: &str) -> Vec<Vec<&str>> {
    content_lines(text).map(|(_, t)| t).collect()
}
