//! Text graph format, reduction manifests and DOT export.
//!
//! ```text
//! # comments run to the end of the line
//! graph directed 2 2
//! e 0 1
//! e 1 0
//! rot 0 0a 1b
//! rot 1 0b 1a
//! ```
//!
//! Edge ids follow line order. A rotation entry `<edge>a` is the first endpoint
//! slot of the edge, `<edge>b` the second. Files end with a newline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{AnyGraph, Dart, DiGraph, End, UGraph, Vertex};
use crate::planar::{end_char, Embedding};
use crate::reductions::{BudgetMap, Origin};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: AnyGraph,
    pub embedding: Option<Embedding>,
}

impl GraphFile {
    pub fn new(graph: impl Into<AnyGraph>) -> Self {
        GraphFile {
            graph: graph.into(),
            embedding: None,
        }
    }

    pub fn with_embedding(graph: impl Into<AnyGraph>, embedding: Option<Embedding>) -> Self {
        GraphFile {
            graph: graph.into(),
            embedding,
        }
    }
}

/// Non-comment tokens of a line, each with its 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .or_else(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse(text: &str) -> Result<GraphFile, ParseError> {
    let lines: Vec<&str> = text.split('\n').collect();
    if !text.is_empty() && !text.ends_with('\n') {
        let last = lines.len();
        return err(last, lines[last - 1].len() + 1, "missing trailing newline");
    }
    let mut header: Option<(bool, usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut rot: Vec<Option<Vec<Dart>>> = Vec::new();
    let mut saw_rot = false;
    for (i, raw) in lines.iter().enumerate() {
        let ln = i + 1;
        let toks = tokens(raw);
        let Some(&(col, key)) = toks.first() else {
            continue;
        };
        match key {
            "graph" => {
                if header.is_some() {
                    return err(ln, col, "duplicate header");
                }
                if toks.len() != 4 {
                    return err(ln, col, "header is `graph <directed|undirected> <n> <m>`");
                }
                let directed = match toks[1].1 {
                    "directed" => true,
                    "undirected" => false,
                    other => return err(ln, toks[1].0, format!("unknown graph kind `{other}`")),
                };
                let n = number(ln, toks[2], "vertex count")?;
                let m = number(ln, toks[3], "edge count")?;
                header = Some((directed, n, m));
                rot = vec![None; n];
            }
            "e" => {
                let Some((_, n, m)) = header else {
                    return err(ln, col, "edge before header");
                };
                if saw_rot {
                    return err(ln, col, "edge after rotation records");
                }
                if toks.len() != 3 {
                    return err(ln, col, "edge record is `e <u> <v>`");
                }
                let u = number(ln, toks[1], "vertex")?;
                let v = number(ln, toks[2], "vertex")?;
                for (t, x) in [(toks[1], u), (toks[2], v)] {
                    if x >= n {
                        return err(ln, t.0, format!("vertex {x} out of range for {n} vertices"));
                    }
                }
                if edges.len() == m {
                    return err(ln, col, format!("more than {m} edge records"));
                }
                edges.push((u, v));
            }
            "rot" => {
                let Some((_, n, m)) = header else {
                    return err(ln, col, "rotation before header");
                };
                if edges.len() != m {
                    return err(
                        ln,
                        col,
                        format!("rotation before all {m} edges were listed"),
                    );
                }
                saw_rot = true;
                if toks.len() < 2 {
                    return err(ln, col, "rotation record is `rot <v> <end>...`");
                }
                let v = number(ln, toks[1], "vertex")?;
                if v >= n {
                    return err(
                        ln,
                        toks[1].0,
                        format!("vertex {v} out of range for {n} vertices"),
                    );
                }
                if rot[v].is_some() {
                    return err(ln, toks[1].0, format!("second rotation for vertex {v}"));
                }
                let mut darts = Vec::with_capacity(toks.len() - 2);
                for &(c, t) in &toks[2..] {
                    let (id, end) = t.split_at(t.len().saturating_sub(1));
                    let end = match end {
                        "a" => End::A,
                        "b" => End::B,
                        _ => return err(ln, c, format!("edge-end `{t}` must end in a or b")),
                    };
                    let id: usize = id
                        .parse()
                        .or_else(|_| err(ln, c, format!("bad edge id in `{t}`")))?;
                    if id >= m {
                        return err(ln, c, format!("unknown edge {id}"));
                    }
                    let (a, b) = edges[id];
                    if (end == End::A && a != v) || (end == End::B && b != v) {
                        return err(ln, c, format!("edge-end {t} is not at vertex {v}"));
                    }
                    darts.push(Dart::new(id, end));
                }
                rot[v] = Some(darts);
            }
            other => return err(ln, col, format!("unknown record `{other}`")),
        }
    }
    let Some((directed, n, m)) = header else {
        return err(1, 1, "missing header");
    };
    if edges.len() != m {
        return err(
            lines.len(),
            1,
            format!("expected {m} edge records, found {}", edges.len()),
        );
    }
    let graph: AnyGraph = if directed {
        DiGraph::from_edges(n, edges).into()
    } else {
        UGraph::from_edges(n, edges).into()
    };
    let embedding = if saw_rot {
        let emb = Embedding::new(rot.into_iter().map(Option::unwrap_or_default).collect());
        let check = match &graph {
            AnyGraph::Directed(d) => emb.validate(d),
            AnyGraph::Undirected(u) => emb.validate(u),
        };
        if let Err(e) = check {
            return err(lines.len(), 1, format!("inconsistent rotation: {e}"));
        }
        Some(emb)
    } else {
        None
    };
    Ok(GraphFile { graph, embedding })
}

/// Canonical text: header, edges in id order and, for embedded graphs, one
/// rotation line per vertex (empty for isolated vertices). Deleted vertices are written as ordinary vertices.
pub fn serialize(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    let kind = if g.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    let m = g.edge_slots();
    writeln!(out, "graph {kind} {} {m}", g.vertex_count()).unwrap();
    let ends: Vec<(Vertex, Vertex)> = match g {
        AnyGraph::Directed(d) => (0..m).map(|e| d.endpoints(e)).collect(),
        AnyGraph::Undirected(u) => (0..m).map(|e| u.endpoints(e)).collect(),
    };
    for (u, v) in ends {
        writeln!(out, "e {u} {v}").unwrap();
    }
    if let Some(emb) = &file.embedding {
        for (v, darts) in emb.rotation.iter().enumerate() {
            write!(out, "rot {v}").unwrap();
            for &d in darts {
                write!(out, " {}{}", d.edge, end_char(d)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// Budget map and gadget registry written next to a transformed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub budget: BudgetMap,
    pub registry: Vec<(Origin, Vec<Vertex>)>,
}

impl Manifest {
    pub fn serialize(&self) -> String {
        let mut out = format!("map {} {}\n", self.budget.a, self.budget.b);
        for (origin, ids) in &self.registry {
            write!(out, "gadget {origin}").unwrap();
            for id in ids {
                write!(out, " {id}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Manifest, ParseError> {
        let mut budget = None;
        let mut registry = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let toks = tokens(raw);
            let Some(&(col, key)) = toks.first() else {
                continue;
            };
            match key {
                "map" => {
                    if toks.len() != 3 {
                        return err(ln, col, "map record is `map <a> <b>`");
                    }
                    let a = toks[1]
                        .1
                        .parse()
                        .or_else(|_| err(ln, toks[1].0, "bad integer"))?;
                    let b = toks[2]
                        .1
                        .parse()
                        .or_else(|_| err(ln, toks[2].0, "bad integer"))?;
                    budget = Some(BudgetMap::new(a, b));
                }
                "gadget" => {
                    if budget.is_none() {
                        return err(ln, col, "gadget record before map");
                    }
                    let Some(&(c, o)) = toks.get(1) else {
                        return err(ln, col, "gadget record needs an origin");
                    };
                    let origin = match o.strip_prefix('e') {
                        Some(rest) => {
                            Origin::Edge(rest.parse().or_else(|_| err(ln, c, "bad edge origin"))?)
                        }
                        None => Origin::Vertex(number(ln, (c, o), "origin")?),
                    };
                    let ids = toks[2..]
                        .iter()
                        .map(|&t| number(ln, t, "vertex"))
                        .collect::<Result<Vec<_>, _>>()?;
                    registry.push((origin, ids));
                }
                other => return err(ln, col, format!("unknown record `{other}`")),
            }
        }
        let Some(budget) = budget else {
            return err(1, 1, "missing map record");
        };
        Ok(Manifest { budget, registry })
    }
}

const PORTS: [&str; 8] = ["n", "ne", "e", "se", "s", "sw", "w", "nw"];
const PALETTE: usize = 12;

/// DOT text. With an embedding, edge-ends get compass ports in rotation order;
/// with a registry, vertices are filled by owning input vertex or edge.
pub fn to_dot(
    g: &AnyGraph,
    emb: Option<&Embedding>,
    registry: Option<&[(Origin, Vec<Vertex>)]>,
) -> String {
    let directed = g.is_directed();
    let mut out = String::new();
    out.push_str(if directed {
        "digraph G {\n"
    } else {
        "graph G {\n"
    });
    let n = g.vertex_count();
    let mut color = vec![None; n];
    if let Some(reg) = registry {
        for (i, (_, ids)) in reg.iter().enumerate() {
            for &v in ids {
                if v < n {
                    color[v] = Some(i % PALETTE + 1);
                }
            }
        }
    }
    let alive: Vec<bool> = match g {
        AnyGraph::Directed(d) => (0..n).map(|v| d.is_alive(v)).collect(),
        AnyGraph::Undirected(u) => (0..n).map(|v| u.is_alive(v)).collect(),
    };
    for v in (0..n).filter(|&v| alive[v]) {
        match color[v] {
            Some(c) => writeln!(out, "  {v} [style=filled, fillcolor=\"/set312/{c}\"];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    let mut port = std::collections::HashMap::new();
    if let Some(emb) = emb {
        for darts in &emb.rotation {
            let k = darts.len();
            for (i, &d) in darts.iter().enumerate() {
                port.insert(d, PORTS[(i * PORTS.len()) / k.max(1)]);
            }
        }
    }
    let edges: Vec<(usize, Vertex, Vertex)> = match g {
        AnyGraph::Directed(d) => d.edges().collect(),
        AnyGraph::Undirected(u) => u.edges().collect(),
    };
    let arrow = if directed { "->" } else { "--" };
    for (e, u, v) in edges {
        let tp = port.get(&Dart::new(e, End::A));
        let hp = port.get(&Dart::new(e, End::B));
        match (tp, hp) {
            (Some(a), Some(b)) => {
                writeln!(out, "  {u}:{a} {arrow} {v}:{b} [label=\"{e}\"];").unwrap()
            }
            _ => writeln!(out, "  {u} {arrow} {v} [label=\"{e}\"];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::test_planarity;

    #[test]
    fn two_cycle_parses() {
        let f = parse("graph directed 2 2\ne 0 1\ne 1 0\n").unwrap();
        let d = f.graph.as_directed().unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(serialize(&f), "graph directed 2 2\ne 0 1\ne 1 0\n");
    }

    #[test]
    fn comments_and_rotation() {
        let text = "# a triangle\ngraph undirected 3 3 # header\ne 0 1\ne 1 2\n\ne 2 0\nrot 0 0a 2b\nrot 1 1a 0b\nrot 2 2a 1b\n";
        let f = parse(text).unwrap();
        assert!(f.embedding.is_some());
        let again = parse(&serialize(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("graph directed 2 1\ne 0 5\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let e = parse("graph directed 2 1\ne 0 1").unwrap_err();
        assert!(e.msg.contains("trailing newline"));
        let e = parse("graph directed 2 1\ne 0 1\nrot 0 0b\n").unwrap_err();
        assert!(e.msg.contains("not at vertex 0"), "{e}");
        let e = parse("graph undirected 2 1\ne 0 1\nrot 0 0a\n").unwrap_err();
        assert!(e.msg.contains("inconsistent rotation"), "{e}");
    }

    #[test]
    fn manifest_round_trip() {
        let m = Manifest {
            budget: BudgetMap::new(72, -64),
            registry: vec![(Origin::Vertex(0), vec![0, 1]), (Origin::Edge(3), vec![7])],
        };
        let text = m.serialize();
        assert_eq!(text, "map 72 -64\ngadget 0 0 1\ngadget e3 7\n");
        assert_eq!(Manifest::parse(&text).unwrap(), m);
    }

    #[test]
    fn dot_kinds() {
        let d: AnyGraph = DiGraph::from_edges(2, [(0, 1), (1, 0)]).into();
        let s = to_dot(&d, None, None);
        assert!(s.starts_with("digraph") && s.matches("->").count() == 2);
        let u = UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let emb = test_planarity(&u).unwrap();
        let s = to_dot(&u.into(), Some(&emb), None);
        assert!(s.starts_with("graph G") && s.contains(":n --"));
    }
}
