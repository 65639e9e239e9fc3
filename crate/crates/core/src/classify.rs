//! Complexity classification of feedback set instances from measured degree
//! parameters and planarity.

use std::fmt;

use crate::graph::AnyGraph;
use crate::planar::is_planar;

/// Whether vertices or arcs (edges, for undirected graphs) are deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Vertex,
    Arc,
}

impl Target {
    pub fn parse(s: &str) -> Option<Target> {
        match s {
            "vertex" | "fvs" => Some(Target::Vertex),
            "arc" | "edge" | "fas" => Some(Target::Arc),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complexity {
    Polynomial,
    NpComplete,
    /// Trivially polynomial: deleting edges from an undirected graph leaves a
    /// spanning forest, so the optimum is `m - n + components`.
    PolynomialByStructure,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::Polynomial => "P",
            Complexity::NpComplete => "NP-complete",
            Complexity::PolynomialByStructure => "P (structure)",
        })
    }
}

/// One row of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Row {
    pub name: &'static str,
    pub directed: bool,
    pub planar: bool,
    pub target: Target,
    /// Human-readable polynomial range.
    pub easy: &'static str,
    pub hard: &'static str,
    pub easy_tag: &'static str,
    pub hard_tag: &'static str,
}

pub const ROWS: [Row; 8] = [
    Row {
        name: "Undirected, vertex",
        directed: false,
        planar: false,
        target: Target::Vertex,
        easy: "Delta <= 3",
        hard: "Delta >= 4",
        easy_tag: "subcubic-fvs-matroid",
        hard_tag: "degree-4-fvs",
    },
    Row {
        name: "Planar undirected, vertex",
        directed: false,
        planar: true,
        target: Target::Vertex,
        easy: "Delta <= 3",
        hard: "Delta >= 4",
        easy_tag: "subcubic-fvs-matroid",
        hard_tag: "planar-degree-4-fvs",
    },
    Row {
        name: "Undirected, edge",
        directed: false,
        planar: false,
        target: Target::Arc,
        easy: "always",
        hard: "",
        easy_tag: "spanning-forest",
        hard_tag: "",
    },
    Row {
        name: "Planar undirected, edge",
        directed: false,
        planar: true,
        target: Target::Arc,
        easy: "always",
        hard: "",
        easy_tag: "spanning-forest",
        hard_tag: "",
    },
    Row {
        name: "Directed, vertex",
        directed: true,
        planar: false,
        target: Target::Vertex,
        easy: "Delta <= 2",
        hard: "Delta >= 3",
        easy_tag: "disjoint-cycles",
        hard_tag: "path-split-gadget",
    },
    Row {
        name: "Directed, arc",
        directed: true,
        planar: false,
        target: Target::Arc,
        easy: "Delta <= 2",
        hard: "Delta >= 3",
        easy_tag: "disjoint-cycles",
        hard_tag: "path-split-gadget",
    },
    Row {
        name: "Planar directed, vertex",
        directed: true,
        planar: true,
        target: Target::Vertex,
        easy: "sigma <= 1",
        hard: "sigma >= 2",
        easy_tag: "split-then-planar-fas",
        hard_tag: "eleven-vertex-gadget",
    },
    Row {
        name: "Planar directed, arc",
        directed: true,
        planar: true,
        target: Target::Arc,
        easy: "always",
        hard: "",
        easy_tag: "planar-fas-minimax",
        hard_tag: "",
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub row: &'static Row,
    pub delta: usize,
    /// Only measured for digraphs.
    pub sigma: Option<usize>,
    pub planar: bool,
    pub verdict: Complexity,
    pub citation: &'static str,
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma = self.sigma.map_or("-".to_string(), |s| s.to_string());
        write!(
            f,
            "row: {} | Delta={} sigma={} planar={} | verdict: {} [{}]",
            self.row.name, self.delta, sigma, self.planar, self.verdict, self.citation
        )
    }
}

/// Verdict from the measured parameters alone; total over all inputs.
pub fn verdict_for(
    directed: bool,
    target: Target,
    delta: usize,
    sigma: usize,
    planar: bool,
) -> ClassificationVerdict {
    let row = ROWS
        .iter()
        .find(|r| r.directed == directed && r.target == target && r.planar == planar)
        .expect("every combination has a row");
    let easy = match (directed, planar, target) {
        (false, _, Target::Arc) => None,
        (false, _, Target::Vertex) => Some(delta <= 3),
        (true, false, _) => Some(delta <= 2),
        (true, true, Target::Vertex) => Some(sigma <= 1),
        (true, true, Target::Arc) => Some(true),
    };
    let (verdict, citation) = match easy {
        None => (Complexity::PolynomialByStructure, row.easy_tag),
        Some(true) => (Complexity::Polynomial, row.easy_tag),
        Some(false) => (Complexity::NpComplete, row.hard_tag),
    };
    ClassificationVerdict {
        row,
        delta,
        sigma: directed.then_some(sigma),
        planar,
        verdict,
        citation,
    }
}

/// Measures the graph and picks the most specific matching row.
pub fn classify(g: &AnyGraph, target: Target) -> ClassificationVerdict {
    let profile = g.profile();
    let planar = match g {
        AnyGraph::Directed(d) => is_planar(d),
        AnyGraph::Undirected(u) => is_planar(u),
    };
    verdict_for(
        g.is_directed(),
        target,
        profile.max_degree,
        profile.sigma,
        planar,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DiGraph;

    #[test]
    fn examples() {
        assert_eq!(
            verdict_for(true, Target::Vertex, 3, 1, false).verdict,
            Complexity::NpComplete
        );
        assert_eq!(
            verdict_for(true, Target::Arc, 9, 4, true).verdict,
            Complexity::Polynomial
        );
        assert_eq!(
            verdict_for(true, Target::Vertex, 6, 1, true).verdict,
            Complexity::Polynomial
        );
        assert_eq!(
            verdict_for(false, Target::Arc, 9, 0, false).verdict,
            Complexity::PolynomialByStructure
        );
    }

    #[test]
    fn measured() {
        let c = DiGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let v = classify(&c.into(), Target::Vertex);
        assert_eq!(v.row.name, "Planar directed, vertex");
        assert_eq!(v.verdict, Complexity::Polynomial);
    }
}
