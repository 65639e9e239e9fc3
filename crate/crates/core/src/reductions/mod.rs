//! Gadget reductions between the feedback and cover problems.
//!
//! Every construction returns a [`ReductionArtifact`]: the output graph, an
//! affine budget map, a registry of which output vertices each input vertex or
//! edge spawned, and maps that carry solutions across in both directions.

mod cfvs;
mod dfvs;
mod doubling;
mod path_split;
mod speckenmeyer;
mod verify;

pub use cfvs::cfvs_gadget;
pub use dfvs::planar_dfvs_gadget;
pub use doubling::{double_edges, irregular_doubling, split_vertices, DoubleMode};
pub use path_split::{path_split_gadget, NeighborOrdering};
pub use speckenmeyer::speckenmeyer_reduce;
pub use verify::{verify_reduction, verify_reduction_as, VerificationReport, VerifyMode};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{AnyGraph, EdgeId, UGraph, Vertex};
use crate::planar::{Embedding, EmbeddingError, NonPlanar};
use crate::solvers::{Problem, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    NonPlanar(#[from] NonPlanar),
    #[error("invalid embedding: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("solution of the wrong kind: expected {expected}")]
    WrongSolution { expected: &'static str },
    #[error("id {0} is outside the graph")]
    OutOfRange(usize),
    #[error("{problem} is not a target of the {reduction} reduction")]
    Unsupported {
        reduction: &'static str,
        problem: Problem,
    },
}

/// `k' = a * k + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetMap {
    pub a: i64,
    pub b: i64,
}

impl BudgetMap {
    pub fn new(a: i64, b: i64) -> Self {
        BudgetMap { a, b }
    }

    pub fn identity() -> Self {
        BudgetMap { a: 1, b: 0 }
    }

    pub fn apply(&self, k: usize) -> i64 {
        self.a * k as i64 + self.b
    }
}

impl fmt::Display for BudgetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

/// What an output vertex was created for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Vertex(Vertex),
    Edge(EdgeId),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Vertex(v) => write!(f, "{v}"),
            Origin::Edge(e) => write!(f, "e{e}"),
        }
    }
}

/// One vertex replaced by a gadget: which output ids stand for "left out" and
/// "selected", and the members counted when projecting back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Replacement {
    pub original: Vertex,
    pub unselected: Vec<Vertex>,
    pub selected: Vec<Vertex>,
    pub members: Vec<Vertex>,
    /// The vertex counts as selected when more than this many members are chosen.
    pub threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SolutionMaps {
    /// Vertex ids carry over unchanged.
    Same,
    /// Subdivision vertices project to the given original vertex.
    Subdivided { n: usize, parent: Vec<Vertex> },
    /// Vertex `v` becomes the arc `v`; output arc `n + e` is input arc `e`.
    Split { n: usize, tails: Vec<Vertex> },
    PathSplit {
        vertex_lift: Vec<Option<Vertex>>,
        arc_lift: Vec<Option<EdgeId>>,
        owner: Vec<Vertex>,
        arc_owner: Vec<Vertex>,
    },
    /// Gadgets applied in order; ids of earlier steps stay valid in later ones.
    Replace(Vec<Replacement>),
    /// One gadget per input vertex, all output ids fresh.
    Gadgets(Vec<Replacement>),
    /// Per-vertex paths at `8v..8v+8`; edge paths start at `8n`.
    Cfvs {
        n: usize,
        path_of_edge: Vec<[Vec<Vertex>; 2]>,
    },
}

/// Output of a reduction together with everything needed to move solutions across.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub name: &'static str,
    pub input_problem: Problem,
    pub output_problem: Problem,
    pub input: AnyGraph,
    pub output: AnyGraph,
    pub embedding: Option<Embedding>,
    pub budget: BudgetMap,
    pub registry: Vec<(Origin, Vec<Vertex>)>,
    pub(crate) maps: SolutionMaps,
}

impl ReductionArtifact {
    /// Output budget for input budget `k`.
    pub fn map_budget(&self, k: usize) -> i64 {
        self.budget.apply(k)
    }

    /// Carries an input solution to a solution of the output problem.
    pub fn lift(&self, s: &[Vertex]) -> Result<Solution, ReductionError> {
        self.lift_as(s, self.output_problem)
    }

    /// Like [`lift`](Self::lift), choosing the target problem for reductions
    /// that serve two (the path gadget yields vertex or arc sets).
    pub fn lift_as(&self, s: &[Vertex], target: Problem) -> Result<Solution, ReductionError> {
        let n = self.input.vertex_count();
        if let Some(&bad) = s.iter().find(|&&v| v >= n) {
            return Err(ReductionError::OutOfRange(bad));
        }
        let unsupported = || ReductionError::Unsupported {
            reduction: self.name,
            problem: target,
        };
        let arcs_wanted = target == Problem::Fas;
        match &self.maps {
            SolutionMaps::Same | SolutionMaps::Subdivided { .. } => {
                if arcs_wanted {
                    return Err(unsupported());
                }
                Ok(Solution::vertices(s.to_vec()))
            }
            SolutionMaps::Split { .. } => {
                if !arcs_wanted {
                    return Err(unsupported());
                }
                Ok(Solution::arcs(s.to_vec()))
            }
            SolutionMaps::PathSplit {
                vertex_lift,
                arc_lift,
                ..
            } => {
                if arcs_wanted {
                    Ok(Solution::arcs(
                        s.iter().filter_map(|&v| arc_lift[v]).collect(),
                    ))
                } else {
                    Ok(Solution::vertices(
                        s.iter().filter_map(|&v| vertex_lift[v]).collect(),
                    ))
                }
            }
            SolutionMaps::Replace(steps) => {
                if arcs_wanted {
                    return Err(unsupported());
                }
                let mut cur: Vec<bool> = vec![false; self.output.vertex_count().max(n)];
                for &v in s {
                    cur[v] = true;
                }
                for r in steps {
                    let chosen = cur[r.original];
                    for &m in &r.members {
                        cur[m] = false;
                    }
                    let add = if chosen { &r.selected } else { &r.unselected };
                    for &x in add {
                        cur[x] = true;
                    }
                }
                Ok(Solution::vertices(
                    (0..cur.len()).filter(|&v| cur[v]).collect(),
                ))
            }
            SolutionMaps::Gadgets(gadgets) => {
                if arcs_wanted {
                    return Err(unsupported());
                }
                let mut inside = vec![false; n];
                for &v in s {
                    inside[v] = true;
                }
                let out = gadgets
                    .iter()
                    .flat_map(|r| {
                        if inside[r.original] {
                            r.selected.clone()
                        } else {
                            r.unselected.clone()
                        }
                    })
                    .collect();
                Ok(Solution::vertices(out))
            }
            SolutionMaps::Cfvs { n, path_of_edge } => {
                if arcs_wanted {
                    return Err(unsupported());
                }
                let mut out = Vec::new();
                for &v in s {
                    out.extend(8 * v..8 * v + 8);
                }
                let g = self
                    .input
                    .as_undirected()
                    .expect("cfvs input is undirected");
                for (e, parent) in spanning_tree(g, s) {
                    let (a, _) = g.endpoints(e);
                    let side = if a == parent { 0 } else { 1 };
                    out.extend(path_of_edge[e][side].iter().copied());
                }
                debug_assert!(out.iter().all(|&x| x < 8 * n + path_of_edge.len() * 16 * n));
                Ok(Solution::vertices(out))
            }
        }
    }

    /// Carries an output solution back to a solution of the input problem.
    pub fn project(&self, sol: &Solution) -> Result<Vec<Vertex>, ReductionError> {
        let limit = if sol.is_arcs() {
            self.output.edge_slots()
        } else {
            self.output.vertex_count()
        };
        if let Some(&bad) = sol.ids().iter().find(|&&x| x >= limit) {
            return Err(ReductionError::OutOfRange(bad));
        }
        let mut out: Vec<Vertex> = match (&self.maps, sol) {
            (SolutionMaps::Same, Solution::Vertices(v)) => v.clone(),
            (SolutionMaps::Subdivided { n, parent }, Solution::Vertices(v)) => v
                .iter()
                .map(|&x| if x < *n { x } else { parent[x - n] })
                .collect(),
            (SolutionMaps::Split { n, tails }, Solution::Arcs(a)) => a
                .iter()
                .map(|&x| if x < *n { x } else { tails[x - n] })
                .collect(),
            (SolutionMaps::PathSplit { owner, .. }, Solution::Vertices(v)) => {
                v.iter().map(|&x| owner[x]).collect()
            }
            (SolutionMaps::PathSplit { arc_owner, .. }, Solution::Arcs(a)) => {
                a.iter().map(|&x| arc_owner[x]).collect()
            }
            (SolutionMaps::Replace(steps), Solution::Vertices(v)) => {
                let mut cur: Vec<bool> = vec![false; self.output.vertex_count()];
                for &x in v {
                    cur[x] = true;
                }
                for r in steps.iter().rev() {
                    let hits = r.members.iter().filter(|&&m| cur[m]).count();
                    for &m in &r.members {
                        cur[m] = false;
                    }
                    cur[r.original] = hits > r.threshold;
                }
                let n = self.input.vertex_count();
                (0..n).filter(|&v| cur[v]).collect()
            }
            (SolutionMaps::Gadgets(gadgets), Solution::Vertices(v)) => {
                let mut cur: Vec<bool> = vec![false; self.output.vertex_count()];
                for &x in v {
                    cur[x] = true;
                }
                gadgets
                    .iter()
                    .filter(|r| r.members.iter().filter(|&&m| cur[m]).count() > r.threshold)
                    .map(|r| r.original)
                    .collect()
            }
            (SolutionMaps::Cfvs { n, .. }, Solution::Vertices(v)) => {
                v.iter().filter(|&&x| x < 8 * n).map(|&x| x / 8).collect()
            }
            (SolutionMaps::Split { .. }, _) => {
                return Err(ReductionError::WrongSolution {
                    expected: "arc set",
                })
            }
            _ => {
                return Err(ReductionError::WrongSolution {
                    expected: "vertex set",
                })
            }
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Number of output vertices listed in the registry.
    pub fn registered_vertices(&self) -> usize {
        self.registry.iter().map(|(_, v)| v.len()).sum()
    }
}

/// BFS spanning tree of the subgraph induced by `set`, rooted at its minimum.
/// Returns `(edge, parent)` pairs.
fn spanning_tree(g: &UGraph, set: &[Vertex]) -> Vec<(EdgeId, Vertex)> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    let Some(&root) = set.iter().min() else {
        return Vec::new();
    };
    let mut seen = vec![false; g.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(x) = queue.pop_front() {
        for d in g.darts(x) {
            let y = g.endpoint(d.twin());
            if inside[y] && !seen[y] && g.edge_is_live(d.edge) {
                seen[y] = true;
                tree.push((d.edge, x));
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Registry for reductions that keep ids: every vertex maps to itself.
fn identity_registry(n: usize) -> Vec<(Origin, Vec<Vertex>)> {
    (0..n).map(|v| (Origin::Vertex(v), vec![v])).collect()
}
