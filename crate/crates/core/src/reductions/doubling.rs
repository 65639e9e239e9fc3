//! Doubling (vertex cover to feedback vertex set), splitting (feedback vertex
//! set to feedback arc set) and the oriented doubling of planar cubic graphs.

use crate::graph::{Dart, DiGraph, End, UGraph};
use crate::planar::{
    digraph_embedding, linear_forest_cover, test_planarity, Embedding, ForestClass,
};
use crate::solvers::Problem;

use super::{
    identity_registry, BudgetMap, Origin, ReductionArtifact, ReductionError, SolutionMaps,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleMode {
    /// Each edge becomes two opposite arcs.
    Arcs,
    /// Each edge becomes two parallel undirected edges.
    Parallel,
    /// Each edge is kept and a second copy is subdivided once.
    Subdivided,
}

impl DoubleMode {
    pub fn parse(s: &str) -> Option<DoubleMode> {
        match s {
            "arcs" => Some(DoubleMode::Arcs),
            "parallel" => Some(DoubleMode::Parallel),
            "subdivided" => Some(DoubleMode::Subdivided),
            _ => None,
        }
    }
}

pub(crate) fn require_compact<K: crate::graph::Kind>(
    g: &crate::graph::Graph<K>,
) -> Result<(), ReductionError> {
    if g.has_dead_vertices() {
        return Err(ReductionError::Precondition(
            "input has deleted vertices; compact it first".into(),
        ));
    }
    Ok(())
}

/// Edge `e = uv` becomes arcs `2e = u -> v` and `2e + 1 = v -> u` (or two parallel
/// edges with the same ids). In subdivided mode edge `e` is kept and the copy
/// runs through the new vertex `n + e`, as edges `m + 2e` and `m + 2e + 1`.
pub fn double_edges(g: &UGraph, mode: DoubleMode) -> Result<ReductionArtifact, ReductionError> {
    require_compact(g)?;
    let n = g.vertex_count();
    let m = g.edge_slots();
    let mut registry = identity_registry(n);
    let (output, maps) = match mode {
        DoubleMode::Arcs => {
            let mut d = DiGraph::new(n);
            for e in 0..m {
                let (u, v) = g.endpoints(e);
                d.add_edge(u, v);
                d.add_edge(v, u);
            }
            (d.into(), SolutionMaps::Same)
        }
        DoubleMode::Parallel => {
            let mut h = UGraph::new(n);
            for e in 0..m {
                let (u, v) = g.endpoints(e);
                h.add_edge(u, v);
                h.add_edge(u, v);
            }
            (h.into(), SolutionMaps::Same)
        }
        DoubleMode::Subdivided => {
            let mut h = UGraph::new(n + m);
            let mut parent = Vec::with_capacity(m);
            for e in 0..m {
                let (u, v) = g.endpoints(e);
                h.add_edge(u, v);
                parent.push(u.min(v));
                registry.push((Origin::Edge(e), vec![n + e]));
            }
            for e in 0..m {
                let (u, v) = g.endpoints(e);
                h.add_edge(u, n + e);
                h.add_edge(n + e, v);
            }
            (h.into(), SolutionMaps::Subdivided { n, parent })
        }
    };
    let embedding = match &output {
        crate::graph::AnyGraph::Directed(d) => digraph_embedding(d).ok(),
        crate::graph::AnyGraph::Undirected(u) => test_planarity(u).ok(),
    };
    Ok(ReductionArtifact {
        name: "double",
        input_problem: Problem::Vc,
        output_problem: Problem::Fvs,
        input: g.clone().into(),
        output,
        embedding,
        budget: BudgetMap::identity(),
        registry,
        maps,
    })
}

/// Vertex `v` becomes `v- = 2v` and `v+ = 2v + 1` joined by arc `v`; input arc
/// `e = (t, h)` becomes arc `n + e = t+ -> h-`.
pub fn split_vertices(d: &DiGraph) -> Result<ReductionArtifact, ReductionError> {
    require_compact(d)?;
    let n = d.vertex_count();
    let mut out = DiGraph::new(2 * n);
    for v in 0..n {
        out.add_edge(2 * v, 2 * v + 1);
    }
    let mut tails = Vec::with_capacity(d.edge_slots());
    for e in 0..d.edge_slots() {
        let (t, h) = d.endpoints(e);
        out.add_edge(2 * t + 1, 2 * h);
        tails.push(t);
    }
    let embedding = digraph_embedding(&out).ok();
    Ok(ReductionArtifact {
        name: "split",
        input_problem: Problem::Fvs,
        output_problem: Problem::Fas,
        input: d.clone().into(),
        output: out.into(),
        embedding,
        budget: BudgetMap::identity(),
        registry: (0..n)
            .map(|v| (Origin::Vertex(v), vec![2 * v, 2 * v + 1]))
            .collect(),
        maps: SolutionMaps::Split { n, tails },
    })
}

/// Doubles a planar cubic graph into a 3-regular digraph whose embedding is
/// irregular at every vertex. Edges of one linear forest are oriented so that,
/// going around each vertex, the outgoing copy comes first; the others the
/// reverse. Edge `e = uv` yields arcs `2e = u -> v` and `2e + 1 = v -> u`.
pub fn irregular_doubling(g: &UGraph) -> Result<ReductionArtifact, ReductionError> {
    require_compact(g)?;
    if !g.is_cubic() {
        let bad = g.vertices().find(|&v| g.degree(v) != 3).unwrap_or(0);
        return Err(ReductionError::Precondition(format!(
            "irregular doubling requires a cubic graph, vertex {bad} has degree {}",
            g.degree(bad)
        )));
    }
    let emb = test_planarity(g)?;
    let cover = linear_forest_cover(g).map_err(|e| ReductionError::Precondition(e.to_string()))?;
    let n = g.vertex_count();
    let mut out = DiGraph::new(n);
    for e in 0..g.edge_slots() {
        let (u, v) = g.endpoints(e);
        out.add_edge(u, v);
        out.add_edge(v, u);
    }
    let mut rotation = vec![Vec::new(); n];
    for (v, rot) in rotation.iter_mut().enumerate() {
        for &d in emb.at(v) {
            // at the A end the forward arc 2e leaves, at the B end arc 2e+1 leaves
            let (leave, enter) = match d.end {
                End::A => (
                    Dart::new(2 * d.edge, End::A),
                    Dart::new(2 * d.edge + 1, End::B),
                ),
                End::B => (
                    Dart::new(2 * d.edge + 1, End::A),
                    Dart::new(2 * d.edge, End::B),
                ),
            };
            if cover.class_of(d.edge) == Some(ForestClass::F1) {
                rot.extend([leave, enter]);
            } else {
                rot.extend([enter, leave]);
            }
        }
    }
    let embedding = Embedding::new(rotation);
    embedding.validate(&out)?;
    Ok(ReductionArtifact {
        name: "irregular-double",
        input_problem: Problem::Vc,
        output_problem: Problem::Fvs,
        input: g.clone().into(),
        output: out.into(),
        embedding: Some(embedding),
        budget: BudgetMap::identity(),
        registry: identity_registry(n),
        maps: SolutionMaps::Same,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{classify_pattern, sign_pattern, PatternClass};
    use crate::solvers::Solution;

    fn k4() -> UGraph {
        UGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn modes_have_expected_shape() {
        let tri = UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let a = double_edges(&tri, DoubleMode::Arcs).unwrap();
        assert!(a.output.is_directed());
        assert_eq!(a.output.edge_count(), 6);
        let s = double_edges(&tri, DoubleMode::Subdivided).unwrap();
        let h = s.output.as_undirected().unwrap();
        assert!(h.is_simple());
        assert_eq!((h.order(), h.edge_count()), (6, 9));
        assert_eq!(s.project(&Solution::vertices(vec![4])).unwrap(), vec![1]);
        assert_eq!(s.registered_vertices(), 6);
    }

    #[test]
    fn split_ids() {
        let d = DiGraph::from_edges(2, [(0, 1), (1, 0)]);
        let r = split_vertices(&d).unwrap();
        let out = r.output.as_directed().unwrap();
        assert_eq!(out.endpoints(2), (1, 2));
        assert_eq!(r.profile_sigma(), 1);
        assert_eq!(r.lift(&[1]).unwrap(), Solution::arcs(vec![1]));
        assert_eq!(r.project(&Solution::arcs(vec![3])).unwrap(), vec![1]);
    }

    #[test]
    fn k4_doubles_irregularly() {
        let r = irregular_doubling(&k4()).unwrap();
        let d = r.output.as_directed().unwrap();
        assert!(d.is_3_regular());
        let emb = r.embedding.as_ref().unwrap();
        for v in 0..4 {
            assert_eq!(
                classify_pattern(&sign_pattern(d, emb, v).unwrap()),
                PatternClass::Irregular
            );
        }
    }

    #[test]
    fn non_cubic_rejected() {
        let p = UGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(matches!(
            irregular_doubling(&p),
            Err(ReductionError::Precondition(_))
        ));
    }

    impl ReductionArtifact {
        fn profile_sigma(&self) -> usize {
            self.output.profile().sigma
        }
    }
}
