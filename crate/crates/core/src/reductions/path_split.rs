//! Replaces every vertex by a directed path with one vertex per incident arc,
//! giving maximum degree three.

use crate::graph::{DiGraph, EdgeId, Vertex};
use crate::planar::digraph_embedding;
use crate::solvers::Problem;

use super::doubling::require_compact;
use super::{BudgetMap, Origin, ReductionArtifact, ReductionError, SolutionMaps};

/// Numbering of the in-arcs and out-arcs at each vertex. Arc references rather
/// than neighbor ids, so parallel arcs get separate slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborOrdering {
    pub incoming: Vec<Vec<EdgeId>>,
    pub outgoing: Vec<Vec<EdgeId>>,
}

impl NeighborOrdering {
    /// Arcs in insertion order.
    pub fn insertion(d: &DiGraph) -> Self {
        let n = d.vertex_count();
        NeighborOrdering {
            incoming: (0..n).map(|v| d.in_edges(v).collect()).collect(),
            outgoing: (0..n).map(|v| d.out_edges(v).collect()).collect(),
        }
    }

    fn check(&self, d: &DiGraph) -> Result<(), ReductionError> {
        let n = d.vertex_count();
        if self.incoming.len() != n || self.outgoing.len() != n {
            return Err(ReductionError::Precondition(format!(
                "neighbor ordering must cover {n} vertices"
            )));
        }
        for v in 0..n {
            let mut a = self.incoming[v].clone();
            let mut b: Vec<EdgeId> = d.in_edges(v).collect();
            a.sort_unstable();
            b.sort_unstable();
            let mut c = self.outgoing[v].clone();
            let mut e: Vec<EdgeId> = d.out_edges(v).collect();
            c.sort_unstable();
            e.sort_unstable();
            if a != b || c != e {
                return Err(ReductionError::Precondition(format!(
                    "neighbor ordering at vertex {v} does not list its incident arcs"
                )));
            }
        }
        Ok(())
    }
}

/// Vertex `v` with `p` in-arcs and `q` out-arcs becomes the path
/// `v-_1 .. v-_p v+_1 .. v+_q`; the i-th in-arc enters `v-_i` and the j-th
/// out-arc leaves `v+_j`. Input arc ids are kept, path arcs are appended.
/// Isolated vertices vanish and keep an empty registry entry.
pub fn path_split_gadget(
    d: &DiGraph,
    ord: &NeighborOrdering,
) -> Result<ReductionArtifact, ReductionError> {
    require_compact(d)?;
    ord.check(d)?;
    let n = d.vertex_count();
    let m = d.edge_slots();
    let mut first = vec![0usize; n];
    let mut next = 0;
    for v in 0..n {
        first[v] = next;
        next += ord.incoming[v].len() + ord.outgoing[v].len();
    }
    let total = next;
    let mut out = DiGraph::new(total);
    let mut enter = vec![0usize; m];
    let mut leave = vec![0usize; m];
    for v in 0..n {
        let p = ord.incoming[v].len();
        for (i, &e) in ord.incoming[v].iter().enumerate() {
            enter[e] = first[v] + i;
        }
        for (j, &e) in ord.outgoing[v].iter().enumerate() {
            leave[e] = first[v] + p + j;
        }
    }
    let mut arc_owner = Vec::with_capacity(m + total);
    for e in 0..m {
        out.add_edge(leave[e], enter[e]);
        arc_owner.push(d.tail(e));
    }
    let mut owner = vec![0; total];
    let mut vertex_lift = vec![None; n];
    let mut arc_lift = vec![None; n];
    let mut registry = Vec::with_capacity(n);
    for v in 0..n {
        let p = ord.incoming[v].len();
        let size = p + ord.outgoing[v].len();
        let ids: Vec<Vertex> = (first[v]..first[v] + size).collect();
        for w in ids.windows(2) {
            let a = out.add_edge(w[0], w[1]);
            arc_owner.push(v);
            if p > 0 && w[0] + 1 == first[v] + p {
                arc_lift[v] = Some(a);
            }
        }
        for &x in &ids {
            owner[x] = v;
        }
        if size > 0 {
            vertex_lift[v] = Some(if size > p {
                first[v] + p
            } else {
                first[v] + size - 1
            });
        }
        registry.push((Origin::Vertex(v), ids));
    }
    let embedding = digraph_embedding(&out).ok();
    Ok(ReductionArtifact {
        name: "path-split",
        input_problem: Problem::Fvs,
        output_problem: Problem::Fvs,
        input: d.clone().into(),
        output: out.into(),
        embedding,
        budget: BudgetMap::identity(),
        registry,
        maps: SolutionMaps::PathSplit {
            vertex_lift,
            arc_lift,
            owner,
            arc_owner,
        },
    })
}
