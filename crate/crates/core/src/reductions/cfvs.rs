//! Connected vertex cover on planar graphs of maximum degree four to connected
//! feedback vertex set on planar graphs of maximum degree three.
//!
//! Each vertex becomes a path on eight vertices; each edge `uv` becomes two
//! paths of `8n` vertices, `P(uv)` from `u` to `v` and `P(vu)` back. The i-th
//! edge around `v` (in rotation order) attaches the start of `P(v x_i)` to
//! `v_{2i-1}` and the end of `P(x_i v)` to `v_{2i}`. The correspondence holds
//! at the level of decisions: `k' = 8k + 8n(k - 1)`.

use crate::graph::{End, UGraph, Vertex};
use crate::planar::test_planarity;
use crate::solvers::Problem;

use super::doubling::require_compact;
use super::{BudgetMap, Origin, ReductionArtifact, ReductionError, SolutionMaps};

pub fn cfvs_gadget(g: &UGraph) -> Result<ReductionArtifact, ReductionError> {
    require_compact(g)?;
    let pre = |msg: String| Err(ReductionError::Precondition(msg));
    if let Some((e, _, _)) = g.edges().find(|&(e, _, _)| g.is_loop(e)) {
        return pre(format!(
            "cfvs requires a loopless graph, edge {e} is a self-loop"
        ));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) > 4) {
        return pre(format!(
            "cfvs requires maximum degree 4, found {} at vertex {v}",
            g.degree(v)
        ));
    }
    if g.edge_count() < 2 {
        return pre(format!(
            "cfvs requires at least two edges, found {}",
            g.edge_count()
        ));
    }
    if !g.is_connected() {
        return pre("cfvs requires a connected graph".into());
    }
    let emb = test_planarity(g)?;
    let n = g.vertex_count();
    let m = g.edge_slots();
    let long = 8 * n;
    let total = 8 * n + 2 * long * m;
    let mut out = UGraph::new(total);
    let mut registry = Vec::with_capacity(n + m);
    for v in 0..n {
        for i in 0..7 {
            out.add_edge(8 * v + i, 8 * v + i + 1);
        }
        registry.push((Origin::Vertex(v), (8 * v..8 * v + 8).collect::<Vec<_>>()));
    }
    let mut path_of_edge = Vec::with_capacity(m);
    for e in 0..m {
        let base = 8 * n + 2 * long * e;
        let forward: Vec<Vertex> = (base..base + long).collect();
        let back: Vec<Vertex> = (base + long..base + 2 * long).collect();
        for p in [&forward, &back] {
            for w in p.windows(2) {
                out.add_edge(w[0], w[1]);
            }
        }
        registry.push((Origin::Edge(e), (base..base + 2 * long).collect()));
        path_of_edge.push([forward, back]);
    }
    for v in 0..n {
        for (i, d) in emb.at(v).iter().enumerate() {
            let [forward, back] = &path_of_edge[d.edge];
            // forward runs from the A end to the B end
            let (leaving, arriving) = match d.end {
                End::A => (forward, back),
                End::B => (back, forward),
            };
            out.add_edge(8 * v + 2 * i, leaving[0]);
            out.add_edge(8 * v + 2 * i + 1, *arriving.last().unwrap());
        }
    }
    let embedding = test_planarity(&out).ok();
    Ok(ReductionArtifact {
        name: "cfvs",
        input_problem: Problem::Cvc,
        output_problem: Problem::Cfvs,
        input: g.clone().into(),
        output: out.into(),
        embedding,
        budget: BudgetMap::new(8 + 8 * n as i64, -8 * n as i64),
        registry,
        maps: SolutionMaps::Cfvs { n, path_of_edge },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{validate, Instance};

    #[test]
    fn p3_counts() {
        let p3 = UGraph::from_edges(3, [(0, 1), (1, 2)]);
        let r = cfvs_gadget(&p3).unwrap();
        assert_eq!(r.output.vertex_count(), 120);
        assert_eq!(r.map_budget(1), 8);
        let h = r.output.as_undirected().unwrap();
        assert!(h.max_degree() <= 3 && h.is_connected());
        assert!(r.embedding.is_some());
        assert_eq!(r.registered_vertices(), 120);
    }

    #[test]
    fn triangle_lift_is_feasible() {
        let tri = UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let r = cfvs_gadget(&tri).unwrap();
        let s = r.lift(&[0, 1]).unwrap();
        assert_eq!(s.len() as i64, r.map_budget(2));
        let inst = Instance::new(r.output.clone(), Problem::Cfvs).unwrap();
        assert!(validate(&inst, &s).unwrap().feasible);
        assert_eq!(r.project(&s).unwrap(), vec![0, 1]);
    }

    #[test]
    fn preconditions() {
        let star = UGraph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let err = cfvs_gadget(&star).unwrap_err().to_string();
        assert_eq!(err, "cfvs requires maximum degree 4, found 5 at vertex 0");
        assert!(cfvs_gadget(&UGraph::from_edges(2, [(0, 1)])).is_err());
    }
}
