//! Degree reduction for planar feedback vertex set: vertices of degree five or
//! more are replaced by planar gadgets until the maximum degree is four. Each
//! gadget raises the optimum by exactly two.
//!
//! Gadget layout, with `w` the replaced vertex and `vb` taking over its id:
//!
//! ```text
//!   v1 --- v2 ------ v4 --- v5        (v2 - v3 - v4 when w has degree 5)
//!     \   /            \   /
//!      va               vc
//!      | \             / |
//!      |  eL -- vb -- eR |
//!       \______/  \_____/
//! ```
//!
//! Triangles `va v1 v2`, `vc v5 v4`, `vb va eL`, `vb vc eR`. External edges keep
//! their cyclic order: one to `v1`, then a block to `v2`, then a block to `v4`,
//! then one to `v5` (degree 5: one each to `v1 .. v5`).

use crate::graph::{Dart, UGraph, Vertex};
use crate::planar::{test_planarity, Embedding};
use crate::solvers::Problem;

use super::doubling::require_compact;
use super::{BudgetMap, Origin, ReductionArtifact, ReductionError, Replacement, SolutionMaps};

pub fn speckenmeyer_reduce(
    g: &UGraph,
    emb: &Embedding,
) -> Result<ReductionArtifact, ReductionError> {
    require_compact(g)?;
    emb.validate(g)?;
    let mut cur = g.clone();
    let mut cur_emb = emb.clone();
    let mut root: Vec<Vertex> = (0..g.vertex_count()).collect();
    let mut steps = Vec::new();
    loop {
        let pick = cur
            .vertices()
            .filter(|&v| cur.degree(v) >= 6)
            .min()
            .or_else(|| cur.vertices().find(|&v| cur.degree(v) == 5));
        let Some(w) = pick else { break };
        let (next, step) = replace(&cur, &cur_emb, w);
        for &x in &step.members {
            if x >= root.len() {
                root.push(root[w]);
            }
        }
        cur_emb = test_planarity(&next)?;
        cur = next;
        steps.push(step);
    }
    let mut registry: Vec<(Origin, Vec<Vertex>)> = (0..g.vertex_count())
        .map(|v| (Origin::Vertex(v), Vec::new()))
        .collect();
    for (x, &r) in root.iter().enumerate() {
        registry[r].1.push(x);
    }
    let count = steps.len() as i64;
    Ok(ReductionArtifact {
        name: "speckenmeyer",
        input_problem: Problem::Fvs,
        output_problem: Problem::Fvs,
        input: g.clone().into(),
        output: cur.into(),
        embedding: Some(cur_emb),
        budget: BudgetMap::new(1, 2 * count),
        registry,
        maps: SolutionMaps::Replace(steps),
    })
}

/// Gadget for `w` according to its degree; returns the rebuilt graph (edge ids kept,
/// gadget edges appended) and the replacement record.
fn replace(g: &UGraph, emb: &Embedding, w: Vertex) -> (UGraph, Replacement) {
    let rot: Vec<Dart> = emb.at(w).to_vec();
    let d = rot.len();
    let base = g.vertex_count();
    let wide = d >= 6;
    let extra = if wide { 8 } else { 9 };
    // appended ids: v1 v2 v4 v5 va vc eL eR [v3]
    let (v1, v2, v4, v5, va, vc, el, er) = (
        base,
        base + 1,
        base + 2,
        base + 3,
        base + 4,
        base + 5,
        base + 6,
        base + 7,
    );
    let vb = w;
    let v3 = base + 8;

    let mut attach = Vec::with_capacity(d);
    if wide {
        let left = (d - 2) / 2;
        let right = d - 2 - left;
        attach.push(v1);
        attach.extend(std::iter::repeat_n(v2, left));
        attach.extend(std::iter::repeat_n(v4, right));
        attach.push(v5);
    } else {
        attach.extend([v1, v2, v3, v4, v5]);
    }

    let mut out = UGraph::new(base + extra);
    for e in 0..g.edge_slots() {
        let (mut a, mut b) = g.endpoints(e);
        for (i, dart) in rot.iter().enumerate() {
            if dart.edge == e {
                match dart.end {
                    crate::graph::End::A => a = attach[i],
                    crate::graph::End::B => b = attach[i],
                }
            }
        }
        out.add_edge(a, b);
    }
    let mut internal = vec![
        (va, v1),
        (va, v2),
        (v1, v2),
        (vc, v5),
        (vc, v4),
        (v4, v5),
        (vb, va),
        (vb, el),
        (va, el),
        (vb, vc),
        (vb, er),
        (vc, er),
    ];
    if wide {
        internal.push((v2, v4));
    } else {
        internal.extend([(v2, v3), (v3, v4)]);
    }
    for (a, b) in internal {
        out.add_edge(a, b);
    }
    let dead: Vec<Vertex> = g.dead_vertices().collect();
    let out = if dead.is_empty() {
        out
    } else {
        out.delete_vertices(&dead)
    };

    let mut members: Vec<Vertex> = (base..base + extra).collect();
    members.push(vb);
    let step = Replacement {
        original: w,
        unselected: vec![va, vc],
        selected: vec![v2, v4, vb],
        members,
        threshold: 2,
    };
    (out, step)
}
