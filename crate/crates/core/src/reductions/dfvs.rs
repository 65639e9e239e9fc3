//! Feedback vertex set on planar digraphs with in- and outdegree at most two,
//! from 3-regular planar digraphs with an irregular embedding. Every vertex
//! becomes an 11-vertex gadget; the optimum grows by exactly two per vertex.

use crate::graph::{DiGraph, End, Vertex};
use crate::planar::{digraph_embedding, sign_pattern, Embedding, SignPattern};
use crate::solvers::Problem;

use super::doubling::require_compact;
use super::{BudgetMap, Origin, ReductionArtifact, ReductionError, Replacement, SolutionMaps};

// positions inside a gadget
const IN12: usize = 0;
const OUT12: usize = 1;
const IN3: usize = 2;
const OUT3: usize = 3;
const INA: usize = 4;
const OUTA: usize = 5;
const VB: usize = 6;
const VB2: usize = 7;
const VC: usize = 8;
const VD: usize = 9;
const VD2: usize = 10;

pub(crate) const GADGET_SIZE: usize = 11;

/// Gadget arcs for the `--++-+` orientation: the bridge `in3 -> out3`, the path
/// `in12 ina outa out12` and four directed triangles.
const ARCS: [(usize, usize); 16] = [
    (IN3, OUT3),
    (IN12, INA),
    (INA, OUTA),
    (OUTA, OUT12),
    (VB, VC),
    (VC, VB2),
    (VB2, VB),
    (VC, VD),
    (VD, VD2),
    (VD2, VC),
    (INA, OUT3),
    (OUT3, VB),
    (VB, INA),
    (IN3, OUTA),
    (OUTA, VD),
    (VD, IN3),
];

/// Where the six rotation slots attach, starting at the first `-` of `--++-+`.
const SLOTS: [usize; 6] = [IN12, IN12, OUT12, OUT12, IN3, OUT3];

/// Vertex `v` becomes ids `11v .. 11v + 11`. Input arc ids are kept; gadget arcs
/// are appended, 16 per vertex. A vertex with pattern `++--+-` gets the gadget
/// with every arc reversed.
pub fn planar_dfvs_gadget(
    d: &DiGraph,
    emb: &Embedding,
) -> Result<ReductionArtifact, ReductionError> {
    require_compact(d)?;
    emb.validate(d)?;
    if let Some(v) = d
        .vertices()
        .find(|&v| d.in_degree(v) != 3 || d.out_degree(v) != 3)
    {
        return Err(ReductionError::Precondition(format!(
            "planar-dfvs requires a 3-regular digraph, vertex {v} has indegree {} and outdegree {}",
            d.in_degree(v),
            d.out_degree(v)
        )));
    }
    let minus_first = SignPattern::parse("--++-+").unwrap();
    let plus_first = SignPattern::parse("++--+-").unwrap();
    let n = d.vertex_count();
    let m = d.edge_slots();
    let mut tail_at = vec![0; m];
    let mut head_at = vec![0; m];
    let mut reversed = vec![false; n];
    for v in 0..n {
        let pattern = sign_pattern(d, emb, v)?;
        let (offset, rev) = if let Some(k) = pattern.offset_of(&minus_first) {
            (k, false)
        } else if let Some(k) = pattern.offset_of(&plus_first) {
            (k, true)
        } else {
            return Err(ReductionError::Precondition(format!(
                "vertex {v} has sign pattern {pattern}, expected an irregular one"
            )));
        };
        reversed[v] = rev;
        let rot = emb.at(v);
        for (i, &slot) in SLOTS.iter().enumerate() {
            let dart = rot[(offset + i) % 6];
            let id = GADGET_SIZE * v + slot;
            match dart.end {
                End::A => tail_at[dart.edge] = id,
                End::B => head_at[dart.edge] = id,
            }
        }
    }
    let mut out = DiGraph::new(GADGET_SIZE * n);
    for e in 0..m {
        out.add_edge(tail_at[e], head_at[e]);
    }
    let mut gadgets = Vec::with_capacity(n);
    let mut registry = Vec::with_capacity(n);
    for v in 0..n {
        let at = |p: usize| GADGET_SIZE * v + p;
        for &(a, b) in &ARCS {
            if reversed[v] {
                out.add_edge(at(b), at(a));
            } else {
                out.add_edge(at(a), at(b));
            }
        }
        let members: Vec<Vertex> = (0..GADGET_SIZE).map(at).collect();
        gadgets.push(Replacement {
            original: v,
            unselected: vec![at(VB), at(VD)],
            selected: vec![at(INA), at(VC), at(IN3)],
            members: members.clone(),
            threshold: 2,
        });
        registry.push((Origin::Vertex(v), members));
    }
    let embedding = digraph_embedding(&out).ok();
    Ok(ReductionArtifact {
        name: "planar-dfvs",
        input_problem: Problem::Fvs,
        output_problem: Problem::Fvs,
        input: d.clone().into(),
        output: out.into(),
        embedding,
        budget: BudgetMap::new(1, 2 * n as i64),
        registry,
        maps: SolutionMaps::Gadgets(gadgets),
    })
}
