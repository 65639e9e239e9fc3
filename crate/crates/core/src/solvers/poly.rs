//! Polynomial procedures: digraphs of maximum degree two, the split-and-embed
//! pipeline for feedback vertex set, and the cubic identity between feedback
//! vertex set and connected vertex cover.

use crate::graph::{DiGraph, UGraph};
use crate::reductions::split_vertices;

use super::{
    solve_with, Instance, Problem, Solution, SolveError, SolveOptions, SolveResult, Verdict,
};

/// After trimming, a digraph of maximum degree two is a disjoint union of
/// directed cycles; one vertex (or arc) per cycle is optimal. The smallest id
/// of each cycle is taken, which is also the lexicographically least optimum.
pub fn solve_deg2(d: &DiGraph, problem: Problem) -> Result<SolveResult, SolveError> {
    if !matches!(problem, Problem::Fvs | Problem::Fas) {
        return Err(SolveError::NotApplicable(format!(
            "{problem} has no degree-2 procedure"
        )));
    }
    let delta = d.max_degree();
    if delta > 2 {
        return Err(SolveError::NotApplicable(format!(
            "maximum degree {delta} exceeds 2"
        )));
    }
    let core = d.trim_non_cyclic();
    let mut seen = vec![false; core.vertex_count()];
    let mut picks = Vec::new();
    for start in core.vertices() {
        if seen[start] {
            continue;
        }
        let (mut min_v, mut min_a) = (start, usize::MAX);
        let mut v = start;
        loop {
            seen[v] = true;
            min_v = min_v.min(v);
            let a = core
                .out_edges(v)
                .next()
                .expect("trimmed vertex has an out-arc");
            min_a = min_a.min(a);
            v = core.head(a);
            if v == start {
                break;
            }
        }
        picks.push(if problem == Problem::Fas {
            min_a
        } else {
            min_v
        });
    }
    let count = picks.len();
    let certificate = if problem == Problem::Fas {
        Solution::arcs(picks)
    } else {
        Solution::vertices(picks)
    };
    Ok(SolveResult {
        verdict: Verdict::Optimal(count),
        certificate: Some(certificate),
        explored: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineOutcome {
    /// Minimum feedback vertex set of the input, obtained through the split graph.
    Applicable(SolveResult),
    /// The split graph has no plane embedding.
    NotApplicable,
}

/// Splits every vertex, embeds the result and, when it is planar, solves
/// feedback arc set there and reads off a feedback vertex set of the input.
/// The arc set is found by the exact solver.
pub fn solve_bipolar_pipeline(
    d: &DiGraph,
    opts: &SolveOptions,
) -> Result<PipelineOutcome, SolveError> {
    let art = split_vertices(d).map_err(|e| SolveError::NotApplicable(e.to_string()))?;
    if art.embedding.is_none() {
        return Ok(PipelineOutcome::NotApplicable);
    }
    let fas = solve_with(&Instance::new(art.output.clone(), Problem::Fas)?, opts)?;
    let cert = match &fas.certificate {
        Some(c) => Some(Solution::vertices(
            art.project(c)
                .map_err(|e| SolveError::NotApplicable(e.to_string()))?,
        )),
        None => None,
    };
    Ok(PipelineOutcome::Applicable(SolveResult {
        verdict: fas.verdict,
        certificate: cert,
        explored: fas.explored,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicIdentityReport {
    pub n: usize,
    pub fvs: usize,
    pub cvc: usize,
    /// `fvs = cvc - n/2 + 1`.
    pub holds: bool,
}

pub fn check_cubic_identity(
    g: &UGraph,
    opts: &SolveOptions,
) -> Result<CubicIdentityReport, SolveError> {
    if !g.is_cubic() || !g.is_connected() {
        return Err(SolveError::NotApplicable(
            "identity needs a connected cubic graph".into(),
        ));
    }
    let value = |p: Problem| -> Result<usize, SolveError> {
        let r = solve_with(&Instance::new(g.clone(), p)?, opts)?;
        r.value()
            .ok_or_else(|| SolveError::NotApplicable(format!("{p} has no optimum")))
    };
    let fvs = value(Problem::Fvs)?;
    let cvc = value(Problem::Cvc)?;
    let n = g.order();
    Ok(CubicIdentityReport {
        n,
        fvs,
        cvc,
        holds: fvs as i64 == cvc as i64 - (n / 2) as i64 + 1,
    })
}
