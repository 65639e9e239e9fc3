//! Named reductions and the seeded verification runs behind `fbset verify`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::generators::{
    planar_cubic_catalog, random_connected_planar_deg4, random_digraph, random_graph,
    random_planar_hub, wheel,
};
use crate::graph::{AnyGraph, DiGraph, Graph, Kind, UGraph};
use crate::io::{serialize, GraphFile};
use crate::planar::{classify_pattern, is_planar, sign_pattern, test_planarity, PatternClass};
use crate::reductions::{
    cfvs_gadget, double_edges, irregular_doubling, path_split_gadget, planar_dfvs_gadget,
    speckenmeyer_reduce, split_vertices, verify_reduction_as, DoubleMode, NeighborOrdering,
    ReductionArtifact, ReductionError, VerificationReport, VerifyMode,
};
use crate::solvers::{solve_with, Instance, Problem, SolveError, SolveOptions};

pub const REDUCTIONS: [&str; 7] = [
    "double",
    "split",
    "path-split",
    "speckenmeyer",
    "irregular-double",
    "planar-dfvs",
    "cfvs",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown reduction {0:?}; expected one of {list}", list = REDUCTIONS.join(", "))]
    UnknownReduction(String),
    #[error("{op} needs a {want} graph")]
    WrongKind { op: String, want: &'static str },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Applies a reduction by name. `planar-dfvs` on an undirected cubic graph
/// runs irregular doubling first; on a digraph it needs the file's rotation.
pub fn transform(
    op: &str,
    file: &GraphFile,
    mode: DoubleMode,
) -> Result<ReductionArtifact, SuiteError> {
    let undirected = || {
        file.graph
            .as_undirected()
            .ok_or_else(|| SuiteError::WrongKind {
                op: op.to_string(),
                want: "undirected",
            })
    };
    let directed = || {
        file.graph
            .as_directed()
            .ok_or_else(|| SuiteError::WrongKind {
                op: op.to_string(),
                want: "directed",
            })
    };
    let art = match op {
        "double" => double_edges(undirected()?, mode)?,
        "split" => split_vertices(directed()?)?,
        "path-split" => {
            let d = directed()?;
            path_split_gadget(d, &NeighborOrdering::insertion(d))?
        }
        "speckenmeyer" => {
            let g = undirected()?;
            let emb = match &file.embedding {
                Some(e) => e.clone(),
                None => test_planarity(g).map_err(ReductionError::from)?,
            };
            speckenmeyer_reduce(g, &emb)?
        }
        "irregular-double" => irregular_doubling(undirected()?)?,
        "planar-dfvs" => match &file.graph {
            AnyGraph::Undirected(g) => dfvs_via_doubling(g)?,
            AnyGraph::Directed(d) => {
                let emb = file.embedding.as_ref().ok_or_else(|| {
                    ReductionError::Precondition(
                        "planar-dfvs needs rot records giving an irregular embedding".into(),
                    )
                })?;
                planar_dfvs_gadget(d, emb)?
            }
        },
        "cfvs" => cfvs_gadget(undirected()?)?,
        other => return Err(SuiteError::UnknownReduction(other.to_string())),
    };
    Ok(art)
}

fn dfvs_via_doubling(g: &UGraph) -> Result<ReductionArtifact, ReductionError> {
    let doubled = irregular_doubling(g)?;
    let d = doubled
        .output
        .as_directed()
        .expect("doubling yields a digraph");
    let emb = doubled
        .embedding
        .as_ref()
        .expect("doubling yields an embedding");
    planar_dfvs_gadget(d, emb)
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub reduction: String,
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    pub opts: SolveOptions,
}

/// Outcome of a verification run. Rendering is deterministic for a fixed
/// configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Input graph of the first failing case.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(
        &mut self,
        case: &str,
        input: &GraphFile,
        report: Result<VerificationReport, SolveError>,
    ) {
        match report {
            Ok(r) => {
                self.lines.push(format!("{case}: {r}"));
                if r.passed() {
                    self.passed += 1;
                } else {
                    self.failed += 1;
                    if self.counterexample.is_none() {
                        self.counterexample = Some(serialize(input));
                    }
                }
            }
            Err(SolveError::Envelope { detail }) => {
                self.lines.push(format!("{case}: skipped ({detail})"));
                self.skipped += 1;
            }
            Err(e) => {
                self.lines.push(format!("{case}: error: {e}"));
                self.failed += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(serialize(input));
                }
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        writeln!(
            f,
            "summary: {} passed, {} failed, {} skipped: {}",
            self.passed,
            self.failed,
            self.skipped,
            if self.ok() { "PASS" } else { "FAIL" }
        )?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample:")?;
            f.write_str(c)?;
        }
        Ok(())
    }
}

/// Every loopless digraph (or simple graph) on exactly `n` vertices.
fn all_graphs<K: Kind>(n: usize, directed: bool) -> Vec<Graph<K>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| if directed { u != v } else { u < v })
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            Graph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p),
            )
        })
        .collect()
}

fn random_n(rng: &mut ChaCha8Rng, lo: usize, max_n: usize) -> usize {
    rng.gen_range(lo..=max_n.max(lo))
}

fn digraph_family(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<DiGraph> {
    if cfg.max_n <= 3 {
        return (1..=cfg.max_n).flat_map(|n| all_graphs(n, true)).collect();
    }
    (0..cfg.trials)
        .map(|_| {
            let n = random_n(rng, 1, cfg.max_n);
            let p = rng.gen_range(0.15..0.5);
            random_digraph(n, p, rng)
        })
        .collect()
}

fn graph_family(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<UGraph> {
    if cfg.max_n <= 3 {
        return (1..=cfg.max_n).flat_map(|n| all_graphs(n, false)).collect();
    }
    (0..cfg.trials)
        .map(|_| {
            let n = random_n(rng, 1, cfg.max_n);
            let p = rng.gen_range(0.2..0.7);
            random_graph(n, p, rng)
        })
        .collect()
}

fn hub_family(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<UGraph> {
    if cfg.max_n < 6 {
        return Vec::new();
    }
    if cfg.max_n == 6 {
        return vec![wheel(5)];
    }
    let top = (cfg.max_n - 1).min(7);
    (0..cfg.trials)
        .map(|_| loop {
            let g = random_planar_hub(rng.gen_range(5..=top), rng);
            if g.vertex_count() <= cfg.max_n {
                break g;
            }
        })
        .collect()
}

fn cfvs_family(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<UGraph> {
    if cfg.max_n < 3 {
        return Vec::new();
    }
    if cfg.max_n == 3 {
        return vec![
            UGraph::from_edges(3, [(0, 1), (1, 2)]),
            UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]),
        ];
    }
    (0..cfg.trials)
        .map(|_| random_connected_planar_deg4(random_n(rng, 3, cfg.max_n), rng))
        .collect()
}

fn cubic_family(cfg: &VerifyConfig) -> Vec<(&'static str, UGraph)> {
    planar_cubic_catalog()
        .into_iter()
        .filter(|(_, g)| g.vertex_count() <= cfg.max_n)
        .collect()
}

fn optimum(
    art: &ReductionArtifact,
    target: Problem,
    opts: &SolveOptions,
) -> Result<VerificationReport, SolveError> {
    verify_reduction_as(art, target, VerifyMode::OptimumEquality, opts)
}

/// Runs the named reduction over its instance family and checks every case
/// with the exact solvers. Families are exhaustive for tiny `max_n`
/// (all graphs when `max_n <= 3`, the whole catalog for catalog-based
/// reductions) and seeded random otherwise.
pub fn run_verify(cfg: &VerifyConfig) -> Result<SuiteReport, SuiteError> {
    if !REDUCTIONS.contains(&cfg.reduction.as_str()) {
        return Err(SuiteError::UnknownReduction(cfg.reduction.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = SuiteReport::default();
    let opts = &cfg.opts;
    match cfg.reduction.as_str() {
        "split" => {
            for (i, d) in digraph_family(cfg, &mut rng).into_iter().enumerate() {
                let file = GraphFile::new(d.clone());
                let case = format!("#{i} n={} m={}", d.vertex_count(), d.edge_count());
                let art = split_vertices(&d)?;
                let sigma = art.output.profile().sigma;
                let mut r = optimum(&art, Problem::Fas, opts);
                if let Ok(r) = &mut r {
                    if sigma > 1 {
                        r.failures.push(format!("output sigma {sigma}"));
                    }
                }
                out.record(&case, &file, r);
            }
        }
        "double" => {
            for (i, g) in graph_family(cfg, &mut rng).into_iter().enumerate() {
                let file = GraphFile::new(g.clone());
                let planar = is_planar(&g);
                for mode in [
                    DoubleMode::Arcs,
                    DoubleMode::Parallel,
                    DoubleMode::Subdivided,
                ] {
                    let case = format!("#{i} n={} m={} {mode:?}", g.vertex_count(), g.edge_count());
                    let art = double_edges(&g, mode)?;
                    let mut r = optimum(&art, Problem::Fvs, opts);
                    if let Ok(r) = &mut r {
                        if planar && art.embedding.is_none() {
                            r.failures.push("planar input, non-planar output".into());
                        }
                    }
                    out.record(&case, &file, r);
                }
            }
        }
        "path-split" => {
            for (i, d) in digraph_family(cfg, &mut rng).into_iter().enumerate() {
                let file = GraphFile::new(d.clone());
                let mut ord = NeighborOrdering::insertion(&d);
                for list in ord.incoming.iter_mut().chain(ord.outgoing.iter_mut()) {
                    list.shuffle(&mut rng);
                }
                let art = path_split_gadget(&d, &ord)?;
                let out_d = art.output.as_directed().expect("digraph output");
                let mut shape = Vec::new();
                if out_d.max_degree() > 3 {
                    shape.push(format!("output degree {}", out_d.max_degree()));
                }
                let core = out_d.trim_non_cyclic();
                if core
                    .vertices()
                    .any(|v| core.in_degree(v) > 2 || core.out_degree(v) > 2)
                {
                    shape.push("trimmed output has a vertex with in- or out-degree above 2".into());
                }
                for target in [Problem::Fvs, Problem::Fas] {
                    let case = format!("#{i} n={} m={} {target}", d.vertex_count(), d.edge_count());
                    let mut r = optimum(&art, target, opts);
                    if let Ok(r) = &mut r {
                        r.failures.extend(shape.iter().cloned());
                    }
                    out.record(&case, &file, r);
                }
            }
        }
        "speckenmeyer" => {
            for (i, g) in hub_family(cfg, &mut rng).into_iter().enumerate() {
                let file = GraphFile::new(g.clone());
                let case = format!("#{i} n={} Delta={}", g.vertex_count(), g.max_degree());
                let emb = test_planarity(&g).map_err(ReductionError::from)?;
                let art = speckenmeyer_reduce(&g, &emb)?;
                let mut r = optimum(&art, Problem::Fvs, opts);
                if let Ok(r) = &mut r {
                    let delta = art.output.profile().max_degree;
                    if delta > 4 {
                        r.failures.push(format!("output degree {delta}"));
                    }
                    if art.embedding.is_none() {
                        r.failures.push("output is not planar".into());
                    }
                }
                out.record(&case, &file, r);
            }
        }
        "irregular-double" => {
            for (name, g) in cubic_family(cfg) {
                let file = GraphFile::new(g.clone());
                let art = irregular_doubling(&g)?;
                let mut r = optimum(&art, Problem::Fvs, opts);
                if let Ok(r) = &mut r {
                    let d = art.output.as_directed().expect("digraph output");
                    let emb = art.embedding.as_ref().expect("embedding");
                    let irregular = d.vertices().all(|v| {
                        sign_pattern(d, emb, v)
                            .map(|p| classify_pattern(&p) == PatternClass::Irregular)
                            .unwrap_or(false)
                    });
                    if !irregular {
                        r.failures.push("some vertex is not irregular".into());
                    }
                }
                out.record(name, &file, r);
            }
        }
        "planar-dfvs" => {
            for (name, g) in cubic_family(cfg) {
                let file = GraphFile::new(g.clone());
                let art = dfvs_via_doubling(&g)?;
                let opt = match solve_with(
                    &Instance::new(art.input.clone(), Problem::Fvs).expect("directed"),
                    opts,
                ) {
                    Ok(r) => r.value().unwrap_or(0),
                    Err(e) => {
                        out.record(name, &file, Err(e));
                        continue;
                    }
                };
                for k in [opt.saturating_sub(1), opt] {
                    let case = format!("{name} k={k}");
                    out.record(
                        &case,
                        &file,
                        verify_reduction_as(
                            &art,
                            Problem::Fvs,
                            VerifyMode::DecisionEquivalence { k },
                            opts,
                        ),
                    );
                }
            }
        }
        "cfvs" => {
            for (i, g) in cfvs_family(cfg, &mut rng).into_iter().enumerate() {
                let file = GraphFile::new(g.clone());
                let art = cfvs_gadget(&g)?;
                let cvc = match solve_with(
                    &Instance::new(g.clone(), Problem::Cvc).expect("undirected"),
                    opts,
                ) {
                    Ok(r) => r.value().unwrap_or(0),
                    Err(e) => {
                        out.record(&format!("#{i}"), &file, Err(e));
                        continue;
                    }
                };
                for k in [cvc.saturating_sub(1), cvc] {
                    let case = format!("#{i} n={} m={} k={k}", g.vertex_count(), g.edge_count());
                    out.record(
                        &case,
                        &file,
                        verify_reduction_as(
                            &art,
                            Problem::Cfvs,
                            VerifyMode::DecisionEquivalence { k },
                            opts,
                        ),
                    );
                }
            }
        }
        _ => unreachable!("checked above"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Envelope;

    fn cfg(reduction: &str, trials: usize, max_n: usize) -> VerifyConfig {
        VerifyConfig {
            reduction: reduction.into(),
            trials,
            max_n,
            seed: 7,
            opts: SolveOptions::with_envelope(Envelope::default()),
        }
    }

    #[test]
    fn exhaustive_split_passes() {
        let r = run_verify(&cfg("split", 0, 3)).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.passed, 1 + 4 + 64);
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = run_verify(&cfg("double", 5, 6)).unwrap();
        let b = run_verify(&cfg("double", 5, 6)).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.ok(), "{a}");
    }

    #[test]
    fn cfvs_small() {
        let r = run_verify(&cfg("cfvs", 0, 3)).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            run_verify(&cfg("nope", 1, 3)),
            Err(SuiteError::UnknownReduction(_))
        ));
    }
}
