//! Exact solvers for the feedback, cover and connected variants, solution
//! validation, and the polynomial procedures for special classes.

mod connected;
mod exact;
pub(crate) mod net;
mod poly;

use std::fmt;

use thiserror::Error;

use crate::graph::{AnyGraph, EdgeId, Vertex};
use net::Net;

pub use poly::{
    check_cubic_identity, solve_bipolar_pipeline, solve_deg2, CubicIdentityReport, PipelineOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    /// Feedback vertex set (directed or undirected).
    Fvs,
    /// Feedback arc set (digraphs only).
    Fas,
    /// Vertex cover.
    Vc,
    /// Connected vertex cover.
    Cvc,
    /// Connected feedback vertex set.
    Cfvs,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Fvs => "fvs",
            Problem::Fas => "fas",
            Problem::Vc => "vc",
            Problem::Cvc => "cvc",
            Problem::Cfvs => "cfvs",
        }
    }

    pub fn parse(s: &str) -> Option<Problem> {
        Some(match s.to_ascii_lowercase().as_str() {
            "fvs" => Problem::Fvs,
            "fas" => Problem::Fas,
            "vc" => Problem::Vc,
            "cvc" => Problem::Cvc,
            "cfvs" => Problem::Cfvs,
            _ => return None,
        })
    }

    pub fn is_connected_variant(self) -> bool {
        matches!(self, Problem::Cvc | Problem::Cfvs)
    }

    /// Whether solutions are arc sets rather than vertex sets.
    pub fn selects_arcs(self) -> bool {
        self == Problem::Fas
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{problem} is not defined on {kind} graphs")]
    KindMismatch {
        problem: Problem,
        kind: &'static str,
    },
    #[error("instance exceeds the size envelope: {detail} (set FBA_SIZE_ENVELOPE to override)")]
    Envelope { detail: String },
    #[error("solution mentions {what} {id}, which is not in the graph")]
    Foreign { what: &'static str, id: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Refusal limits for the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Envelope {
    /// Largest vertex count accepted in optimum mode.
    pub optimum_vertices: usize,
    /// Same, for the connected variants.
    pub connected_vertices: usize,
    /// Largest budget accepted in decision mode.
    pub decision_budget: usize,
    /// Largest vertex count accepted in decision mode.
    pub decision_vertices: usize,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            optimum_vertices: 64,
            connected_vertices: 48,
            decision_budget: 16,
            decision_vertices: 200,
        }
    }
}

impl Envelope {
    pub const ENV_VAR: &'static str = "FBA_SIZE_ENVELOPE";

    /// An envelope that never refuses.
    pub fn unlimited() -> Self {
        Envelope {
            optimum_vertices: usize::MAX,
            connected_vertices: usize::MAX,
            decision_budget: usize::MAX,
            decision_vertices: usize::MAX,
        }
    }

    /// Parses `N` (vertex limits for both optimum modes) or a comma-separated
    /// list of `optimum=N`, `connected=N`, `budget=N`, `decision=N`.
    pub fn parse(spec: &str) -> Result<Envelope, String> {
        let mut env = Envelope::default();
        let spec = spec.trim();
        if let Ok(n) = spec.parse::<usize>() {
            env.optimum_vertices = n;
            env.connected_vertices = n;
            return Ok(env);
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad number in `{part}`"))?;
            match key.trim() {
                "optimum" => env.optimum_vertices = value,
                "connected" => env.connected_vertices = value,
                "budget" => env.decision_budget = value,
                "decision" => env.decision_vertices = value,
                other => return Err(format!("unknown envelope key `{other}`")),
            }
        }
        Ok(env)
    }

    /// Default envelope, overridden by `FBA_SIZE_ENVELOPE` when set and well-formed.
    pub fn from_env() -> Envelope {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| Envelope::parse(&s).ok())
            .unwrap_or_default()
    }

    fn check(&self, inst: &Instance) -> Result<(), SolveError> {
        let n = inst.graph.order();
        match inst.budget {
            Some(k) => {
                if k > self.decision_budget || n > self.decision_vertices {
                    return Err(SolveError::Envelope {
                        detail: format!(
                            "decision mode allows budget <= {} on <= {} vertices, got budget {k} on {n} vertices",
                            self.decision_budget, self.decision_vertices
                        ),
                    });
                }
            }
            None => {
                let limit = if inst.problem.is_connected_variant() {
                    self.connected_vertices
                } else {
                    self.optimum_vertices
                };
                if n > limit {
                    return Err(SolveError::Envelope {
                        detail: format!(
                            "optimum mode for {} allows <= {limit} vertices, got {n}",
                            inst.problem
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: AnyGraph,
    pub problem: Problem,
    pub budget: Option<usize>,
}

impl Instance {
    pub fn new(graph: impl Into<AnyGraph>, problem: Problem) -> Result<Instance, SolveError> {
        let graph = graph.into();
        let ok = match problem {
            Problem::Fvs => true,
            Problem::Fas => graph.is_directed(),
            Problem::Vc | Problem::Cvc | Problem::Cfvs => !graph.is_directed(),
        };
        if !ok {
            let kind = if graph.is_directed() {
                "directed"
            } else {
                "undirected"
            };
            return Err(SolveError::KindMismatch { problem, kind });
        }
        Ok(Instance {
            graph,
            problem,
            budget: None,
        })
    }

    pub fn with_budget(mut self, k: usize) -> Instance {
        self.budget = Some(k);
        self
    }
}

/// A vertex set or an arc set, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solution {
    Vertices(Vec<Vertex>),
    Arcs(Vec<EdgeId>),
}

impl Solution {
    pub fn vertices(mut v: Vec<Vertex>) -> Solution {
        v.sort_unstable();
        v.dedup();
        Solution::Vertices(v)
    }

    pub fn arcs(mut a: Vec<EdgeId>) -> Solution {
        a.sort_unstable();
        a.dedup();
        Solution::Arcs(a)
    }

    pub fn ids(&self) -> &[usize] {
        match self {
            Solution::Vertices(v) | Solution::Arcs(v) => v,
        }
    }

    pub fn len(&self) -> usize {
        self.ids().len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids().is_empty()
    }

    pub fn is_arcs(&self) -> bool {
        matches!(self, Solution::Arcs(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Optimal(usize),
    Yes,
    No,
    /// No feasible solution of any size (connected variants on disconnected obstacles).
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub certificate: Option<Solution>,
    /// Search nodes visited.
    pub explored: u64,
}

impl SolveResult {
    pub fn value(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Optimal(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes | Verdict::Optimal(_))
    }
}

/// A simple cycle; `vertices` is closed (first equals last), `edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub(crate) fn from_open(mut vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Cycle {
        if let Some(&first) = vertices.first() {
            vertices.push(first);
        }
        Cycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Why a candidate set is infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Cycle(Cycle),
    UncoveredEdge(EdgeId),
    /// Two solution vertices in different components of the induced subgraph.
    Disconnected(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub feasible: bool,
    pub witness: Option<Witness>,
}

impl Validation {
    fn ok() -> Self {
        Validation {
            feasible: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        Validation {
            feasible: false,
            witness: Some(w),
        }
    }
}

/// Checks feasibility of `s` for the instance's problem (the budget is ignored).
pub fn validate(inst: &Instance, s: &Solution) -> Result<Validation, SolveError> {
    let g = &inst.graph;
    let net = Net::new(g);
    let mut act = net.full();
    match (inst.problem, s) {
        (Problem::Fas, Solution::Arcs(arcs)) => {
            for &a in arcs {
                if a >= net.m || !act.e[a] {
                    return Err(SolveError::Foreign { what: "arc", id: a });
                }
                act.e[a] = false;
            }
        }
        (Problem::Fas, Solution::Vertices(_)) | (_, Solution::Arcs(_)) => {
            return Err(SolveError::KindMismatch {
                problem: inst.problem,
                kind: if s.is_arcs() { "arc-set" } else { "vertex-set" },
            });
        }
        (_, Solution::Vertices(vs)) => {
            for &v in vs {
                if v >= net.n || !net.alive[v] {
                    return Err(SolveError::Foreign {
                        what: "vertex",
                        id: v,
                    });
                }
                act.v[v] = false;
            }
        }
    }
    let covers = matches!(inst.problem, Problem::Vc | Problem::Cvc);
    if covers {
        for e in 0..net.m {
            let (a, b) = net.ends[e];
            if net.alive[a] && net.alive[b] && act.v[a] && act.v[b] {
                return Ok(Validation::fail(Witness::UncoveredEdge(e)));
            }
        }
    } else {
        let mut trimmed = act.clone();
        net.trim(&mut trimmed);
        if let Some((vs, es)) = net.shortest_cycle(&trimmed) {
            return Ok(Validation::fail(Witness::Cycle(Cycle::from_open(vs, es))));
        }
    }
    if inst.problem.is_connected_variant() {
        if let Some((u, v)) = disconnected_pair(g, s.ids()) {
            return Ok(Validation::fail(Witness::Disconnected(u, v)));
        }
    }
    Ok(Validation::ok())
}

fn disconnected_pair(g: &AnyGraph, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let u = g.underlying();
    if u.induces_connected(set) {
        return None;
    }
    let first = set[0];
    let sub = u.delete_vertices(
        &(0..u.vertex_count())
            .filter(|v| set.binary_search(v).is_err())
            .collect::<Vec<_>>(),
    );
    let comp = sub
        .components()
        .into_iter()
        .find(|c| c.contains(&first))
        .unwrap();
    let other = set.iter().copied().find(|v| !comp.contains(v)).unwrap();
    Some((first, other))
}

/// A minimum-length cycle (directed for digraphs), or `None` if acyclic.
pub fn shortest_cycle(g: &AnyGraph) -> Option<Cycle> {
    let net = Net::new(g);
    let mut act = net.full();
    net.trim(&mut act);
    net.shortest_cycle(&act)
        .map(|(vs, es)| Cycle::from_open(vs, es))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub envelope: Envelope,
    /// Replace the first optimal certificate found by the lexicographically smallest one.
    pub canonical: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            envelope: Envelope::from_env(),
            canonical: true,
        }
    }
}

impl SolveOptions {
    pub fn with_envelope(envelope: Envelope) -> Self {
        SolveOptions {
            envelope,
            canonical: true,
        }
    }
}

/// Exact solve with the default options (environment envelope, canonical certificates).
pub fn solve_exact(inst: &Instance) -> Result<SolveResult, SolveError> {
    solve_with(inst, &SolveOptions::default())
}

pub fn solve_with(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    opts.envelope.check(inst)?;
    let net = Net::new(&inst.graph);
    let result = match inst.problem {
        Problem::Cvc | Problem::Cfvs => {
            connected::solve(&net, inst.problem, inst.budget, opts.canonical)
        }
        _ => exact::solve(&net, inst.problem, inst.budget, opts.canonical),
    };
    debug_assert!(result
        .certificate
        .as_ref()
        .is_none_or(|c| validate(inst, c).map(|v| v.feasible).unwrap_or(false)));
    Ok(result)
}

/// Shared decision oracle used to canonicalize certificates: returns a
/// solution containing `forced`, avoiding `forbidden`, of size at most `k`.
pub(crate) trait Oracle {
    fn feasible(&mut self, forced: &[usize], forbidden: &[bool], k: usize) -> Option<Vec<usize>>;
}

/// Greedy lexicographic minimization over a universe of `universe` ids.
pub(crate) fn canonicalize(
    oracle: &mut impl Oracle,
    universe: usize,
    opt: usize,
    initial: Vec<usize>,
) -> Vec<usize> {
    let mut forced: Vec<usize> = Vec::new();
    let mut forbidden = vec![false; universe];
    let mut current = initial;
    current.sort_unstable();
    for v in 0..universe {
        if forced.len() == opt {
            break;
        }
        if current.binary_search(&v).is_ok() {
            forced.push(v);
            continue;
        }
        forced.push(v);
        match oracle.feasible(&forced, &forbidden, opt) {
            Some(mut w) => {
                w.sort_unstable();
                current = w;
            }
            None => {
                forced.pop();
                forbidden[v] = true;
            }
        }
    }
    forced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DiGraph, UGraph};

    #[test]
    fn envelope_parsing() {
        assert_eq!(Envelope::parse("30").unwrap().optimum_vertices, 30);
        let e = Envelope::parse("budget=20, decision=500").unwrap();
        assert_eq!(
            (e.decision_budget, e.decision_vertices, e.optimum_vertices),
            (20, 500, 64)
        );
        assert!(Envelope::parse("nope=1").is_err());
    }

    #[test]
    fn validation_examples() {
        let tri = UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let fvs = Instance::new(tri.clone(), Problem::Fvs).unwrap();
        assert!(
            validate(&fvs, &Solution::vertices(vec![1]))
                .unwrap()
                .feasible
        );
        let vc = Instance::new(tri, Problem::Vc).unwrap();
        let v = validate(&vc, &Solution::vertices(vec![0])).unwrap();
        assert_eq!(v.witness, Some(Witness::UncoveredEdge(1)));

        let two = UGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let cf = Instance::new(two, Problem::Cfvs).unwrap();
        let v = validate(&cf, &Solution::vertices(vec![0, 3])).unwrap();
        assert_eq!(v.witness, Some(Witness::Disconnected(0, 3)));
    }

    #[test]
    fn kind_mismatch() {
        assert!(Instance::new(UGraph::new(1), Problem::Fas).is_err());
        assert!(Instance::new(DiGraph::new(1), Problem::Cvc).is_err());
    }

    #[test]
    fn shortest_cycle_examples() {
        let dag = DiGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(shortest_cycle(&dag.into()), None);
        let d = DiGraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]);
        assert_eq!(shortest_cycle(&d.into()).unwrap().vertices, vec![2, 3, 2]);
        let l = DiGraph::from_edges(2, [(0, 1), (1, 1)]);
        assert_eq!(shortest_cycle(&l.into()).unwrap().edges, vec![1]);
    }
}
