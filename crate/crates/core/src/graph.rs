//! Multigraph and multidigraph storage shared by every other module.
//!
//! Vertices and edges are dense indices. Deleting a vertex only clears its
//! `alive` bit, so ids stay valid across transformations; an edge is live
//! exactly when both of its endpoints are alive.

use std::collections::VecDeque;
use std::fmt;
use std::marker::PhantomData;

pub type Vertex = usize;
pub type EdgeId = usize;

/// Which endpoint slot of an edge a dart sits on. `A` is the first endpoint
/// (the tail of an arc), `B` the second (the head).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    A,
    B,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::A => End::B,
            End::B => End::A,
        }
    }
}

/// One end of an edge, seen from the vertex it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: End,
}

impl Dart {
    pub fn new(edge: EdgeId, end: End) -> Self {
        Dart { edge, end }
    }

    pub fn twin(self) -> Dart {
        Dart {
            edge: self.edge,
            end: self.end.flip(),
        }
    }
}

pub trait Kind: Copy + Clone + Default + fmt::Debug + PartialEq + Eq + 'static {
    const DIRECTED: bool;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Directed;
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Undirected;

impl Kind for Directed {
    const DIRECTED: bool = true;
}
impl Kind for Undirected {
    const DIRECTED: bool = false;
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph<K: Kind> {
    ends: Vec<(Vertex, Vertex)>,
    // edges whose A end is at v / whose B end is at v
    a_side: Vec<Vec<EdgeId>>,
    b_side: Vec<Vec<EdgeId>>,
    alive: Vec<bool>,
    _kind: PhantomData<K>,
}

pub type UGraph = Graph<Undirected>;
pub type DiGraph = Graph<Directed>;

impl<K: Kind> fmt::Debug for Graph<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if K::DIRECTED { "DiGraph" } else { "UGraph" };
        f.debug_struct(kind)
            .field("n", &self.vertex_count())
            .field("edges", &self.ends)
            .field("dead", &self.dead_vertices().collect::<Vec<_>>())
            .finish()
    }
}

impl<K: Kind> Default for Graph<K> {
    fn default() -> Self {
        Self::new(0)
    }
}

impl<K: Kind> Graph<K> {
    pub fn new(n: usize) -> Self {
        Graph {
            ends: Vec::new(),
            a_side: vec![Vec::new(); n],
            b_side: vec![Vec::new(); n],
            alive: vec![true; n],
            _kind: PhantomData,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn is_directed(&self) -> bool {
        K::DIRECTED
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.a_side.push(Vec::new());
        self.b_side.push(Vec::new());
        self.alive.push(true);
        self.alive.len() - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> Vertex {
        let first = self.vertex_count();
        for _ in 0..count {
            self.add_vertex();
        }
        first
    }

    /// Appends an edge (arc `u -> v` for digraphs). Panics on out-of-range endpoints.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        assert!(
            u < self.vertex_count() && v < self.vertex_count(),
            "edge ({u}, {v}) out of range for {} vertices",
            self.vertex_count()
        );
        let id = self.ends.len();
        self.ends.push((u, v));
        self.a_side[u].push(id);
        self.b_side[v].push(id);
        id
    }

    /// Number of vertex slots, dead ones included.
    pub fn vertex_count(&self) -> usize {
        self.alive.len()
    }

    /// Number of alive vertices.
    pub fn order(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.alive[v])
    }

    pub fn dead_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).filter(move |&v| !self.alive[v])
    }

    /// Total edge slots, including edges touching dead vertices.
    pub fn edge_slots(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_is_live(&self, e: EdgeId) -> bool {
        let (u, v) = self.ends[e];
        self.alive[u] && self.alive[v]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.ends.len())
            .filter(|&e| self.edge_is_live(e))
            .count()
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    pub fn endpoint(&self, d: Dart) -> Vertex {
        let (u, v) = self.ends[d.edge];
        match d.end {
            End::A => u,
            End::B => v,
        }
    }

    /// The vertex across edge `e` from `v`.
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.ends[e];
        u == v
    }

    /// Live edges as `(id, u, v)` in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Vertex, Vertex)> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter(move |(_, &(u, v))| self.alive[u] && self.alive[v])
            .map(|(e, &(u, v))| (e, u, v))
    }

    /// Live darts at `v`, sorted by edge id then end. A self-loop yields both ends.
    pub fn darts(&self, v: Vertex) -> Vec<Dart> {
        if !self.is_alive(v) {
            return Vec::new();
        }
        let mut out: Vec<Dart> = self.a_side[v]
            .iter()
            .filter(|&&e| self.edge_is_live(e))
            .map(|&e| Dart::new(e, End::A))
            .chain(
                self.b_side[v]
                    .iter()
                    .filter(|&&e| self.edge_is_live(e))
                    .map(|&e| Dart::new(e, End::B)),
            )
            .collect();
        out.sort();
        out
    }

    /// Live edges whose A end (tail) is at `v`, in insertion order.
    pub fn out_edges(&self, v: Vertex) -> impl Iterator<Item = EdgeId> + '_ {
        let live = self.is_alive(v);
        self.a_side[v]
            .iter()
            .copied()
            .filter(move |&e| live && self.edge_is_live(e))
    }

    /// Live edges whose B end (head) is at `v`, in insertion order.
    pub fn in_edges(&self, v: Vertex) -> impl Iterator<Item = EdgeId> + '_ {
        let live = self.is_alive(v);
        self.b_side[v]
            .iter()
            .copied()
            .filter(move |&e| live && self.edge_is_live(e))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out_edges(v).count() + self.in_edges(v).count()
    }

    /// Neighbors across every live incident edge, with multiplicity (loops count twice).
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.darts(v)
            .into_iter()
            .map(|d| self.endpoint(d.twin()))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Returns a copy with every vertex in `set` masked out.
    pub fn delete_vertices(&self, set: &[Vertex]) -> Self {
        let mut g = self.clone();
        for &v in set {
            if v < g.alive.len() {
                g.alive[v] = false;
            }
        }
        g
    }

    /// Returns a copy keeping only the live edges for which `keep` holds.
    /// Edge ids are renumbered; the second value maps new ids to old ones.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (Self, Vec<EdgeId>) {
        let mut g = Self::new(self.vertex_count());
        g.alive = self.alive.clone();
        let mut back = Vec::new();
        for (e, u, v) in self.edges() {
            if keep(e) {
                g.add_edge(u, v);
                back.push(e);
            }
        }
        (g, back)
    }

    /// Renumbers alive vertices densely and drops dead edges.
    /// Returns the compact graph and the old-to-new vertex map.
    pub fn compact(&self) -> (Self, Vec<Option<Vertex>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut next = 0;
        for v in self.vertices() {
            map[v] = Some(next);
            next += 1;
        }
        let mut g = Self::new(next);
        for (_, u, v) in self.edges() {
            g.add_edge(map[u].unwrap(), map[v].unwrap());
        }
        (g, map)
    }

    pub fn has_dead_vertices(&self) -> bool {
        self.alive.iter().any(|a| !a)
    }

    /// Connected components of the underlying undirected graph, over alive vertices.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the induced subgraph on `set` is connected (the empty set counts as connected).
    pub fn induces_connected(&self, set: &[Vertex]) -> bool {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in set {
            if v < n && self.alive[v] {
                inside[v] = true;
            }
        }
        let Some(&start) = set.iter().find(|&&v| v < n && inside[v]) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == inside.iter().filter(|&&b| b).count()
    }

    /// Replaces every live edge by a path of length two through a fresh vertex.
    /// Edge `e` becomes edges `2e` (u to x) and `2e + 1` (x to v); the fresh vertex for
    /// edge `e` is returned at index `e` of the second value.
    pub fn subdivide_all(&self) -> (Self, Vec<Vertex>) {
        let mut g = Self::new(self.vertex_count());
        g.alive = self.alive.clone();
        let mut mids = Vec::with_capacity(self.ends.len());
        for e in 0..self.ends.len() {
            let (u, v) = self.ends[e];
            let x = g.add_vertex();
            if !self.edge_is_live(e) {
                g.alive[x] = false;
            }
            g.add_edge(u, x);
            g.add_edge(x, v);
            mids.push(x);
        }
        (g, mids)
    }

    /// Proper 2-coloring of the underlying graph, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in self.vertices() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// No self-loops and no repeated endpoint pair (ordered pairs for digraphs).
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for (_, u, v) in self.edges() {
            if u == v {
                return false;
            }
            let key = if K::DIRECTED {
                (u, v)
            } else {
                (u.min(v), u.max(v))
            };
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges().any(|(_, u, v)| u == v)
    }

    pub fn has_min_edges(&self, k: usize) -> bool {
        self.edge_count() >= k
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    /// Converts between kinds keeping ids (arc `u -> v` becomes edge `uv` and back).
    pub fn retype<L: Kind>(&self) -> Graph<L> {
        Graph {
            ends: self.ends.clone(),
            a_side: self.a_side.clone(),
            b_side: self.b_side.clone(),
            alive: self.alive.clone(),
            _kind: PhantomData,
        }
    }
}

impl UGraph {
    pub fn is_cubic(&self) -> bool {
        self.order() > 0 && self.vertices().all(|v| self.degree(v) == 3)
    }

    pub fn is_subcubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) <= 3)
    }

    /// Orients every edge from its A end to its B end.
    pub fn orient(&self) -> DiGraph {
        self.retype()
    }
}

impl DiGraph {
    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_edges(v).count()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_edges(v).count()
    }

    pub fn head(&self, e: EdgeId) -> Vertex {
        self.ends[e].1
    }

    pub fn tail(&self, e: EdgeId) -> Vertex {
        self.ends[e].0
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_edges(v).map(move |e| self.ends[e].1)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.in_edges(v).map(move |e| self.ends[e].0)
    }

    /// The underlying undirected multigraph; edge ids are preserved.
    pub fn underlying(&self) -> UGraph {
        self.retype()
    }

    pub fn reversed(&self) -> DiGraph {
        let mut g = DiGraph::new(self.vertex_count());
        g.alive = self.alive.clone();
        for &(u, v) in &self.ends {
            g.add_edge(v, u);
        }
        g
    }

    /// `d-(v) = d+(v) = 3` at every alive vertex.
    pub fn is_3_regular(&self) -> bool {
        self.order() > 0
            && self
                .vertices()
                .all(|v| self.in_degree(v) == 3 && self.out_degree(v) == 3)
    }

    /// Repeatedly masks vertices with indegree or outdegree zero.
    /// Every directed cycle survives; the result has `min(d-, d+) >= 1` everywhere.
    pub fn trim_non_cyclic(&self) -> DiGraph {
        let mut g = self.clone();
        let n = g.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for (_, u, v) in g.edges() {
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        let mut queue: VecDeque<Vertex> = g
            .vertices()
            .filter(|&v| indeg[v] == 0 || outdeg[v] == 0)
            .collect();
        let mut queued = vec![false; n];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            if !g.alive[v] {
                continue;
            }
            let outs: Vec<EdgeId> = g.out_edges(v).collect();
            let ins: Vec<EdgeId> = g.in_edges(v).collect();
            g.alive[v] = false;
            for e in outs {
                let w = g.ends[e].1;
                if w != v {
                    indeg[w] -= 1;
                    if indeg[w] == 0 && !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            for e in ins {
                let w = g.ends[e].0;
                if w != v {
                    outdeg[w] -= 1;
                    if outdeg[w] == 0 && !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        g
    }

    /// Whether the digraph has no directed cycle (self-loops included).
    pub fn is_acyclic(&self) -> bool {
        self.trim_non_cyclic().order() == 0
    }
}

/// Per-vertex degree bookkeeping plus the aggregates `Δ` and `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub directed: bool,
    /// `(d-, d+, d)` per vertex slot; dead vertices read as zeros.
    /// For undirected graphs the first two entries count B and A ends.
    pub per_vertex: Vec<(usize, usize, usize)>,
    pub max_degree: usize,
    /// `max min(d-, d+)`; always 0 for undirected graphs.
    pub sigma: usize,
}

impl DegreeProfile {
    pub fn of<K: Kind>(g: &Graph<K>) -> Self {
        let per_vertex: Vec<_> = (0..g.vertex_count())
            .map(|v| {
                let i = g.in_edges(v).count();
                let o = g.out_edges(v).count();
                (i, o, i + o)
            })
            .collect();
        let max_degree = per_vertex.iter().map(|p| p.2).max().unwrap_or(0);
        let sigma = if K::DIRECTED {
            per_vertex.iter().map(|p| p.0.min(p.1)).max().unwrap_or(0)
        } else {
            0
        };
        DegreeProfile {
            directed: K::DIRECTED,
            per_vertex,
            max_degree,
            sigma,
        }
    }

    pub fn max_in(&self) -> usize {
        self.per_vertex.iter().map(|p| p.0).max().unwrap_or(0)
    }

    pub fn max_out(&self) -> usize {
        self.per_vertex.iter().map(|p| p.1).max().unwrap_or(0)
    }

    /// `Δ <= 3 ⇒ σ <= 1` and `σ >= 2 ⇒ Δ >= 4`.
    pub fn implications_hold(&self) -> bool {
        (self.max_degree > 3 || self.sigma <= 1) && (self.sigma < 2 || self.max_degree >= 4)
    }
}

pub fn degree_profile<K: Kind>(g: &Graph<K>) -> DegreeProfile {
    DegreeProfile::of(g)
}

/// Boolean structural facts used as reduction preconditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Predicates {
    pub is_cubic: bool,
    pub is_3_regular_digraph: bool,
    pub is_connected: bool,
    pub is_simple: bool,
    pub has_self_loop: bool,
    pub edge_count: usize,
}

impl Predicates {
    pub fn has_min_edges(&self, k: usize) -> bool {
        self.edge_count >= k
    }
}

pub fn structural_predicates<K: Kind>(g: &Graph<K>) -> Predicates {
    let directed = K::DIRECTED;
    let cubic = !directed && g.order() > 0 && g.vertices().all(|v| g.degree(v) == 3);
    let regular3 = directed
        && g.order() > 0
        && g.vertices()
            .all(|v| g.in_edges(v).count() == 3 && g.out_edges(v).count() == 3);
    Predicates {
        is_cubic: cubic,
        is_3_regular_digraph: regular3,
        is_connected: g.is_connected(),
        is_simple: g.is_simple(),
        has_self_loop: g.has_self_loop(),
        edge_count: g.edge_count(),
    }
}

/// Either kind of graph, for code paths that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(UGraph),
    Directed(DiGraph),
}

impl AnyGraph {
    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Directed(_))
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.vertex_count(),
            AnyGraph::Directed(g) => g.vertex_count(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.order(),
            AnyGraph::Directed(g) => g.order(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.edge_count(),
            AnyGraph::Directed(g) => g.edge_count(),
        }
    }

    pub fn edge_slots(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.edge_slots(),
            AnyGraph::Directed(g) => g.edge_slots(),
        }
    }

    pub fn profile(&self) -> DegreeProfile {
        match self {
            AnyGraph::Undirected(g) => DegreeProfile::of(g),
            AnyGraph::Directed(g) => DegreeProfile::of(g),
        }
    }

    pub fn underlying(&self) -> UGraph {
        match self {
            AnyGraph::Undirected(g) => g.clone(),
            AnyGraph::Directed(g) => g.underlying(),
        }
    }

    pub fn as_undirected(&self) -> Option<&UGraph> {
        match self {
            AnyGraph::Undirected(g) => Some(g),
            AnyGraph::Directed(_) => None,
        }
    }

    pub fn as_directed(&self) -> Option<&DiGraph> {
        match self {
            AnyGraph::Directed(g) => Some(g),
            AnyGraph::Undirected(_) => None,
        }
    }
}

impl From<UGraph> for AnyGraph {
    fn from(g: UGraph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<DiGraph> for AnyGraph {
    fn from(g: DiGraph) -> Self {
        AnyGraph::Directed(g)
    }
}
