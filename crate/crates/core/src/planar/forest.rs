//! Cover of a subcubic multigraph by two linear forests.

use thiserror::Error;

use crate::graph::{EdgeId, UGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForestClass {
    F1,
    F2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("linear forest cover needs maximum degree 3, vertex {vertex} has degree {degree}")]
    DegreeTooHigh { vertex: Vertex, degree: usize },
    #[error("self-loop on edge {0} cannot lie in a linear forest")]
    SelfLoop(EdgeId),
    #[error("no cover by two linear forests exists (parallel edges of multiplicity 3)")]
    NoCover,
}

/// Per-edge class labels; `None` for edge slots that are not live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForestCover {
    pub assignment: Vec<Option<ForestClass>>,
}

impl LinearForestCover {
    pub fn class_of(&self, e: EdgeId) -> Option<ForestClass> {
        self.assignment.get(e).copied().flatten()
    }

    pub fn edges_in(&self, class: ForestClass) -> Vec<EdgeId> {
        (0..self.assignment.len())
            .filter(|&e| self.assignment[e] == Some(class))
            .collect()
    }

    /// Both classes are linear forests and together they cover every live edge.
    pub fn check(&self, g: &UGraph) -> bool {
        if self.assignment.len() != g.edge_slots() {
            return false;
        }
        for (e, _, _) in g.edges() {
            if self.assignment[e].is_none() {
                return false;
            }
        }
        for class in [ForestClass::F1, ForestClass::F2] {
            let mut deg = vec![0usize; g.vertex_count()];
            let mut uf = UnionFind::new(g.vertex_count());
            for (e, u, v) in g.edges() {
                if self.assignment[e] != Some(class) {
                    continue;
                }
                deg[u] += 1;
                deg[v] += 1;
                if deg[u] > 2 || deg[v] > 2 || !uf.union(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    fn rollback(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

struct Search<'a> {
    order: Vec<(EdgeId, Vertex, Vertex)>,
    deg: [Vec<usize>; 2],
    uf: [UnionFind; 2],
    label: &'a mut Vec<Option<ForestClass>>,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> bool {
        let Some(&(e, u, v)) = self.order.get(i) else {
            return true;
        };
        for c in 0..2 {
            if self.deg[c][u] >= 2 || self.deg[c][v] >= 2 {
                continue;
            }
            if self.uf[c].find(u) == self.uf[c].find(v) {
                continue;
            }
            self.uf[c].union(u, v);
            self.deg[c][u] += 1;
            self.deg[c][v] += 1;
            self.label[e] = Some(if c == 0 {
                ForestClass::F1
            } else {
                ForestClass::F2
            });
            if self.run(i + 1) {
                return true;
            }
            self.label[e] = None;
            self.deg[c][u] -= 1;
            self.deg[c][v] -= 1;
            self.uf[c].rollback();
        }
        false
    }
}

/// Backtracking search over edge labels, edges taken in BFS order so that
/// conflicts surface close to the decision that caused them.
pub fn linear_forest_cover(g: &UGraph) -> Result<LinearForestCover, CoverError> {
    for v in g.vertices() {
        let d = g.degree(v);
        if d > 3 {
            return Err(CoverError::DegreeTooHigh {
                vertex: v,
                degree: d,
            });
        }
    }
    if let Some((e, _, _)) = g.edges().find(|&(_, u, v)| u == v) {
        return Err(CoverError::SelfLoop(e));
    }
    let n = g.vertex_count();
    let mut order = Vec::new();
    let mut taken = vec![false; g.edge_slots()];
    let mut seen = vec![false; n];
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for d in g.darts(x) {
                let e = d.edge;
                if !taken[e] {
                    taken[e] = true;
                    let (a, b) = g.endpoints(e);
                    order.push((e, a, b));
                }
                let y = g.opposite(e, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut label = vec![None; g.edge_slots()];
    let mut search = Search {
        order,
        deg: [vec![0; n], vec![0; n]],
        uf: [UnionFind::new(n), UnionFind::new(n)],
        label: &mut label,
    };
    if !search.run(0) {
        return Err(CoverError::NoCover);
    }
    Ok(LinearForestCover { assignment: label })
}
