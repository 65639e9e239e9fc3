//! Compact adjacency view with vertex/edge activity masks used by the searches.

use std::collections::VecDeque;

use crate::graph::{AnyGraph, EdgeId, Vertex};

#[derive(Debug, Clone)]
pub(crate) struct Net {
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub ends: Vec<(Vertex, Vertex)>,
    /// Directed: out-arcs `(head, arc)`. Undirected: every incident end `(other, edge)`,
    /// a self-loop listed twice.
    pub out: Vec<Vec<(Vertex, EdgeId)>>,
    /// Directed: in-arcs `(tail, arc)`. Unused for undirected graphs.
    pub inn: Vec<Vec<(Vertex, EdgeId)>>,
    pub alive: Vec<bool>,
}

impl Net {
    pub fn new(g: &AnyGraph) -> Net {
        let (n, m, directed) = (g.vertex_count(), g.edge_slots(), g.is_directed());
        let mut net = Net {
            n,
            m,
            directed,
            ends: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            alive: vec![false; n],
        };
        let edges: Vec<(EdgeId, Vertex, Vertex)> = match g {
            AnyGraph::Directed(d) => {
                for v in d.vertices() {
                    net.alive[v] = true;
                }
                net.ends = (0..m).map(|e| d.endpoints(e)).collect();
                d.edges().collect()
            }
            AnyGraph::Undirected(u) => {
                for v in u.vertices() {
                    net.alive[v] = true;
                }
                net.ends = (0..m).map(|e| u.endpoints(e)).collect();
                u.edges().collect()
            }
        };
        for (e, a, b) in edges {
            net.out[a].push((b, e));
            if directed {
                net.inn[b].push((a, e));
            } else {
                net.out[b].push((a, e));
            }
        }
        net
    }

    pub fn full(&self) -> Active {
        let mut e = vec![false; self.m];
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            e[i] = self.alive[a] && self.alive[b];
        }
        Active {
            v: self.alive.clone(),
            e,
        }
    }

    fn live(&self, act: &Active, e: EdgeId) -> bool {
        let (a, b) = self.ends[e];
        act.e[e] && act.v[a] && act.v[b]
    }

    pub fn out_deg(&self, act: &Active, v: Vertex) -> usize {
        self.out[v]
            .iter()
            .filter(|&&(_, e)| self.live(act, e))
            .count()
    }

    pub fn in_deg(&self, act: &Active, v: Vertex) -> usize {
        if self.directed {
            self.inn[v]
                .iter()
                .filter(|&&(_, e)| self.live(act, e))
                .count()
        } else {
            self.out_deg(act, v)
        }
    }

    /// Removes vertices that lie on no cycle of the active subgraph: indegree or
    /// outdegree zero for digraphs, degree at most one for undirected graphs.
    pub fn trim(&self, act: &mut Active) {
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        let mut deg_in = vec![0usize; self.n];
        let mut deg_out = vec![0usize; self.n];
        for v in 0..self.n {
            if !act.v[v] {
                continue;
            }
            deg_out[v] = self.out_deg(act, v);
            deg_in[v] = if self.directed {
                self.in_deg(act, v)
            } else {
                deg_out[v]
            };
            if self.dead_end(deg_in[v], deg_out[v]) {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            if !act.v[v] {
                continue;
            }
            act.v[v] = false;
            for &(w, e) in &self.out[v] {
                if !act.e[e] || !act.v[w] {
                    continue;
                }
                if self.directed {
                    deg_in[w] -= 1;
                } else {
                    deg_in[w] -= 1;
                    deg_out[w] -= 1;
                }
                if self.dead_end(deg_in[w], deg_out[w]) {
                    queue.push_back(w);
                }
            }
            if self.directed {
                for &(w, e) in &self.inn[v] {
                    if !act.e[e] || !act.v[w] {
                        continue;
                    }
                    deg_out[w] -= 1;
                    if self.dead_end(deg_in[w], deg_out[w]) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    fn dead_end(&self, din: usize, dout: usize) -> bool {
        if self.directed {
            din == 0 || dout == 0
        } else {
            dout <= 1
        }
    }

    pub fn has_cycle(&self, act: &Active) -> bool {
        let mut a = act.clone();
        self.trim(&mut a);
        a.v.iter().any(|&x| x)
    }

    /// Shortest simple cycle through `s` in the active subgraph, as
    /// `(vertices, edges)` with `edges[i]` joining `vertices[i]` to `vertices[i + 1]` (cyclically).
    pub fn cycle_through(&self, act: &Active, s: Vertex) -> Option<(Vec<Vertex>, Vec<EdgeId>)> {
        if !act.v[s] {
            return None;
        }
        for &(w, e) in &self.out[s] {
            if w == s && self.live(act, e) {
                return Some((vec![s], vec![e]));
            }
        }
        if self.directed {
            self.directed_cycle_through(act, s)
        } else {
            self.undirected_cycle_through(act, s)
        }
    }

    fn directed_cycle_through(
        &self,
        act: &Active,
        s: Vertex,
    ) -> Option<(Vec<Vertex>, Vec<EdgeId>)> {
        let mut parent: Vec<Option<(Vertex, EdgeId)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.out[x] {
                if !self.live(act, e) {
                    continue;
                }
                if y == s {
                    let mut verts = vec![x];
                    let mut edges = vec![e];
                    let mut z = x;
                    while let Some((p, pe)) = parent[z] {
                        verts.push(p);
                        edges.push(pe);
                        z = p;
                    }
                    verts.reverse();
                    edges.reverse();
                    return Some((verts, edges));
                }
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    fn undirected_cycle_through(
        &self,
        act: &Active,
        s: Vertex,
    ) -> Option<(Vec<Vertex>, Vec<EdgeId>)> {
        const NONE: usize = usize::MAX;
        let mut dist = vec![NONE; self.n];
        let mut parent: Vec<(Vertex, EdgeId)> = vec![(NONE, NONE); self.n];
        // first edge on the tree path from s, to keep the two halves disjoint
        let mut branch = vec![NONE; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut best: Option<(usize, Vertex, Vertex, EdgeId)> = None;
        while let Some(x) = queue.pop_front() {
            if let Some((len, ..)) = best {
                if 2 * dist[x] >= len {
                    break;
                }
            }
            for &(y, e) in &self.out[x] {
                if !self.live(act, e) || e == parent[x].1 {
                    continue;
                }
                if dist[y] == NONE {
                    dist[y] = dist[x] + 1;
                    parent[y] = (x, e);
                    branch[y] = if x == s { e } else { branch[x] };
                    queue.push_back(y);
                } else if y == s {
                    if branch[x] != e {
                        let len = dist[x] + 1;
                        if best.is_none_or(|b| len < b.0) {
                            best = Some((len, x, y, e));
                        }
                    }
                } else if x != s && branch[x] != branch[y] {
                    let len = dist[x] + dist[y] + 1;
                    if best.is_none_or(|b| len < b.0) {
                        best = Some((len, x, y, e));
                    }
                }
            }
        }
        let (_, x, y, e) = best?;
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        let mut z = x;
        while z != s {
            verts.push(z);
            edges.push(parent[z].1);
            z = parent[z].0;
        }
        verts.push(s);
        verts.reverse();
        edges.reverse();
        edges.push(e);
        let mut z = y;
        while z != s {
            verts.push(z);
            edges.push(parent[z].1);
            z = parent[z].0;
        }
        Some((verts, edges))
    }

    /// Globally shortest cycle, smallest start vertex on ties.
    pub fn shortest_cycle(&self, act: &Active) -> Option<(Vec<Vertex>, Vec<EdgeId>)> {
        let mut best: Option<(Vec<Vertex>, Vec<EdgeId>)> = None;
        for s in 0..self.n {
            if !act.v[s] {
                continue;
            }
            if let Some(c) = self.cycle_through(act, s) {
                if best.as_ref().is_none_or(|b| c.0.len() < b.0.len()) {
                    let done = c.0.len() == 1;
                    best = Some(c);
                    if done {
                        break;
                    }
                }
            }
        }
        best
    }

    /// Positions `i` of the cycle such that every cycle through position `i` also
    /// passes through the returned neighbour positions (single entry or exit).
    pub fn domination_links(
        &self,
        act: &Active,
        cyc: &(Vec<Vertex>, Vec<EdgeId>),
        arcs: bool,
    ) -> Vec<Vec<usize>> {
        let l = cyc.0.len();
        let mut links = vec![Vec::new(); l];
        if l == 1 {
            return links;
        }
        for i in 0..l {
            let prev = (i + l - 1) % l;
            let next = (i + 1) % l;
            if arcs {
                // arc i runs from vertex i to vertex i+1
                let (tail, head) = (cyc.0[i], cyc.0[next]);
                if self.out_deg(act, head) == 1 {
                    links[i].push(next);
                }
                if self.in_deg(act, tail) == 1 {
                    links[i].push(prev);
                }
            } else {
                let v = cyc.0[i];
                if self.directed {
                    if self.in_deg(act, v) == 1 {
                        links[i].push(prev);
                    }
                    if self.out_deg(act, v) == 1 {
                        links[i].push(next);
                    }
                } else if self.out_deg(act, v) == 2 {
                    links[i].push(prev);
                    links[i].push(next);
                }
            }
        }
        links
    }
}

/// Activity masks over vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Active {
    pub v: Vec<bool>,
    pub e: Vec<bool>,
}

/// Reduces the cycle positions to branch on: candidates are positions whose
/// element is not forbidden; a candidate dominated (transitively) by another
/// candidate is dropped, keeping the smallest id within mutually dominating groups.
pub(crate) fn branch_positions(
    links: &[Vec<usize>],
    ids: &[usize],
    forbidden: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let l = links.len();
    let mut up: Vec<Vec<bool>> = vec![vec![false; l]; l];
    for i in 0..l {
        let mut stack = vec![i];
        up[i][i] = true;
        while let Some(x) = stack.pop() {
            for &y in &links[x] {
                if !up[i][y] {
                    up[i][y] = true;
                    stack.push(y);
                }
            }
        }
    }
    let cand: Vec<usize> = (0..l).filter(|&i| !forbidden(ids[i])).collect();
    cand.iter()
        .copied()
        .filter(|&i| {
            cand.iter()
                .all(|&j| j == i || !up[i][j] || (up[j][i] && ids[i] < ids[j]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DiGraph, UGraph};

    #[test]
    fn directed_shortest_cycle() {
        let d = DiGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2), (3, 4)]);
        let net = Net::new(&d.into());
        let c = net.shortest_cycle(&net.full()).unwrap();
        assert_eq!(c.0, vec![2, 3]);
    }

    #[test]
    fn undirected_parallel_and_loop() {
        let g = UGraph::from_edges(3, [(0, 1), (1, 2), (1, 2)]);
        let net = Net::new(&g.into());
        assert_eq!(net.shortest_cycle(&net.full()).unwrap().0.len(), 2);
        let g = UGraph::from_edges(3, [(0, 1), (1, 2), (2, 0), (2, 2)]);
        let net = Net::new(&g.into());
        assert_eq!(net.shortest_cycle(&net.full()).unwrap(), (vec![2], vec![3]));
    }

    #[test]
    fn undirected_cycle_is_simple() {
        // two triangles sharing vertex 0 plus a square
        let g = UGraph::from_edges(
            7,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (0, 3),
                (3, 4),
                (4, 0),
                (4, 5),
                (5, 6),
                (6, 3),
            ],
        );
        let net = Net::new(&g.into());
        for s in 0..7 {
            if let Some((vs, es)) = net.cycle_through(&net.full(), s) {
                let mut sorted = vs.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), vs.len());
                assert_eq!(es.len(), vs.len());
                assert!(vs.contains(&s));
            }
        }
    }

    #[test]
    fn trimming_forest_leaves_nothing() {
        let g = UGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]);
        let net = Net::new(&g.into());
        assert!(!net.has_cycle(&net.full()));
    }
}
