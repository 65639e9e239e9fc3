//! Brute-force oracles shared by the integration tests. They only read edge
//! lists from the library graph types and never call its solvers.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use fbset::graph::{Dart, DiGraph, End, Graph, Kind, UGraph};
use fbset::planar::Embedding;

/// Live edges as endpoint pairs.
pub fn arcs_of(d: &DiGraph) -> Vec<(usize, usize)> {
    d.edges().map(|(_, u, v)| (u, v)).collect()
}

pub fn edges_of(g: &UGraph) -> Vec<(usize, usize)> {
    g.edges().map(|(_, u, v)| (u, v)).collect()
}

/// Kahn's algorithm on the arcs whose endpoints are both kept.
pub fn acyclic(n: usize, arcs: &[(usize, usize)], keep: &dyn Fn(usize) -> bool) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        if keep(u) && keep(v) {
            indeg[v] += 1;
            out[u].push(v);
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| keep(v) && indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &v in &out[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    seen == (0..n).filter(|&v| keep(v)).count()
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

/// Union-find forest test; loops and parallel edges count as cycles.
pub fn forest(n: usize, edges: &[(usize, usize)], keep: &dyn Fn(usize) -> bool) -> bool {
    let mut p: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        if !(keep(u) && keep(v)) {
            continue;
        }
        let (a, b) = (find(&mut p, u), find(&mut p, v));
        if a == b {
            return false;
        }
        p[a] = b;
    }
    true
}

/// Whether the vertex set induces a connected subgraph (empty counts as connected).
pub fn induces_connected(n: usize, edges: &[(usize, usize)], set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let mut p: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        if inside[u] && inside[v] {
            let (a, b) = (find(&mut p, u), find(&mut p, v));
            p[a] = b;
        }
    }
    let root = find(&mut p, set[0]);
    set.iter().all(|&v| find(&mut p, v) == root)
}

/// Smallest subset of `0..universe` accepted by `ok`, by increasing size and
/// then lexicographically. `None` when nothing qualifies.
pub fn min_subset(universe: usize, ok: &dyn Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    for size in 0..=universe {
        let mut found = None;
        combos(universe, size, &mut |s| {
            if found.is_none() && ok(s) {
                found = Some(s.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn combos(universe: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    if size > universe {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let mut i = size;
        while i > 0 && idx[i - 1] == universe - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn oracle_dfvs(d: &DiGraph) -> usize {
    let n = d.vertex_count();
    let arcs = arcs_of(d);
    min_subset(n, &|s| acyclic(n, &arcs, &|v| !s.contains(&v)))
        .unwrap()
        .len()
}

pub fn oracle_fvs(g: &UGraph) -> usize {
    let n = g.vertex_count();
    let edges = edges_of(g);
    min_subset(n, &|s| forest(n, &edges, &|v| !s.contains(&v)))
        .unwrap()
        .len()
}

pub fn oracle_fas(d: &DiGraph) -> usize {
    let n = d.vertex_count();
    let arcs = arcs_of(d);
    min_subset(arcs.len(), &|s| {
        let rest: Vec<(usize, usize)> = arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !s.contains(i))
            .map(|(_, &a)| a)
            .collect();
        acyclic(n, &rest, &|_| true)
    })
    .unwrap()
    .len()
}

pub fn oracle_vc(g: &UGraph) -> usize {
    let edges = edges_of(g);
    min_subset(g.vertex_count(), &|s| {
        edges.iter().all(|(u, v)| s.contains(u) || s.contains(v))
    })
    .unwrap()
    .len()
}

/// `None` when no connected cover exists (edges in several components).
pub fn oracle_cvc(g: &UGraph) -> Option<usize> {
    let n = g.vertex_count();
    let edges = edges_of(g);
    min_subset(n, &|s| {
        edges.iter().all(|(u, v)| s.contains(u) || s.contains(v)) && induces_connected(n, &edges, s)
    })
    .map(|s| s.len())
}

pub fn oracle_cfvs(g: &UGraph) -> Option<usize> {
    let n = g.vertex_count();
    let edges = edges_of(g);
    min_subset(n, &|s| {
        forest(n, &edges, &|v| !s.contains(&v)) && induces_connected(n, &edges, s)
    })
    .map(|s| s.len())
}

/// Traces faces of the rotation system (next dart = successor of the twin
/// around its vertex) and checks Euler's formula, `V - E + F = 2` for every
/// component with an edge, summed over components; this certifies a plane
/// embedding. Also checks that
/// every vertex lists exactly its incident darts.
pub fn certifies_planar<K: Kind>(g: &Graph<K>, emb: &Embedding) -> bool {
    let mut pos: HashMap<Dart, (usize, usize)> = HashMap::new();
    for v in g.vertices() {
        let rot = emb.rotation.get(v).map(Vec::as_slice).unwrap_or(&[]);
        let mut listed: Vec<Dart> = rot.to_vec();
        let mut actual = g.darts(v);
        listed.sort_by_key(|d| (d.edge, d.end == End::B));
        actual.sort_by_key(|d| (d.edge, d.end == End::B));
        if listed != actual {
            return false;
        }
        for (i, &d) in rot.iter().enumerate() {
            pos.insert(d, (v, i));
        }
    }
    let mut seen: HashSet<Dart> = HashSet::new();
    let mut faces = 0;
    let darts: Vec<Dart> = pos.keys().copied().collect();
    for &start in &darts {
        if seen.contains(&start) {
            continue;
        }
        faces += 1;
        let mut d = start;
        while seen.insert(d) {
            let t = d.twin();
            let (w, i) = pos[&t];
            let rot = &emb.rotation[w];
            d = rot[(i + 1) % rot.len()];
        }
    }
    let active: Vec<usize> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (u, v)).collect();
    let mut p: Vec<usize> = (0..g.vertex_count()).collect();
    for &(u, v) in &edges {
        let (a, b) = (find(&mut p, u), find(&mut p, v));
        p[a] = b;
    }
    let mut roots: Vec<usize> = active.iter().map(|&v| find(&mut p, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    active.len() as i64 - edges.len() as i64 + faces as i64 == 2 * roots.len() as i64
}
