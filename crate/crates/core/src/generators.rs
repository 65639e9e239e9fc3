//! Instance families for tests and the `verify` command. Random families take
//! a caller-provided generator so runs are reproducible from a seed.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{DiGraph, UGraph, Vertex};
use crate::planar::is_planar;

/// `G(n, p)` on ordered pairs of distinct vertices.
pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> DiGraph {
    let mut d = DiGraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_edge(u, v);
            }
        }
    }
    d
}

/// `G(n, p)` on unordered pairs.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> UGraph {
    let mut g = UGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random digraph with total degree at most two everywhere; self-loops and
/// 2-cycles allowed.
pub fn random_deg2_digraph(n: usize, rng: &mut impl Rng) -> DiGraph {
    let mut d = DiGraph::new(n);
    if n == 0 {
        return d;
    }
    let mut deg = vec![0usize; n];
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let ok = if u == v {
            deg[u] == 0 && rng.gen_bool(0.1)
        } else {
            deg[u] < 2 && deg[v] < 2
        };
        if ok {
            d.add_edge(u, v);
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    d
}

pub fn path(n: usize) -> UGraph {
    UGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> UGraph {
    UGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn directed_cycle(n: usize) -> DiGraph {
    DiGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Hub `0` joined to a rim cycle `1..=spokes`.
pub fn wheel(spokes: usize) -> UGraph {
    let mut g = UGraph::new(spokes + 1);
    for i in 1..=spokes {
        g.add_edge(0, i);
        g.add_edge(i, i % spokes + 1);
    }
    g
}

pub fn complete(n: usize) -> UGraph {
    let mut g = UGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn k4() -> UGraph {
    complete(4)
}

pub fn k33() -> UGraph {
    UGraph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b))))
}

/// Two `k`-cycles joined by a perfect matching.
pub fn prism_k(k: usize) -> UGraph {
    let mut g = UGraph::new(2 * k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k);
        g.add_edge(k + i, k + (i + 1) % k);
        g.add_edge(i, k + i);
    }
    g
}

/// Triangular prism.
pub fn prism() -> UGraph {
    prism_k(3)
}

pub fn cube() -> UGraph {
    prism_k(4)
}

pub fn octahedron() -> UGraph {
    UGraph::from_edges(
        6,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
        ],
    )
}

pub fn petersen() -> UGraph {
    let mut g = UGraph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// Replaces vertex `v` of a cubic graph by a triangle.
pub fn truncate_vertex(g: &UGraph, v: Vertex) -> UGraph {
    let n = g.vertex_count();
    let mut out = UGraph::new(n + 2);
    let corners = [v, n, n + 1];
    let mut slot = 0;
    for (_, a, b) in g.edges() {
        let mut ends = [a, b];
        for end in ends.iter_mut() {
            if *end == v {
                *end = corners[slot];
                slot += 1;
            }
        }
        out.add_edge(ends[0], ends[1]);
    }
    out.add_edge(v, n);
    out.add_edge(n, n + 1);
    out.add_edge(n + 1, v);
    out
}

/// Small planar cubic graphs: K4, prisms, the cube and vertex truncations.
pub fn planar_cubic_catalog() -> Vec<(&'static str, UGraph)> {
    vec![
        ("k4", k4()),
        ("prism", prism()),
        ("k4-truncated-once", truncate_vertex(&k4(), 0)),
        ("cube", cube()),
        ("pentagonal-prism", prism_k(5)),
        (
            "k4-truncated-twice",
            truncate_vertex(&truncate_vertex(&k4(), 0), 1),
        ),
    ]
}

/// Wheel with `hub_degree` spokes plus random non-crossing chords drawn outside
/// the rim (each rim vertex gets at most one), so the hub is the only vertex of
/// degree above four.
pub fn random_planar_hub(hub_degree: usize, rng: &mut impl Rng) -> UGraph {
    let mut g = wheel(hub_degree);
    let rim = hub_degree;
    let mut used = vec![false; rim + 1];
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rim {
        let a = rng.gen_range(1..=rim);
        let b = rng.gen_range(1..=rim);
        let (a, b) = (a.min(b), a.max(b));
        if b - a < 2 || (a == 1 && b == rim) || used[a] || used[b] {
            continue;
        }
        let crosses = chords
            .iter()
            .any(|&(c, d)| (a < c && c < b && b < d) || (c < a && a < d && d < b));
        if crosses {
            continue;
        }
        used[a] = true;
        used[b] = true;
        chords.push((a, b));
        g.add_edge(a, b);
    }
    // occasionally hang a pendant path off the rim
    if rng.gen_bool(0.5) {
        let x = g.add_vertex();
        let free: Vec<usize> = (1..=rim).filter(|&v| !used[v]).collect();
        let at = free.choose(rng).copied().unwrap_or(1);
        g.add_edge(at, x);
    }
    g
}

/// Random connected planar simple graph with maximum degree at most four and
/// at least two edges.
pub fn random_connected_planar_deg4(n: usize, rng: &mut impl Rng) -> UGraph {
    assert!(n >= 3, "need at least three vertices");
    loop {
        let mut g = UGraph::new(n);
        let mut deg = vec![0usize; n];
        let mut present = BTreeSet::new();
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let choices: Vec<Vertex> = order[..i].iter().copied().filter(|&u| deg[u] < 4).collect();
            let u = *choices.choose(rng).unwrap();
            let v = order[i];
            g.add_edge(u, v);
            deg[u] += 1;
            deg[v] += 1;
            present.insert((u.min(v), u.max(v)));
        }
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let key = (u.min(v), u.max(v));
            if u == v || deg[u] >= 4 || deg[v] >= 4 || present.contains(&key) {
                continue;
            }
            let mut h = g.clone();
            h.add_edge(u, v);
            if is_planar(&h) {
                g = h;
                deg[u] += 1;
                deg[v] += 1;
                present.insert(key);
            }
        }
        if g.edge_count() >= 2 {
            return g;
        }
    }
}

/// Random connected vertex cover: all vertices minus a random independent set
/// whose removal keeps the rest connected.
pub fn random_connected_cover(g: &UGraph, rng: &mut impl Rng) -> Vec<Vertex> {
    let mut cover: Vec<Vertex> = g.vertices().collect();
    let mut order = cover.clone();
    order.shuffle(rng);
    for v in order {
        let trial: Vec<Vertex> = cover.iter().copied().filter(|&x| x != v).collect();
        let covers = g
            .edges()
            .all(|(_, a, b)| trial.contains(&a) || trial.contains(&b));
        if covers && !trial.is_empty() && g.induces_connected(&trial) && rng.gen_bool(0.7) {
            cover = trial;
        }
    }
    cover
}

/// Canonical adjacency code of a connected simple graph: the least upper
/// triangle over all breadth-first orderings (any start, any order of newly
/// found neighbors). Isomorphic graphs get equal codes and vice versa.
pub fn canonical_code(g: &UGraph) -> Vec<bool> {
    let n = g.vertex_count();
    let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut best: Option<Vec<bool>> = None;
    for s in 0..n {
        let mut order = vec![s];
        let mut placed = vec![false; n];
        placed[s] = true;
        bfs_orders(&adj, &mut order, &mut placed, 0, &mut |ord| {
            let code = code_of(&adj, ord);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
    }
    best.unwrap_or_default()
}

fn code_of(adj: &[Vec<Vertex>], order: &[Vertex]) -> Vec<bool> {
    let n = order.len();
    let mut pos = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut m = vec![false; n * n];
    for (v, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            m[pos[v] * n + pos[w]] = true;
        }
    }
    let mut code = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(m[i * n + j]);
        }
    }
    code
}

fn bfs_orders(
    adj: &[Vec<Vertex>],
    order: &mut Vec<Vertex>,
    placed: &mut [bool],
    head: usize,
    emit: &mut impl FnMut(&[Vertex]),
) {
    if head == order.len() {
        emit(order);
        return;
    }
    let v = order[head];
    let mut fresh: Vec<Vertex> = adj[v].iter().copied().filter(|&w| !placed[w]).collect();
    fresh.sort_unstable();
    fresh.dedup();
    for &w in &fresh {
        placed[w] = true;
    }
    permute(&mut fresh, 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        bfs_orders(adj, order, placed, head + 1, emit);
        order.truncate(len);
    });
    for &w in &fresh {
        placed[w] = false;
    }
}

fn permute(items: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// All connected simple cubic graphs on up to `max_n` vertices, up to
/// isomorphism. Candidates are labelled in breadth-first order from vertex 0
/// (every connected graph has such a labelling), then deduplicated by
/// [`canonical_code`].
pub fn connected_cubic_catalog(max_n: usize) -> Vec<UGraph> {
    let mut all = Vec::new();
    for n in (4..=max_n).step_by(2) {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        cubic_bfs(n, 0, 1, &mut adj, &mut |adj| {
            let g = UGraph::from_edges(
                n,
                adj.iter()
                    .enumerate()
                    .flat_map(|(v, ns)| ns.iter().filter(move |&&w| w > v).map(move |&w| (v, w))),
            );
            if seen.insert(canonical_code(&g)) {
                all.push(g);
            }
        });
    }
    all
}

fn cubic_bfs(
    n: usize,
    v: Vertex,
    next: usize,
    adj: &mut Vec<Vec<Vertex>>,
    emit: &mut impl FnMut(&[Vec<Vertex>]),
) {
    if v == n {
        emit(adj);
        return;
    }
    if v >= next {
        return;
    }
    let need = 3 - adj[v].len();
    let open: Vec<Vertex> = (v + 1..next)
        .filter(|&w| adj[w].len() < 3 && !adj[v].contains(&w))
        .collect();
    for fresh in 0..=need.min(n - next) {
        let old = need - fresh;
        choose(&open, old, 0, &mut Vec::new(), &mut |picked| {
            let targets: Vec<Vertex> = picked.iter().copied().chain(next..next + fresh).collect();
            for &w in &targets {
                adj[v].push(w);
                adj[w].push(v);
            }
            cubic_bfs(n, v + 1, next + fresh, adj, emit);
            for &w in &targets {
                adj[v].pop();
                adj[w].pop();
            }
        });
    }
}

fn choose(
    items: &[Vertex],
    k: usize,
    from: usize,
    acc: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]),
) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in from..items.len() {
        acc.push(items[i]);
        choose(items, k, i + 1, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_graphs() {
        assert!(
            k4().is_cubic()
                && prism().is_cubic()
                && cube().is_cubic()
                && k33().is_cubic()
                && petersen().is_cubic()
        );
        assert_eq!(wheel(5).max_degree(), 5);
        for (name, g) in planar_cubic_catalog() {
            assert!(g.is_cubic() && is_planar(&g), "{name}");
        }
    }

    #[test]
    fn canonical_code_detects_isomorphism() {
        let a = prism();
        let b = UGraph::from_edges(
            6,
            [
                (0, 2),
                (2, 4),
                (4, 0),
                (1, 3),
                (3, 5),
                (5, 1),
                (0, 1),
                (2, 3),
                (4, 5),
            ],
        );
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(canonical_code(&a), canonical_code(&k33()));
    }

    #[test]
    fn cubic_catalog_counts() {
        let cat = connected_cubic_catalog(10);
        let count = |n: usize| cat.iter().filter(|g| g.vertex_count() == n).count();
        assert_eq!([count(4), count(6), count(8), count(10)], [1, 2, 5, 19]);
        assert!(cat
            .iter()
            .all(|g| g.is_cubic() && g.is_connected() && g.is_simple()));
    }

    #[test]
    fn random_families_meet_their_promises() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let d = random_deg2_digraph(12, &mut rng);
            assert!(d.max_degree() <= 2);
            let h = random_planar_hub(6, &mut rng);
            assert!(is_planar(&h) && h.max_degree() == 6);
            assert!(h.vertices().filter(|&v| h.degree(v) > 4).count() == 1);
            let g = random_connected_planar_deg4(5, &mut rng);
            assert!(
                g.is_connected() && g.max_degree() <= 4 && is_planar(&g) && g.edge_count() >= 2
            );
            let c = random_connected_cover(&g, &mut rng);
            assert!(g.induces_connected(&c));
        }
    }
}
