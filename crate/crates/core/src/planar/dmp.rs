//! Path-addition planarity test (Demoucron, Malgrange and Pertuiset).
//!
//! The multigraph is first made simple by subdividing self-loops twice and
//! every repeated parallel edge once. Each biconnected block is embedded on
//! its own by growing a cycle one fragment path at a time; block rotations
//! are then concatenated at cut vertices and mapped back to the original
//! edge-ends.

use std::collections::VecDeque;

use super::{Embedding, NonPlanar};
use crate::graph::{Dart, End, UGraph};

const UNSET: usize = usize::MAX;

struct Simple {
    n: usize,
    ends: Vec<(usize, usize)>,
    // original dart standing behind each end of a simple edge, if that end is an original vertex
    orig: Vec<[Option<Dart>; 2]>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Simple {
    fn build(g: &UGraph) -> Simple {
        let mut s = Simple {
            n: g.vertex_count(),
            ends: Vec::new(),
            orig: Vec::new(),
            adj: Vec::new(),
        };
        let mut seen = std::collections::HashSet::new();
        let mut pending = Vec::new();
        for (e, u, v) in g.edges() {
            let da = Dart::new(e, End::A);
            let db = Dart::new(e, End::B);
            if u == v {
                let a = s.fresh();
                let b = s.fresh();
                pending.push((u, a, Some(da), None));
                pending.push((a, b, None, None));
                pending.push((b, u, None, Some(db)));
            } else if !seen.insert((u.min(v), u.max(v))) {
                let x = s.fresh();
                pending.push((u, x, Some(da), None));
                pending.push((x, v, None, Some(db)));
            } else {
                pending.push((u, v, Some(da), Some(db)));
            }
        }
        s.adj = vec![Vec::new(); s.n];
        for (u, v, ou, ov) in pending {
            let id = s.ends.len();
            s.ends.push((u, v));
            s.orig.push([ou, ov]);
            s.adj[u].push((v, id));
            s.adj[v].push((u, id));
        }
        s
    }

    fn fresh(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Edge partition into biconnected blocks.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut disc = vec![UNSET; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks = Vec::new();
        for root in 0..n {
            if disc[root] != UNSET || self.adj[root].is_empty() {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, edge to parent, next adjacency index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSET, 0)];
            while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
                if *i < self.adj[v].len() {
                    let (w, e) = self.adj[v][*i];
                    *i += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == UNSET {
                        edge_stack.push(e);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks
    }
}

/// Embeds one biconnected simple block; returns per-vertex cyclic edge order.
fn embed_block(s: &Simple, block: &[usize]) -> Result<Vec<(usize, Vec<usize>)>, NonPlanar> {
    // local renumbering
    let mut local = std::collections::HashMap::new();
    let mut verts = Vec::new();
    for &e in block {
        let (u, v) = s.ends[e];
        for x in [u, v] {
            local.entry(x).or_insert_with(|| {
                verts.push(x);
                verts.len() - 1
            });
        }
    }
    let nv = verts.len();
    if block.len() == 1 {
        let (u, v) = s.ends[block[0]];
        return Ok(vec![(u, vec![block[0]]), (v, vec![block[0]])]);
    }
    if nv >= 3 && block.len() > 3 * nv - 6 {
        return Err(NonPlanar);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for &e in block {
        let (u, v) = s.ends[e];
        let (a, b) = (local[&u], local[&v]);
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let edge_between = |a: usize, b: usize| -> usize {
        adj[a]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
            .expect("path edge missing")
    };

    let mut on_v = vec![false; nv];
    let mut on_e = std::collections::HashSet::new();

    // initial cycle: first edge (0, w) closed by a shortest path avoiding that edge
    let (w0, e0) = adj[0][0];
    let mut prev = vec![UNSET; nv];
    prev[w0] = w0;
    let mut queue = VecDeque::from([w0]);
    while let Some(x) = queue.pop_front() {
        if x == 0 {
            break;
        }
        for &(y, e) in &adj[x] {
            if e != e0 && prev[y] == UNSET {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![0];
    let mut x = prev[0];
    while x != w0 {
        cycle.push(x);
        x = prev[x];
    }
    cycle.push(w0);
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        on_v[a] = true;
        on_e.insert(edge_between(a, b));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while on_e.len() < block.len() {
        // fragments: (attachments, vertex set or chord endpoints)
        let mut fragments: Vec<(Vec<usize>, Fragment)> = Vec::new();
        for &e in block {
            if on_e.contains(&e) {
                continue;
            }
            let (u, v) = s.ends[e];
            let (a, b) = (local[&u], local[&v]);
            if on_v[a] && on_v[b] {
                let mut att = vec![a, b];
                att.sort_unstable();
                fragments.push((att, Fragment::Chord(a, b)));
            }
        }
        let mut comp = vec![UNSET; nv];
        for start in 0..nv {
            if on_v[start] || comp[start] != UNSET {
                continue;
            }
            let id = fragments.len();
            comp[start] = id;
            let mut att = Vec::new();
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &adj[x] {
                    if on_v[y] {
                        att.push(y);
                    } else if comp[y] == UNSET {
                        comp[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            att.sort_unstable();
            att.dedup();
            fragments.push((att, Fragment::Bridge));
        }

        let masks: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; nv];
                for &x in f {
                    m[x] = true;
                }
                m
            })
            .collect();
        let mut choice = None;
        for (i, (att, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| att.iter().all(|&a| masks[f][a]))
                .collect();
            match admissible.len() {
                0 => return Err(NonPlanar),
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let (att, frag) = &fragments[fi];
        let path = match frag {
            Fragment::Chord(a, b) => vec![*a, *b],
            Fragment::Bridge => {
                let a = att[0];
                let inside = |y: usize| !on_v[y] && comp[y] == fi;
                let c = adj[a]
                    .iter()
                    .map(|&(y, _)| y)
                    .find(|&y| inside(y))
                    .expect("attachment without edge");
                let mut prev = vec![UNSET; nv];
                prev[c] = c;
                let mut queue = VecDeque::from([c]);
                let mut end = None;
                'bfs: while let Some(x) = queue.pop_front() {
                    for &(y, _) in &adj[x] {
                        if on_v[y] && y != a {
                            end = Some((x, y));
                            break 'bfs;
                        }
                    }
                    for &(y, _) in &adj[x] {
                        if inside(y) && prev[y] == UNSET {
                            prev[y] = x;
                            queue.push_back(y);
                        }
                    }
                }
                let (last, b) = end.expect("bridge fragment has a second attachment");
                let mut inner = vec![last];
                let mut x = last;
                while x != c {
                    x = prev[x];
                    inner.push(x);
                }
                inner.reverse();
                let mut p = vec![a];
                p.extend(inner);
                p.push(b);
                p
            }
        };
        for w in path.windows(2) {
            on_e.insert(edge_between(w[0], w[1]));
        }
        for &x in &path {
            on_v[x] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let len = face.len();
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut i = ia;
        loop {
            f1.push(face[i]);
            if i == ib {
                break;
            }
            i = (i + 1) % len;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut i = ib;
        loop {
            f2.push(face[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % len;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }

    // rotation: for consecutive face corners x, y, z the successor of edge yx at y is yz
    let mut succ: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); nv];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let x = f[(i + l - 1) % l];
            let y = f[i];
            let z = f[(i + 1) % l];
            succ[y].insert(edge_between(y, x), edge_between(y, z));
        }
    }
    let mut out = Vec::with_capacity(nv);
    for y in 0..nv {
        let start = adj[y].iter().map(|&(_, e)| e).min().unwrap();
        let mut rot = vec![start];
        let mut e = succ[y][&start];
        while e != start {
            rot.push(e);
            e = succ[y][&e];
        }
        debug_assert_eq!(rot.len(), adj[y].len());
        out.push((verts[y], rot));
    }
    Ok(out)
}

enum Fragment {
    Chord(usize, usize),
    Bridge,
}

/// Returns a rotation system of `g` passing the Euler check, or `NonPlanar`.
pub fn test_planarity(g: &UGraph) -> Result<Embedding, NonPlanar> {
    let s = Simple::build(g);
    let mut rot_h: Vec<Vec<usize>> = vec![Vec::new(); s.n];
    for block in s.blocks() {
        for (v, rot) in embed_block(&s, &block)? {
            rot_h[v].extend(rot);
        }
    }
    let mut rotation = vec![Vec::new(); g.vertex_count()];
    for v in g.vertices() {
        rotation[v] = rot_h[v]
            .iter()
            .map(|&h| {
                let (a, _) = s.ends[h];
                let side = if a == v { 0 } else { 1 };
                s.orig[h][side].expect("original vertex end without dart")
            })
            .collect();
    }
    Ok(Embedding::new(rotation))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> UGraph {
        let mut g = UGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn k4_has_four_faces() {
        let g = complete(4);
        let e = test_planarity(&g).unwrap();
        assert_eq!(e.validate(&g).unwrap().faces, 4);
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        assert_eq!(test_planarity(&complete(5)), Err(NonPlanar));
        let k33 = UGraph::from_edges(
            6,
            [
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        );
        assert_eq!(test_planarity(&k33), Err(NonPlanar));
    }

    #[test]
    fn multigraph_with_loops_and_parallels() {
        let g = UGraph::from_edges(3, [(0, 1), (0, 1), (1, 1), (1, 2), (2, 0), (0, 0), (2, 0)]);
        let e = test_planarity(&g).unwrap();
        e.validate(&g).unwrap();
    }

    #[test]
    fn doubled_k4_is_planar() {
        let mut g = UGraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
        let e = test_planarity(&g).unwrap();
        assert_eq!(e.validate(&g).unwrap().faces, 10);
    }

    #[test]
    fn cut_vertices_and_dead_vertices() {
        let g = UGraph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]);
        let h = g.delete_vertices(&[6]);
        let e = test_planarity(&h).unwrap();
        e.validate(&h).unwrap();
    }
}
