//! Connected vertex cover and connected feedback vertex set.
//!
//! The solution grows from a root (its smallest vertex) by include/exclude
//! branching on a frontier vertex that lies on a shortest path toward the
//! nearest unresolved obstacle. A partial solution is abandoned when some
//! obstacle is out of reach of the remaining budget.

use std::collections::VecDeque;

use super::net::{Active, Net};
use super::{canonicalize, Oracle, Problem, Solution, SolveResult, Verdict};

pub(crate) fn solve(
    net: &Net,
    problem: Problem,
    budget: Option<usize>,
    canonical: bool,
) -> SolveResult {
    let mut s = ConnSearch {
        net,
        cover: problem == Problem::Cvc,
        explored: 0,
        in_s: vec![false; net.n],
        list: Vec::new(),
    };
    let none = vec![false; net.n];
    let spread = s.obstacle_components();
    if spread > 1 {
        let verdict = if budget.is_some() {
            Verdict::No
        } else {
            Verdict::Infeasible
        };
        return SolveResult {
            verdict,
            certificate: None,
            explored: 0,
        };
    }
    if let Some(k) = budget {
        let cert = s.feasible(&[], &none, k);
        let verdict = if cert.is_some() {
            Verdict::Yes
        } else {
            Verdict::No
        };
        return SolveResult {
            verdict,
            certificate: cert.map(Solution::vertices),
            explored: s.explored,
        };
    }
    let mut k = s.lower_bound(&none);
    loop {
        if let Some(cert) = s.feasible(&[], &none, k) {
            let opt = cert.len();
            let cert = if canonical {
                canonicalize(&mut s, net.n, opt, cert)
            } else {
                cert
            };
            return SolveResult {
                verdict: Verdict::Optimal(opt),
                certificate: Some(Solution::vertices(cert)),
                explored: s.explored,
            };
        }
        k += 1;
    }
}

struct ConnSearch<'a> {
    net: &'a Net,
    cover: bool,
    explored: u64,
    in_s: Vec<bool>,
    list: Vec<usize>,
}

impl ConnSearch<'_> {
    fn without(&self, drop: impl Fn(usize) -> bool) -> Active {
        let mut act = self.net.full();
        for v in 0..self.net.n {
            if drop(v) {
                act.v[v] = false;
            }
        }
        act
    }

    /// Vertices that some solution extending the current set still has to reach:
    /// endpoints of uncovered edges, or vertices on cycles avoiding the set.
    fn obstacle_vertices(&self) -> Vec<usize> {
        let net = self.net;
        if self.cover {
            let mut out = Vec::new();
            for &(a, b) in &net.ends {
                if net.alive[a] && net.alive[b] && !self.in_s[a] && !self.in_s[b] {
                    out.push(a);
                    out.push(b);
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        } else {
            let mut act = self.without(|v| self.in_s[v]);
            net.trim(&mut act);
            (0..net.n).filter(|&v| act.v[v]).collect()
        }
    }

    /// Number of connected components of the graph that contain an obstacle.
    fn obstacle_components(&self) -> usize {
        let obs = self.obstacle_vertices();
        let mut comp = vec![usize::MAX; self.net.n];
        let mut count = 0;
        for &s in &obs {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.net.out[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        count
    }

    fn lower_bound(&self, forb: &[bool]) -> usize {
        if self.obstacle_vertices().is_empty() {
            return 0;
        }
        self.packing(forb, usize::MAX).max(1)
    }

    /// Disjoint obstacles (edges of a matching, or vertex-disjoint cycles) avoiding the set.
    fn packing(&self, forb: &[bool], cap: usize) -> usize {
        let net = self.net;
        if self.cover {
            let mut used = vec![false; net.n];
            let mut size = 0;
            for &(a, b) in &net.ends {
                if net.alive[a]
                    && net.alive[b]
                    && !self.in_s[a]
                    && !self.in_s[b]
                    && !used[a]
                    && !used[b]
                {
                    used[a] = true;
                    used[b] = true;
                    size += 1;
                }
            }
            size
        } else {
            let mut act = self.without(|v| self.in_s[v]);
            let mut count = 0;
            loop {
                net.trim(&mut act);
                let Some((vs, _)) = net.shortest_cycle(&act) else {
                    return count;
                };
                if vs.iter().all(|&v| forb[v]) {
                    return usize::MAX;
                }
                count += 1;
                if count > cap {
                    return count;
                }
                for v in vs {
                    act.v[v] = false;
                }
            }
        }
    }

    fn rec(&mut self, forb: &mut Vec<bool>, forced: &[usize], left: usize) -> bool {
        self.explored += 1;
        let net = self.net;
        let obstacles = self.obstacle_vertices();
        let pending: Vec<usize> = forced.iter().copied().filter(|&f| !self.in_s[f]).collect();
        if obstacles.is_empty() && pending.is_empty() {
            return true;
        }
        if left == 0 {
            return false;
        }
        // distances from the set through selectable vertices
        const FAR: usize = usize::MAX;
        let mut dist = vec![FAR; net.n];
        let mut parent = vec![usize::MAX; net.n];
        let mut queue = VecDeque::new();
        for &s in &self.list {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            if dist[x] >= left {
                continue;
            }
            for &(y, _) in &net.out[x] {
                if dist[y] == FAR && !forb[y] && net.alive[y] {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let reach = |v: usize| dist[v] != FAR;
        if pending.iter().any(|&f| !reach(f)) {
            return false;
        }
        if self.cover {
            for &(a, b) in &net.ends {
                if net.alive[a]
                    && net.alive[b]
                    && !self.in_s[a]
                    && !self.in_s[b]
                    && !reach(a)
                    && !reach(b)
                {
                    return false;
                }
            }
        } else {
            let act = self.without(|v| self.in_s[v] || reach(v));
            if net.has_cycle(&act) {
                return false;
            }
        }
        if self.packing(forb, left) > left {
            return false;
        }
        let target = pending
            .iter()
            .chain(obstacles.iter())
            .copied()
            .filter(|&v| reach(v) && dist[v] > 0)
            .min_by_key(|&v| (dist[v], v));
        let Some(mut b) = target else { return false };
        while dist[b] > 1 {
            b = parent[b];
        }

        self.in_s[b] = true;
        self.list.push(b);
        if self.rec(forb, forced, left - 1) {
            return true;
        }
        self.list.pop();
        self.in_s[b] = false;

        forb[b] = true;
        let ok = self.rec(forb, forced, left);
        forb[b] = false;
        ok
    }

    fn start(
        &mut self,
        root: usize,
        forb: &mut Vec<bool>,
        forced: &[usize],
        k: usize,
    ) -> Option<Vec<usize>> {
        self.in_s = vec![false; self.net.n];
        self.in_s[root] = true;
        self.list = vec![root];
        if self.rec(forb, forced, k - 1) {
            Some(self.list.clone())
        } else {
            None
        }
    }
}

impl Oracle for ConnSearch<'_> {
    fn feasible(&mut self, forced: &[usize], forbidden: &[bool], k: usize) -> Option<Vec<usize>> {
        let net = self.net;
        if forced.len() > k || forced.iter().any(|&f| !net.alive[f] || forbidden[f]) {
            return None;
        }
        let mut forb = forbidden.to_vec();
        if forced.is_empty() {
            self.in_s = vec![false; net.n];
            self.list.clear();
            if self.obstacle_vertices().is_empty() {
                return Some(Vec::new());
            }
            if k == 0 {
                return None;
            }
            for r in 0..net.n {
                if !net.alive[r] || forbidden[r] {
                    continue;
                }
                if let Some(sol) = self.start(r, &mut forb, &[], k) {
                    return Some(sol);
                }
                // later roots never use smaller vertices
                forb[r] = true;
            }
            None
        } else {
            let root = *forced.iter().min().unwrap();
            self.start(root, &mut forb, forced, k)
        }
    }
}
