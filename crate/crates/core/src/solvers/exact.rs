//! Branch and bound for feedback vertex/arc set and vertex cover.
//!
//! Feedback problems branch over the elements of a short cycle: the i-th branch
//! takes element i and forbids the earlier ones, so branches are disjoint.
//! Elements that are dominated on the cycle (every cycle through them also runs
//! through another candidate) are skipped. A greedy packing of disjoint cycles
//! bounds the remaining cost. Optima come from iterative deepening.

use super::net::{branch_positions, Active, Net};
use super::{canonicalize, Oracle, Problem, Solution, SolveResult, Verdict};

pub(crate) fn solve(
    net: &Net,
    problem: Problem,
    budget: Option<usize>,
    canonical: bool,
) -> SolveResult {
    match problem {
        Problem::Vc => {
            let mut s = VcSearch::new(net);
            run(&mut s, net.n, budget, canonical, false)
        }
        Problem::Fas => {
            let mut s = HitSearch::new(net, true);
            run(&mut s, net.m, budget, canonical, true)
        }
        Problem::Fvs => {
            let mut s = HitSearch::new(net, false);
            run(&mut s, net.n, budget, canonical, false)
        }
        Problem::Cvc | Problem::Cfvs => unreachable!("connected variants are handled separately"),
    }
}

/// Common driver: decision at a fixed budget, or iterative deepening for the optimum.
pub(crate) trait Decide: Oracle {
    fn lower_bound(&mut self) -> usize;
    fn explored(&self) -> u64;
}

fn run(
    s: &mut impl Decide,
    universe: usize,
    budget: Option<usize>,
    canonical: bool,
    arcs: bool,
) -> SolveResult {
    let wrap = |ids: Vec<usize>| {
        if arcs {
            Solution::arcs(ids)
        } else {
            Solution::vertices(ids)
        }
    };
    if let Some(k) = budget {
        return match s.feasible(&[], &vec![false; universe], k) {
            Some(cert) => SolveResult {
                verdict: Verdict::Yes,
                certificate: Some(wrap(cert)),
                explored: s.explored(),
            },
            None => SolveResult {
                verdict: Verdict::No,
                certificate: None,
                explored: s.explored(),
            },
        };
    }
    let mut k = s.lower_bound();
    loop {
        if let Some(cert) = s.feasible(&[], &vec![false; universe], k) {
            let opt = cert.len();
            let cert = if canonical {
                canonicalize(s, universe, opt, cert)
            } else {
                cert
            };
            return SolveResult {
                verdict: Verdict::Optimal(opt),
                certificate: Some(wrap(cert)),
                explored: s.explored(),
            };
        }
        k += 1;
    }
}

pub(crate) struct HitSearch<'a> {
    net: &'a Net,
    arcs: bool,
    explored: u64,
    chosen: Vec<usize>,
}

impl<'a> HitSearch<'a> {
    pub fn new(net: &'a Net, arcs: bool) -> Self {
        HitSearch {
            net,
            arcs,
            explored: 0,
            chosen: Vec::new(),
        }
    }

    fn remove(&self, act: &mut Active, id: usize) {
        if self.arcs {
            act.e[id] = false;
        } else {
            act.v[id] = false;
        }
    }

    fn ids(&self, cyc: &(Vec<usize>, Vec<usize>)) -> Vec<usize> {
        if self.arcs {
            cyc.1.clone()
        } else {
            cyc.0.clone()
        }
    }

    /// Cycle with the fewest branch candidates (then shortest), with those candidates.
    /// `None` when the active graph is acyclic.
    fn pick(&self, act: &Active, forb: &[bool]) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for s in 0..self.net.n {
            if !act.v[s] {
                continue;
            }
            let Some(cyc) = self.net.cycle_through(act, s) else {
                continue;
            };
            let ids = self.ids(&cyc);
            let links = self.net.domination_links(act, &cyc, self.arcs);
            let pos = branch_positions(&links, &ids, |id| forb[id]);
            let branch: Vec<usize> = pos.iter().map(|&p| ids[p]).collect();
            let key = (branch.len(), ids.len());
            if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                let stop = branch.len() <= 1;
                best = Some((key.0, key.1, branch));
                if stop {
                    break;
                }
            }
        }
        best.map(|b| b.2)
    }

    /// Greedy packing of disjoint cycles; `usize::MAX` if a cycle has no selectable element.
    fn packing(&self, act: &Active, forb: &[bool], cap: usize) -> usize {
        let mut a = act.clone();
        let mut count = 0;
        loop {
            self.net.trim(&mut a);
            let Some(cyc) = self.net.shortest_cycle(&a) else {
                return count;
            };
            let ids = self.ids(&cyc);
            if ids.iter().all(|&id| forb[id]) {
                return usize::MAX;
            }
            count += 1;
            if count > cap {
                return count;
            }
            for id in ids {
                self.remove(&mut a, id);
            }
        }
    }

    fn rec(&mut self, mut act: Active, forb: &mut Vec<bool>, budget: usize) -> bool {
        self.explored += 1;
        self.net.trim(&mut act);
        let Some(branch) = self.pick(&act, forb) else {
            return true;
        };
        if branch.is_empty() || budget == 0 {
            return false;
        }
        if self.packing(&act, forb, budget) > budget {
            return false;
        }
        let mut newly = Vec::new();
        let mut found = false;
        for &b in &branch {
            let mut next = act.clone();
            self.remove(&mut next, b);
            self.chosen.push(b);
            if self.rec(next, forb, budget - 1) {
                found = true;
                break;
            }
            self.chosen.pop();
            forb[b] = true;
            newly.push(b);
        }
        for b in newly {
            forb[b] = false;
        }
        found
    }
}

impl Oracle for HitSearch<'_> {
    fn feasible(&mut self, forced: &[usize], forbidden: &[bool], k: usize) -> Option<Vec<usize>> {
        if forced.len() > k {
            return None;
        }
        let mut act = self.net.full();
        for &f in forced {
            let live = if self.arcs { act.e[f] } else { act.v[f] };
            if !live {
                return None;
            }
            self.remove(&mut act, f);
        }
        let mut forb = forbidden.to_vec();
        self.chosen.clear();
        if self.rec(act, &mut forb, k - forced.len()) {
            let mut out = forced.to_vec();
            out.append(&mut self.chosen);
            Some(out)
        } else {
            None
        }
    }
}

impl Decide for HitSearch<'_> {
    fn lower_bound(&mut self) -> usize {
        let forb = vec![false; if self.arcs { self.net.m } else { self.net.n }];
        self.packing(&self.net.full(), &forb, usize::MAX)
    }

    fn explored(&self) -> u64 {
        self.explored
    }
}

pub(crate) struct VcSearch<'a> {
    net: &'a Net,
    explored: u64,
    chosen: Vec<usize>,
}

impl<'a> VcSearch<'a> {
    pub fn new(net: &'a Net) -> Self {
        VcSearch {
            net,
            explored: 0,
            chosen: Vec::new(),
        }
    }

    fn uncovered(&self, taken: &[bool]) -> Vec<(usize, usize)> {
        let net = self.net;
        (0..net.m)
            .map(|e| net.ends[e])
            .filter(|&(a, b)| net.alive[a] && net.alive[b] && !taken[a] && !taken[b])
            .collect()
    }

    fn matching(&self, edges: &[(usize, usize)]) -> usize {
        let mut used = vec![false; self.net.n];
        let mut size = 0;
        for &(a, b) in edges {
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                size += 1;
            }
        }
        size
    }

    fn rec(&mut self, taken: &mut Vec<bool>, forb: &mut Vec<bool>, budget: usize) -> bool {
        self.explored += 1;
        let mark = self.chosen.len();
        let mut left = budget;
        // endpoints forced by forbidden partners
        loop {
            let mut forced = None;
            for (a, b) in self.uncovered(taken) {
                match (forb[a], forb[b]) {
                    (true, true) => return self.undo(taken, mark, false),
                    (true, false) => forced = Some(b),
                    (false, true) => forced = Some(a),
                    _ => continue,
                }
                break;
            }
            let Some(v) = forced else { break };
            if left == 0 {
                return self.undo(taken, mark, false);
            }
            left -= 1;
            taken[v] = true;
            self.chosen.push(v);
        }
        let edges = self.uncovered(taken);
        if edges.is_empty() {
            return true;
        }
        if left == 0 || self.matching(&edges) > left {
            return self.undo(taken, mark, false);
        }
        let mut deg = vec![0usize; self.net.n];
        for &(a, b) in &edges {
            deg[a] += 1;
            if a != b {
                deg[b] += 1;
            }
        }
        let v = (0..self.net.n)
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
            .unwrap();
        taken[v] = true;
        self.chosen.push(v);
        if self.rec(taken, forb, left - 1) {
            return true;
        }
        self.chosen.pop();
        taken[v] = false;
        forb[v] = true;
        let ok = self.rec(taken, forb, left);
        forb[v] = false;
        if ok {
            return true;
        }
        self.undo(taken, mark, false)
    }

    fn undo(&mut self, taken: &mut [bool], mark: usize, result: bool) -> bool {
        for v in self.chosen.drain(mark..) {
            taken[v] = false;
        }
        result
    }
}

impl Oracle for VcSearch<'_> {
    fn feasible(&mut self, forced: &[usize], forbidden: &[bool], k: usize) -> Option<Vec<usize>> {
        if forced.len() > k {
            return None;
        }
        let mut taken = vec![false; self.net.n];
        for &f in forced {
            if !self.net.alive[f] {
                return None;
            }
            taken[f] = true;
        }
        let mut forb = forbidden.to_vec();
        self.chosen.clear();
        if self.rec(&mut taken, &mut forb, k - forced.len()) {
            let mut out = forced.to_vec();
            out.append(&mut self.chosen);
            Some(out)
        } else {
            None
        }
    }
}

impl Decide for VcSearch<'_> {
    fn lower_bound(&mut self) -> usize {
        let taken = vec![false; self.net.n];
        self.matching(&self.uncovered(&taken))
    }

    fn explored(&self) -> u64 {
        self.explored
    }
}
