//! Dinic max-flow on integer capacities, with both extreme minimum cuts.

use std::collections::VecDeque;

/// Capacity large enough to never be part of a minimum cut.
pub const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
}

/// Directed flow network. Edges are stored in pairs: edge `2k` is the
/// forward arc and `2k + 1` its residual twin.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes], edges: Vec::new(), level: vec![0; nodes], cursor: vec![0; nodes] }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        debug_assert!(cap >= 0);
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    q.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.adj[u].len() {
            let e = self.adj[u][self.cursor[u]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Maximum flow from `s` to `t`; leaves the residual graph in place.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Source side of the inclusion-minimal minimum cut (call after [`max_flow`](Self::max_flow)).
    pub fn min_source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Source side of the inclusion-maximal minimum cut: every node that
    /// cannot reach `t` in the residual graph.
    pub fn max_source_side(&self, t: usize) -> Vec<bool> {
        let mut reaches = vec![false; self.nodes()];
        reaches[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            // u reaches v in the residual graph when arc u->v has spare capacity;
            // that arc is the twin of an entry in adj[v].
            for &e in &self.adj[v] {
                let u = self.edges[e].to;
                if self.edges[e ^ 1].cap > 0 && !reaches[u] {
                    reaches[u] = true;
                    stack.push(u);
                }
            }
        }
        reaches.into_iter().map(|r| !r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        // CLRS figure 26.1, max flow 23.
        let mut g = FlowNetwork::new(6);
        for (u, v, c) in [(0, 1, 16), (0, 2, 13), (2, 1, 4), (1, 3, 12), (3, 2, 9), (2, 4, 14), (4, 3, 7), (3, 5, 20), (4, 5, 4)] {
            g.add_edge(u, v, c);
        }
        assert_eq!(g.max_flow(0, 5), 23);
        let side = g.min_source_side(0);
        assert_eq!(side, [true, true, true, false, true, false]);
    }

    #[test]
    fn extreme_cuts_differ_on_ties() {
        // s -> a -> t with equal capacities: both {s} and {s, a} are minimum cuts.
        let mut g = FlowNetwork::new(3);
        g.add_edge(0, 1, 5);
        g.add_edge(1, 2, 5);
        assert_eq!(g.max_flow(0, 2), 5);
        assert_eq!(g.min_source_side(0), [true, false, false]);
        assert_eq!(g.max_source_side(2), [true, true, false]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn brute_force_cut_agrees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..7);
            let mut caps = vec![vec![0i64; n]; n];
            let mut g = FlowNetwork::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.4) {
                        let c = rng.gen_range(0..10);
                        caps[u][v] += c;
                        g.add_edge(u, v, c);
                    }
                }
            }
            let flow = g.max_flow(0, n - 1);
            let mut best = i64::MAX;
            for mask in 0u32..1 << n {
                if mask & 1 == 0 || mask >> (n - 1) & 1 == 1 {
                    continue;
                }
                let mut cut = 0;
                for u in 0..n {
                    for v in 0..n {
                        if mask >> u & 1 == 1 && mask >> v & 1 == 0 {
                            cut += caps[u][v];
                        }
                    }
                }
                best = best.min(cut);
            }
            assert_eq!(flow, best);
        }
    }
}
