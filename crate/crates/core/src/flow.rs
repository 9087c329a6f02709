//! Integer max-flow (Dinic) with min-cut extraction. Networks are small —
//! a handful of nodes per structural check — so the implementation favors
//! determinism and clarity: arcs keep insertion order and the cut is the
//! set of nodes reachable from the source in the final residual graph.

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    flow: i64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>, // per node, indices into arcs (forward and backward)
}

/// Handle for querying one directed arc after the flow is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcId(usize);

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.head.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.head.push(Vec::new());
        self.head.len() - 1
    }

    /// Directed arc `from -> to` with the given capacity.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> ArcId {
        assert!(from < self.nodes() && to < self.nodes() && cap >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.head[from].push(id);
        self.head[to].push(id + 1);
        ArcId(id)
    }

    pub fn flow_on(&self, arc: ArcId) -> i64 {
        self.arcs[arc.0].flow
    }

    fn residual(&self, idx: usize) -> i64 {
        self.arcs[idx].cap - self.arcs[idx].flow
    }

    /// Maximum flow from `source` to `sink`; also returns the source side of
    /// a minimum cut (as a boolean mask over nodes).
    pub fn max_flow(&mut self, source: usize, sink: usize) -> (i64, Vec<bool>) {
        assert_ne!(source, sink);
        let n = self.nodes();
        let mut total = 0i64;
        loop {
            // BFS level graph.
            let mut level = vec![usize::MAX; n];
            level[source] = 0;
            let mut queue = vec![source];
            let mut qi = 0;
            while qi < queue.len() {
                let v = queue[qi];
                qi += 1;
                for &idx in &self.head[v] {
                    let to = self.arcs[idx].to;
                    if self.residual(idx) > 0 && level[to] == usize::MAX {
                        level[to] = level[v] + 1;
                        queue.push(to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                let cut = level.iter().map(|&l| l != usize::MAX).collect();
                return (total, cut);
            }
            // Blocking flow with per-node arc cursors.
            let mut it = vec![0usize; n];
            loop {
                let pushed = self.dfs_push(source, sink, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs_push(
        &mut self,
        v: usize,
        sink: usize,
        limit: i64,
        level: &[usize],
        it: &mut [usize],
    ) -> i64 {
        if v == sink {
            return limit;
        }
        while it[v] < self.head[v].len() {
            let idx = self.head[v][it[v]];
            let to = self.arcs[idx].to;
            if self.residual(idx) > 0 && level[to] == level[v] + 1 {
                let pushed = self.dfs_push(to, sink, limit.min(self.residual(idx)), level, it);
                if pushed > 0 {
                    self.arcs[idx].flow += pushed;
                    self.arcs[idx ^ 1].flow -= pushed;
                    return pushed;
                }
            }
            it[v] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2);
        let a = net.add_arc(0, 1, 5);
        let (f, cut) = net.max_flow(0, 1);
        assert_eq!(f, 5);
        assert_eq!(net.flow_on(a), 5);
        assert_eq!(cut, vec![true, false]);
    }

    #[test]
    fn bottleneck_in_the_middle() {
        // 0 -> 1 -> 2 with caps 10, 3 and a parallel route 0 -> 2 cap 2.
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 10);
        net.add_arc(1, 2, 3);
        net.add_arc(0, 2, 2);
        let (f, cut) = net.max_flow(0, 2);
        assert_eq!(f, 5);
        assert_eq!(cut, vec![true, true, false]);
    }

    #[test]
    fn needs_a_back_edge() {
        // Classic diamond where a greedy path must be partially undone.
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 1);
        net.add_arc(0, 2, 1);
        net.add_arc(1, 2, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 1);
        let (f, _) = net.max_flow(0, 3);
        assert_eq!(f, 2);
    }

    #[test]
    fn flow_matches_exhaustive_min_cut_on_random_networks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let mut net = FlowNetwork::new(n);
            let mut arcs = Vec::new();
            for from in 0..n {
                for to in 0..n {
                    if from != to && rng.gen_bool(0.4) {
                        let cap = rng.gen_range(0..=4i64);
                        net.add_arc(from, to, cap);
                        arcs.push((from, to, cap));
                    }
                }
            }
            let (flow, cut) = net.max_flow(0, n - 1);
            assert!(cut[0] && !cut[n - 1]);
            // Cut capacity of the returned cut equals the flow value.
            let cut_cap: i64 = arcs
                .iter()
                .filter(|&&(f, t, _)| cut[f] && !cut[t])
                .map(|&(_, _, c)| c)
                .sum();
            assert_eq!(flow, cut_cap);
            // No smaller cut exists (exhaustive over source sides).
            let mut best = i64::MAX;
            for mask in 0..(1u32 << n) {
                if mask & 1 == 0 || mask >> (n - 1) & 1 == 1 {
                    continue;
                }
                let cap: i64 = arcs
                    .iter()
                    .filter(|&&(f, t, _)| mask >> f & 1 == 1 && mask >> t & 1 == 0)
                    .map(|&(_, _, c)| c)
                    .sum();
                best = best.min(cap);
            }
            assert_eq!(flow, best);
        }
    }
}
