//! Factors: verification, exact search through the matching gadget, the
//! brute-force oracle used by tests and the CLI, and the constructive
//! 2-factor for even-regular multigraphs (Euler orientation plus a perfect
//! matching in the out/in bipartite graph).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::matching::{self, kuhn_matching};
use crate::multigraph::{EdgeId, Multigraph};

/// Spanning subgraph in which every vertex has degree exactly 2 (loops
/// count twice). Stored as the set of selected edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    pub edges: BTreeSet<EdgeId>,
}

impl TwoFactor {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

/// Degree of `v` in the subgraph selected by `edges` (loops count twice).
pub fn subgraph_degree(g: &Multigraph, edges: &BTreeSet<EdgeId>, v: usize) -> usize {
    edges
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            if e.is_loop() && e.u == v {
                2
            } else if e.u == v || e.v == v {
                1
            } else {
                0
            }
        })
        .sum()
}

pub fn is_k_factor(g: &Multigraph, edges: &BTreeSet<EdgeId>, k: usize) -> bool {
    if edges.iter().any(|&id| id >= g.m()) {
        return false;
    }
    let mut deg = vec![0usize; g.n()];
    for &id in edges {
        let e = g.edge(id);
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg.iter().all(|&d| d == k)
}

pub fn is_two_factor(g: &Multigraph, edges: &BTreeSet<EdgeId>) -> bool {
    is_k_factor(g, edges, 2)
}

/// Exact 2-factor search: reduce to perfect matching in the degree gadget.
/// The empty graph has the empty 2-factor; a vertex of degree < 2 rules a
/// 2-factor out immediately.
pub fn find_two_factor(g: &Multigraph) -> Option<TwoFactor> {
    if g.n() == 0 {
        return Some(TwoFactor { edges: BTreeSet::new() });
    }
    if (0..g.n()).any(|v| g.degree(v) < 2) {
        return None;
    }
    let map = matching::tutte_gadget(g).expect("degrees checked above");
    let pm = matching::perfect_matching(&map.gadget)?;
    let edges = matching::lift_matching(&map, &pm).expect("perfect matching of the gadget");
    debug_assert!(is_two_factor(g, &edges));
    Some(TwoFactor { edges })
}

/// Size caps for the exponential oracle. Overridable through the
/// environment (`FACTOR_ORACLE_CAP_N`, `FACTOR_ORACLE_CAP_M`).
#[derive(Debug, Clone, Copy)]
pub struct OracleCaps {
    pub n: usize,
    pub m: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { n: 10, m: 24 }
    }
}

impl OracleCaps {
    pub fn from_env() -> Self {
        let read = |key: &str, fallback: usize| {
            std::env::var(key)
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(fallback)
        };
        let d = OracleCaps::default();
        OracleCaps {
            n: read("FACTOR_ORACLE_CAP_N", d.n),
            m: read("FACTOR_ORACLE_CAP_M", d.m),
        }
    }

    pub fn unlimited() -> Self {
        OracleCaps { n: usize::MAX, m: usize::MAX }
    }
}

/// Brute-force k-factor search by include/exclude over edge ids with degree
/// pruning. Returns the lexicographically first k-factor under the
/// include-first order. Intended as a ground-truth oracle for small graphs.
pub fn brute_force_k_factor(
    g: &Multigraph,
    k: usize,
    caps: OracleCaps,
) -> Result<Option<BTreeSet<EdgeId>>> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    if g.n() > caps.n || g.m() > caps.m {
        return Err(Error::cap(format!(
            "oracle limited to n <= {}, m <= {} (got n = {}, m = {})",
            caps.n,
            caps.m,
            g.n(),
            g.m()
        )));
    }
    let n = g.n();
    // rem[v]: degree still available to v among undecided edges.
    let mut rem = vec![0usize; n];
    for e in g.edges() {
        rem[e.u] += 1;
        rem[e.v] += 1;
    }
    let mut deg = vec![0usize; n];
    let mut chosen: Vec<EdgeId> = Vec::new();

    fn go(
        g: &Multigraph,
        k: usize,
        i: usize,
        deg: &mut [usize],
        rem: &mut [usize],
        chosen: &mut Vec<EdgeId>,
    ) -> bool {
        if i == g.m() {
            return deg.iter().all(|&d| d == k);
        }
        let e = g.edge(i);
        let ends = [e.u, e.v];
        for &v in &ends {
            rem[v] -= 1;
        }
        // Include e if its endpoints still have room.
        let fits = if e.is_loop() {
            deg[e.u] + 2 <= k
        } else {
            deg[e.u] < k && deg[e.v] < k
        };
        if fits {
            for &v in &ends {
                deg[v] += 1;
            }
            if deg.iter().zip(rem.iter()).all(|(&d, &r)| d <= k && d + r >= k)
                && go(g, k, i + 1, deg, rem, chosen)
            {
                chosen.push(i);
                for &v in &ends {
                    rem[v] += 1;
                }
                return true;
            }
            for &v in &ends {
                deg[v] -= 1;
            }
        }
        // Exclude e.
        let ok = deg.iter().zip(rem.iter()).all(|(&d, &r)| d + r >= k)
            && go(g, k, i + 1, deg, rem, chosen);
        for &v in &ends {
            rem[v] += 1;
        }
        ok
    }

    if go(g, k, 0, &mut deg, &mut rem, &mut chosen) {
        Ok(Some(chosen.into_iter().collect()))
    } else {
        Ok(None)
    }
}

/// 2-factor of a 2r-regular multigraph (r >= 1), built without search:
/// orient every component along an Euler circuit, then pick a perfect
/// matching in the bipartite out/in graph and lift it back to edges.
pub fn petersen_even_factor(g: &Multigraph) -> Result<TwoFactor> {
    let n = g.n();
    if n == 0 {
        return Ok(TwoFactor { edges: BTreeSet::new() });
    }
    let d0 = g.degree(0);
    if d0 < 2 || !d0.is_multiple_of(2) || (1..n).any(|v| g.degree(v) != d0) {
        return Err(Error::precondition(
            "graph is not 2r-regular with r >= 1",
        ));
    }

    // Euler orientation, one circuit per component.
    let mut used = vec![false; g.m()];
    let mut cursor = vec![0usize; n];
    let mut oriented: Vec<(usize, usize)> = vec![(0, 0); g.m()]; // edge id -> (tail, head)
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut stack: Vec<(usize, Option<(EdgeId, usize)>)> = vec![(start, None)];
        while let Some(&(v, entry)) = stack.last() {
            visited[v] = true;
            let mut next = None;
            while cursor[v] < g.adj(v).len() {
                let (w, e) = g.adj(v)[cursor[v]];
                if used[e] {
                    cursor[v] += 1;
                } else {
                    next = Some((w, e));
                    break;
                }
            }
            match next {
                Some((w, e)) => {
                    used[e] = true;
                    stack.push((w, Some((e, v))));
                }
                None => {
                    stack.pop();
                    if let Some((e, from)) = entry {
                        oriented[e] = (from, v);
                    }
                }
            }
        }
    }
    debug_assert!(used.iter().all(|&u| u));

    // Collapse parallel orientations; keep the lowest edge id per pair.
    let mut arc_edge: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for (e, &(tail, head)) in oriented.iter().enumerate() {
        arc_edge.entry((tail, head)).or_insert(e);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(tail, head) in arc_edge.keys() {
        adj[tail].push(head);
    }
    let mate = kuhn_matching(n, n, &adj);
    let mut edges = BTreeSet::new();
    for (v, &w) in mate.iter().enumerate() {
        if w == usize::MAX {
            return Err(Error::invariant(
                "regular out/in graph without a perfect matching",
            ));
        }
        edges.insert(arc_edge[&(v, w)]);
    }
    if !is_two_factor(g, &edges) {
        return Err(Error::invariant("lifted matching is not a 2-factor"));
    }
    Ok(TwoFactor { edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Multigraph {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::new(n, &pairs).unwrap()
    }

    #[test]
    fn cycle_is_its_own_two_factor() {
        let g = cycle(5);
        let f = find_two_factor(&g).unwrap();
        assert_eq!(f.edges, (0..5).collect());
        assert!(is_two_factor(&g, &f.edges));
    }

    #[test]
    fn empty_graph_has_empty_two_factor() {
        let g = Multigraph::empty(0);
        assert_eq!(find_two_factor(&g).unwrap().edges.len(), 0);
    }

    #[test]
    fn low_degree_vertex_blocks_two_factor() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(find_two_factor(&g).is_none());
    }

    #[test]
    fn loop_plus_double_edge_factors() {
        // loop at 0, double edge 1-2, single 0-1: degrees 3, 3, 2.
        let g = Multigraph::new(3, &[(0, 0), (1, 2), (1, 2), (0, 1)]).unwrap();
        let f = find_two_factor(&g).unwrap();
        assert!(is_two_factor(&g, &f.edges));
        assert!(f.contains(0), "the loop is the only way to finish vertex 0");
    }

    #[test]
    fn star_has_no_two_factor() {
        let g = Multigraph::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(find_two_factor(&g).is_none());
        assert_eq!(brute_force_k_factor(&g, 2, OracleCaps::default()).unwrap(), None);
    }

    #[test]
    fn oracle_agrees_with_gadget_search_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let mut pairs = Vec::new();
            for u in 0..n {
                if rng.gen_bool(0.2) {
                    pairs.push((u, u));
                }
                for v in (u + 1)..n {
                    for _ in 0..rng.gen_range(0..=2usize) {
                        if rng.gen_bool(0.4) {
                            pairs.push((u, v));
                        }
                    }
                }
            }
            let g = Multigraph::new(n, &pairs).unwrap();
            if g.m() > 24 {
                continue;
            }
            let brute = brute_force_k_factor(&g, 2, OracleCaps::default()).unwrap();
            let fast = find_two_factor(&g);
            assert_eq!(brute.is_some(), fast.is_some(), "graph: {:?}", g);
            if let Some(f) = fast {
                assert!(is_two_factor(&g, &f.edges));
            }
            if let Some(b) = brute {
                assert!(is_two_factor(&g, &b));
            }
        }
    }

    #[test]
    fn oracle_finds_one_and_three_factors() {
        // K_4 is 3-regular: it has a perfect matching (1-factor) and a
        // 3-factor (everything).
        let g = Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let one = brute_force_k_factor(&g, 1, OracleCaps::default()).unwrap().unwrap();
        assert!(is_k_factor(&g, &one, 1));
        let three = brute_force_k_factor(&g, 3, OracleCaps::default()).unwrap().unwrap();
        assert_eq!(three.len(), 6);
    }

    #[test]
    fn oracle_caps_are_enforced() {
        let g = cycle(12);
        let err = brute_force_k_factor(&g, 2, OracleCaps::default()).unwrap_err();
        assert!(matches!(err, Error::Cap(_)));
        assert!(brute_force_k_factor(&g, 2, OracleCaps::unlimited()).unwrap().is_some());
    }

    #[test]
    fn even_regular_graphs_always_factor() {
        // 4-regular: C_5 doubled.
        let mut pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        pairs.extend((0..5).map(|i| (i, (i + 1) % 5)));
        let g = Multigraph::new(5, &pairs).unwrap();
        let f = petersen_even_factor(&g).unwrap();
        assert!(is_two_factor(&g, &f.edges));
    }

    #[test]
    fn even_factor_handles_loops_and_components() {
        // Component 1: loop at each of 0, 1 plus a double edge between them
        // (degree 4); component 2: C_3 doubled (degree 4).
        let pairs = [
            (0, 0),
            (1, 1),
            (0, 1),
            (0, 1),
            (2, 3),
            (3, 4),
            (4, 2),
            (2, 3),
            (3, 4),
            (4, 2),
        ];
        let g = Multigraph::new(5, &pairs).unwrap();
        let f = petersen_even_factor(&g).unwrap();
        assert!(is_two_factor(&g, &f.edges));
    }

    #[test]
    fn even_factor_rejects_odd_regular() {
        let g = Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(petersen_even_factor(&g), Err(Error::Precondition(_))));
    }
}
