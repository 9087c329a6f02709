//! Matching engine: maximum matching on general simple graphs (blossom
//! contraction), perfect matchings on regular bipartite graphs, and the
//! degree-constraint gadget that turns 2-factor existence into perfect
//! matching existence.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

const NONE: usize = usize::MAX;

/// Loop-free graph without parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut g = SimpleGraph {
            n,
            edges: Vec::with_capacity(edges.len()),
            adj: vec![Vec::new(); n],
        };
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::input(format!("loop at {a} in a simple graph")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::input(format!(
                    "parallel edge between {} and {}",
                    key.0, key.1
                )));
            }
            g.edges.push(key);
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }
}

/// Maximum-cardinality matching via blossom contraction; `mate[v]` is the
/// matched partner or `usize::MAX`. Deterministic for a fixed adjacency
/// order: roots are tried ascending and neighbors in stored order.
pub fn maximum_matching(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // Greedy seed matching; augmentation fixes the rest.
    for v in 0..n {
        if mate[v] != NONE {
            continue;
        }
        for &w in g.adj(v) {
            if mate[w] == NONE {
                mate[v] = w;
                mate[w] = v;
                break;
            }
        }
    }
    for root in 0..n {
        if mate[root] == NONE {
            augment_from(g, root, &mut mate);
        }
    }
    mate
}

fn augment_from(g: &SimpleGraph, root: usize, mate: &mut [usize]) -> bool {
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = vec![root];
    let mut head = 0;

    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in g.adj(v) {
            if base[v] == base[w] || mate[v] == w {
                continue;
            }
            if w == root || (mate[w] != NONE && parent[mate[w]] != NONE) {
                // Odd cycle: contract the blossom to its base.
                let cur_base = blossom_base(&base, mate, &parent, v, w);
                let mut in_blossom = vec![false; n];
                mark_path(&base, mate, &mut parent, &mut in_blossom, v, cur_base, w);
                mark_path(&base, mate, &mut parent, &mut in_blossom, w, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push(i);
                        }
                    }
                }
            } else if parent[w] == NONE {
                parent[w] = v;
                if mate[w] == NONE {
                    alternate(mate, &parent, w);
                    return true;
                }
                used[mate[w]] = true;
                queue.push(mate[w]);
            }
        }
    }
    false
}

fn blossom_base(base: &[usize], mate: &[usize], parent: &[usize], a: usize, b: usize) -> usize {
    let mut on_path = vec![false; base.len()];
    let mut v = base[a];
    loop {
        on_path[v] = true;
        if mate[v] == NONE {
            break;
        }
        v = base[parent[mate[v]]];
    }
    let mut w = base[b];
    while !on_path[w] {
        w = base[parent[mate[w]]];
    }
    w
}

fn mark_path(
    base: &[usize],
    mate: &[usize],
    parent: &mut [usize],
    in_blossom: &mut [bool],
    mut v: usize,
    cur_base: usize,
    mut child: usize,
) {
    while base[v] != cur_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

fn alternate(mate: &mut [usize], parent: &[usize], mut w: usize) {
    while w != NONE {
        let prev = parent[w];
        let next = mate[prev];
        mate[w] = prev;
        mate[prev] = w;
        w = next;
    }
}

/// Perfect matching as sorted `(u, v)` pairs with `u < v`, or `None`.
pub fn perfect_matching(g: &SimpleGraph) -> Option<Vec<(usize, usize)>> {
    let mate = maximum_matching(g);
    let mut pairs = Vec::with_capacity(g.n() / 2);
    for (v, &w) in mate.iter().enumerate() {
        if w == NONE {
            return None;
        }
        if v < w {
            pairs.push((v, w));
        }
    }
    Some(pairs)
}

/// Kuhn augmenting-path matching on an explicit bipartite adjacency
/// (`adj[l]` lists right-side indices). Returns `mate_left`.
pub(crate) fn kuhn_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut mate_left = vec![NONE; left];
    let mut mate_right = vec![NONE; right];
    let mut visited = vec![false; right];
    for l in 0..left {
        visited.iter_mut().for_each(|x| *x = false);
        kuhn_try(l, adj, &mut mate_left, &mut mate_right, &mut visited);
    }
    mate_left
}

fn kuhn_try(
    l: usize,
    adj: &[Vec<usize>],
    mate_left: &mut [usize],
    mate_right: &mut [usize],
    visited: &mut [bool],
) -> bool {
    for &r in &adj[l] {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        if mate_right[r] == NONE || kuhn_try(mate_right[r], adj, mate_left, mate_right, visited) {
            mate_left[l] = r;
            mate_right[r] = l;
            return true;
        }
    }
    false
}

/// Perfect matching of a d-regular bipartite graph (`left` gives one side).
/// Such a matching always exists; failure to validate the shape is an input
/// error. Returns pairs `(left vertex, right vertex)` sorted by left vertex.
pub fn bipartite_regular_matching(
    g: &SimpleGraph,
    left: &BTreeSet<usize>,
) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if left.iter().any(|&v| v >= n) {
        return Err(Error::input("side vertex out of range"));
    }
    let is_left: Vec<bool> = (0..n).map(|v| left.contains(&v)).collect();
    for &(a, b) in g.edges() {
        if is_left[a] == is_left[b] {
            return Err(Error::input(format!(
                "edge ({a}, {b}) does not cross the given bipartition"
            )));
        }
    }
    let degrees: BTreeSet<usize> = (0..n).map(|v| g.degree(v)).collect();
    if degrees.len() != 1 || degrees.contains(&0) {
        return Err(Error::input("graph is not d-regular with d >= 1"));
    }
    let lefts: Vec<usize> = left.iter().copied().collect();
    let rights: Vec<usize> = (0..n).filter(|v| !is_left[*v]).collect();
    if lefts.len() != rights.len() {
        return Err(Error::input("sides have different cardinalities"));
    }
    let right_index: BTreeMap<usize, usize> =
        rights.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = lefts
        .iter()
        .map(|&l| g.adj(l).iter().map(|w| right_index[w]).collect())
        .collect();
    let mate_left = kuhn_matching(lefts.len(), rights.len(), &adj);
    let mut pairs = Vec::with_capacity(lefts.len());
    for (i, &l) in lefts.iter().enumerate() {
        if mate_left[i] == NONE {
            return Err(Error::invariant(
                "regular bipartite graph without a perfect matching",
            ));
        }
        pairs.push((l, rights[mate_left[i]]));
    }
    Ok(pairs)
}

/// Degree gadget for the constant degree bound 2. Every vertex `v` becomes
/// `d(v)` outer ports (one per edge end) plus `d(v) - 2` inner vertices
/// joined completely to the ports; every original edge becomes one gadget
/// edge between its two ports (a loop uses two ports of its own vertex).
/// The gadget has a perfect matching iff the original graph has a 2-factor.
#[derive(Debug, Clone)]
pub struct GadgetMap {
    pub gadget: SimpleGraph,
    /// Per original edge id, the gadget edge that represents it.
    pub image: Vec<(usize, usize)>,
}

pub fn tutte_gadget(g: &Multigraph) -> Result<GadgetMap> {
    let n = g.n();
    for v in 0..n {
        if g.degree(v) < 2 {
            return Err(Error::precondition(format!(
                "vertex {v} has degree {} < 2",
                g.degree(v)
            )));
        }
    }
    // Vertex v owns the contiguous block [offset[v], offset[v+1]):
    // first d(v) ports, then d(v) - 2 inner vertices.
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + 2 * g.degree(v) - 2;
    }
    let total = offset[n];

    let mut port_cursor = vec![0usize; n];
    let mut take_port = |v: VertexId| {
        let p = offset[v] + port_cursor[v];
        port_cursor[v] += 1;
        debug_assert!(port_cursor[v] <= g.degree(v));
        p
    };
    let mut image = Vec::with_capacity(g.m());
    let mut gadget_edges = Vec::new();
    for e in g.edges() {
        let pu = take_port(e.u);
        let pv = take_port(e.v);
        gadget_edges.push((pu, pv));
        image.push((pu, pv));
    }
    for (v, &off) in offset.iter().enumerate().take(n) {
        let d = g.degree(v);
        for inner in 0..d.saturating_sub(2) {
            let iv = off + d + inner;
            for port in 0..d {
                gadget_edges.push((iv, off + port));
            }
        }
    }
    let gadget = SimpleGraph::new(total, &gadget_edges)?;
    debug_assert_eq!(
        gadget.edges().len(),
        g.m() + (0..n).map(|v| g.degree(v) * (g.degree(v) - 2)).sum::<usize>()
    );
    Ok(GadgetMap { gadget, image })
}

/// Original edge ids whose gadget image is matched. `m` must be a perfect
/// matching of `map.gadget`.
pub fn lift_matching(map: &GadgetMap, m: &[(usize, usize)]) -> Result<BTreeSet<EdgeId>> {
    let n = map.gadget.n();
    let mut covered = vec![false; n];
    let mut matched = BTreeSet::new();
    for &(a, b) in m {
        if a >= n || b >= n || a == b {
            return Err(Error::input(format!("pair ({a}, {b}) is not a gadget edge")));
        }
        if !map.gadget.has_edge(a, b) {
            return Err(Error::input(format!("pair ({a}, {b}) is not a gadget edge")));
        }
        if covered[a] || covered[b] {
            return Err(Error::input("pairs are not a matching"));
        }
        covered[a] = true;
        covered[b] = true;
        matched.insert((a.min(b), a.max(b)));
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::input("matching is not perfect"));
    }
    Ok(map
        .image
        .iter()
        .enumerate()
        .filter(|&(_, &(a, b))| matched.contains(&(a.min(b), a.max(b))))
        .map(|(id, _)| id)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).unwrap()
    }

    fn petersen() -> SimpleGraph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        edges.extend((0..5).map(|i| (i, i + 5)));
        SimpleGraph::new(10, &edges).unwrap()
    }

    /// Exhaustive maximum matching by edge-subset recursion.
    fn brute_max_matching(g: &SimpleGraph) -> usize {
        fn go(edges: &[(usize, usize)], used: &mut Vec<bool>, i: usize) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(edges, used, i + 1);
            let (a, b) = edges[i];
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                let take = 1 + go(edges, used, i + 1);
                used[a] = false;
                used[b] = false;
                skip.max(take)
            } else {
                skip
            }
        }
        go(g.edges(), &mut vec![false; g.n()], 0)
    }

    #[test]
    fn rejects_loops_and_parallels() {
        assert!(SimpleGraph::new(2, &[(0, 0)]).is_err());
        assert!(SimpleGraph::new(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn odd_cliques_have_no_perfect_matching() {
        assert!(perfect_matching(&complete(3)).is_none());
        assert!(perfect_matching(&complete(5)).is_none());
        assert_eq!(perfect_matching(&complete(4)).unwrap().len(), 2);
        assert_eq!(perfect_matching(&complete(6)).unwrap().len(), 3);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let pm = perfect_matching(&petersen()).unwrap();
        assert_eq!(pm.len(), 5);
    }

    #[test]
    fn blossom_is_needed_for_odd_cycles() {
        // Two triangles joined by a path; a bipartite-style search without
        // contraction misses the augmenting path through the odd cycles.
        let g = SimpleGraph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert_eq!(perfect_matching(&g).unwrap().len(), 4);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::new(n, &edges).unwrap();
            let mate = maximum_matching(&g);
            let size = mate.iter().filter(|&&m| m != NONE).count() / 2;
            assert_eq!(size, brute_max_matching(&g));
        }
    }

    #[test]
    fn regular_bipartite_always_matches() {
        // K_{3,3}.
        let mut edges = Vec::new();
        for l in 0..3 {
            for r in 3..6 {
                edges.push((l, r));
            }
        }
        let g = SimpleGraph::new(6, &edges).unwrap();
        let left: BTreeSet<usize> = [0, 1, 2].into();
        let pm = bipartite_regular_matching(&g, &left).unwrap();
        assert_eq!(pm.len(), 3);
        // C_4 with alternating sides.
        let c4 = SimpleGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let left: BTreeSet<usize> = [0, 2].into();
        assert_eq!(bipartite_regular_matching(&c4, &left).unwrap().len(), 2);
    }

    #[test]
    fn irregular_or_non_crossing_input_is_rejected() {
        let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(bipartite_regular_matching(&path, &[0, 2].into()).is_err());
        let triangle = complete(3);
        assert!(bipartite_regular_matching(&triangle, &[0].into()).is_err());
    }

    #[test]
    fn gadget_sizes_match_degree_sums() {
        let g = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let map = tutte_gadget(&g).unwrap();
        let dv: usize = (0..4).map(|v| 2 * g.degree(v) - 2).sum();
        let de: usize = g.m() + (0..4).map(|v| g.degree(v) * (g.degree(v) - 2)).sum::<usize>();
        assert_eq!(map.gadget.n(), dv);
        assert_eq!(map.gadget.edges().len(), de);
    }

    #[test]
    fn gadget_requires_min_degree_two() {
        let g = Multigraph::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(tutte_gadget(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn cycle_lifts_to_itself() {
        let g = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let map = tutte_gadget(&g).unwrap();
        let pm = perfect_matching(&map.gadget).unwrap();
        let lifted = lift_matching(&map, &pm).unwrap();
        assert_eq!(lifted, (0..4).collect());
    }

    #[test]
    fn lone_loop_lifts_to_itself() {
        let g = Multigraph::new(1, &[(0, 0)]).unwrap();
        let map = tutte_gadget(&g).unwrap();
        let pm = perfect_matching(&map.gadget).unwrap();
        let lifted = lift_matching(&map, &pm).unwrap();
        assert_eq!(lifted, [0].into());
    }

    #[test]
    fn lift_rejects_non_matchings() {
        let g = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let map = tutte_gadget(&g).unwrap();
        assert!(lift_matching(&map, &[]).is_err());
        assert!(lift_matching(&map, &[(0, 0)]).is_err());
    }
}
