//! Alternating chains on red/blue-colored multigraphs: vertex
//! classification by reachability, the unique-entering-edge property of
//! BR-components, and the closed alternating chain through two added
//! edges.
//!
//! An alternating chain is a walk that never repeats an *edge* and whose
//! edge colors alternate. Repeated vertices are allowed, so reachability
//! is not a vertex-BFS problem, and a BFS over (edge, direction, color)
//! states is wrong too — it forgets which edges the walk already spent.
//! Existence of a trail is decided exactly by a perfect-matching gadget
//! over edge halves: a trail pairs, at every vertex it passes, an arrival
//! half with a departure half of the other color; unused edges pair their
//! own two halves.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factor::{self, TwoFactor};
use crate::matching::{maximum_matching, SimpleGraph};
use crate::multigraph::{AddCandidate, EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Red => "red",
        })
    }
}

/// A total red/blue coloring of a graph's edges, indexed by edge id.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(g: &Multigraph, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != g.m() {
            return Err(Error::input(format!(
                "coloring has {} entries for {} edges",
                colors.len(),
                g.m()
            )));
        }
        Ok(Coloring { colors })
    }

    /// Color the edges of a 2-factor red and everything else blue.
    pub fn red_factor(g: &Multigraph, f: &TwoFactor) -> Result<Self> {
        if let Some(&e) = f.edges.iter().find(|&&e| e >= g.m()) {
            return Err(Error::input(format!("factor edge {e} outside the graph")));
        }
        let colors = (0..g.m())
            .map(|e| if f.contains(e) { Color::Red } else { Color::Blue })
            .collect();
        Ok(Coloring { colors })
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Reachability class of a vertex for alternating chains from the root
/// that start blue: reachable ending blue and red, only blue, only red, or
/// not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    BR,
    B,
    R,
    Unreachable,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::BR => "BR",
            Label::B => "B",
            Label::R => "R",
            Label::Unreachable => "unreachable",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ChainLabeling {
    pub root: VertexId,
    /// Reachable by a chain ending with a blue edge.
    pub ending_blue: Vec<bool>,
    /// Reachable by a chain ending with a red edge. The root always
    /// qualifies: a single vertex counts as a chain.
    pub ending_red: Vec<bool>,
}

impl ChainLabeling {
    pub fn label(&self, v: VertexId) -> Label {
        match (self.ending_blue[v], self.ending_red[v]) {
            (true, true) => Label::BR,
            (true, false) => Label::B,
            (false, true) => Label::R,
            (false, false) => Label::Unreachable,
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.ending_blue.len()).map(|v| self.label(v)).collect()
    }
}

/// Gadget node for the half of edge `e` at its `u` (side 0) or `v`
/// (side 1) endpoint; a loop owns both halves at its vertex.
fn half_node(g: &Multigraph, e: EdgeId, at: VertexId, side_hint: usize) -> usize {
    let edge = g.edge(e);
    if edge.is_loop() {
        2 * e + side_hint
    } else if edge.u == at {
        2 * e
    } else {
        2 * e + 1
    }
}

/// All half nodes located at `v`, with their edge ids.
fn halves_at(g: &Multigraph, v: VertexId) -> Vec<(usize, EdgeId)> {
    let mut out = Vec::new();
    for &(w, e) in g.adj(v) {
        if w == v {
            out.push((2 * e, e));
            out.push((2 * e + 1, e));
        } else {
            out.push((half_node(g, e, v, 0), e));
        }
    }
    out
}

/// Decide whether an alternating chain from `p`, starting blue, exists
/// that ends by occupying one of the given half nodes. Builds the
/// half-pairing gadget and asks for a perfect matching: matched start/end
/// nodes take the free halves, transitions pair opposite colors at a
/// vertex, and unused edges match internally.
fn alternating_trail_exists(
    g: &Multigraph,
    c: &Coloring,
    p: VertexId,
    tau_nodes: &[usize],
) -> bool {
    if tau_nodes.is_empty() {
        return false;
    }
    let m = g.m();
    let (sigma, tau) = (2 * m, 2 * m + 1);
    let mut edges: BTreeSet<(usize, usize)> = (0..m).map(|e| (2 * e, 2 * e + 1)).collect();
    for v in 0..g.n() {
        let halves = halves_at(g, v);
        for (i, &(hi, ei)) in halves.iter().enumerate() {
            for &(hj, ej) in &halves[i + 1..] {
                if ei != ej && c.color(ei) != c.color(ej) {
                    edges.insert((hi.min(hj), hi.max(hj)));
                }
            }
        }
    }
    let mut has_start = false;
    for (h, e) in halves_at(g, p) {
        if c.color(e) == Color::Blue {
            edges.insert((h, sigma));
            has_start = true;
        }
    }
    if !has_start {
        return false;
    }
    for &h in tau_nodes {
        edges.insert((h.min(tau), h.max(tau)));
    }
    let pairs: Vec<(usize, usize)> = edges.into_iter().collect();
    let gadget = SimpleGraph::new(2 * m + 2, &pairs).expect("gadget is simple by construction");
    let mates = maximum_matching(&gadget);
    mates.iter().all(|&x| x != usize::MAX)
}

/// Classify every vertex by the colors with which alternating chains from
/// `p` (starting blue) can end there.
pub fn classify(g: &Multigraph, c: &Coloring, p: VertexId) -> Result<ChainLabeling> {
    if p >= g.n() {
        return Err(Error::input(format!("root {p} outside 0..{}", g.n())));
    }
    if c.len() != g.m() {
        return Err(Error::input("coloring does not match the graph"));
    }
    let n = g.n();
    let mut ending_blue = vec![false; n];
    let mut ending_red = vec![false; n];
    for t in 0..n {
        for color in [Color::Blue, Color::Red] {
            let tau: Vec<usize> = halves_at(g, t)
                .into_iter()
                .filter(|&(_, e)| c.color(e) == color)
                .map(|(h, _)| h)
                .collect();
            let hit = alternating_trail_exists(g, c, p, &tau);
            match color {
                Color::Blue => ending_blue[t] = hit,
                Color::Red => ending_red[t] = hit,
            }
        }
    }
    ending_red[p] = true;
    Ok(ChainLabeling { root: p, ending_blue, ending_red })
}

/// One BR-component (not containing the root) and the edges through which
/// chains from the root actually enter it.
#[derive(Debug, Clone)]
pub struct ComponentEntry {
    pub component: Vec<VertexId>,
    /// Crossing edges that terminate some alternating chain from the root
    /// into the component; exactly one is expected.
    pub entering: Vec<EdgeId>,
    /// The entering edges have the stated form: blue from an R-vertex or
    /// red from a B-vertex.
    pub well_formed: bool,
}

#[derive(Debug, Clone)]
pub struct EnteringReport {
    pub components: Vec<ComponentEntry>,
}

impl EnteringReport {
    /// Every BR-component away from the root has exactly one entering
    /// edge of the required form. A failure indicates a classifier bug.
    pub fn ok(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.entering.len() == 1 && c.well_formed)
    }
}

/// Verify the unique-entering-edge property on every BR-component not
/// containing the root.
pub fn verify_entering_edges(
    g: &Multigraph,
    c: &Coloring,
    labeling: &ChainLabeling,
) -> EnteringReport {
    assert_eq!(labeling.ending_blue.len(), g.n(), "labeling/graph mismatch");
    assert_eq!(c.len(), g.m(), "coloring/graph mismatch");
    let keep: Vec<bool> = (0..g.n()).map(|v| labeling.label(v) == Label::BR).collect();
    let mut components = Vec::new();
    for comp in g.components_within(&keep) {
        if comp.contains(&labeling.root) {
            continue;
        }
        let inside: BTreeSet<VertexId> = comp.iter().copied().collect();
        let mut entering = Vec::new();
        let mut well_formed = true;
        for e in g.edges() {
            let (iu, iv) = (inside.contains(&e.u), inside.contains(&e.v));
            if iu == iv {
                continue;
            }
            let (inner, outer) = if iu { (e.u, e.v) } else { (e.v, e.u) };
            let tau = [half_node(g, e.id, inner, 0)];
            if alternating_trail_exists(g, c, labeling.root, &tau) {
                entering.push(e.id);
                let fits = match c.color(e.id) {
                    Color::Blue => labeling.label(outer) == Label::R,
                    Color::Red => labeling.label(outer) == Label::B,
                };
                well_formed &= fits;
            }
        }
        components.push(ComponentEntry { component: comp, entering, well_formed });
    }
    EnteringReport { components }
}

/// A closed alternating chain: `vertices[i]` —`edges[i]`→ `vertices[i+1]`,
/// first and last vertex equal, colors alternating around the seam.
#[derive(Debug, Clone)]
pub struct ClosedChain {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl std::fmt::Display for ClosedChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ids: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        f.write_str(&ids.join(" "))
    }
}

/// Build the closed alternating chain through two edges added to a
/// 2-factor-free graph, given a 2-factor of each single extension. Red
/// edges are those of the first factor only, blue those of the second
/// only; the chain starts along the first added edge and is extended
/// greedily (lowest edge id first) until it stalls, which can only happen
/// back at the start.
pub fn closed_chain(
    g: &Multigraph,
    e1: AddCandidate,
    f1: &TwoFactor,
    e2: AddCandidate,
    f2: &TwoFactor,
) -> Result<ClosedChain> {
    if e1 == e2 {
        return Err(Error::input("the two added edges must be distinct"));
    }
    if factor::find_two_factor(g).is_some() {
        return Err(Error::input("graph already has a 2-factor"));
    }
    let g1 = e1.apply(g)?;
    let g2 = e2.apply(g)?;
    if !factor::is_two_factor(&g1, &f1.edges) {
        return Err(Error::input(
            "first factor is not a 2-factor of the first extension",
        ));
    }
    if !factor::is_two_factor(&g2, &f2.edges) {
        return Err(Error::input(
            "second factor is not a 2-factor of the second extension",
        ));
    }
    let m = g.m();
    let (a2, b2) = e2.endpoints();
    let h = g1.with_edge(a2, b2)?;
    // In the union graph the first added edge keeps id m and the second
    // becomes m + 1.
    let f2_ids: BTreeSet<EdgeId> = f2
        .edges
        .iter()
        .map(|&e| if e == m { m + 1 } else { e })
        .collect();
    let red: BTreeSet<EdgeId> = f1.edges.difference(&f2_ids).copied().collect();
    let blue: BTreeSet<EdgeId> = f2_ids.difference(&f1.edges).copied().collect();
    debug_assert!(red.contains(&m), "first added edge must be in its factor");

    let (xu, xv) = e1.endpoints();
    let x = xu.min(xv);
    let mut used = vec![false; h.m()];
    used[m] = true;
    let mut cur = h.edge(m).other(x);
    let mut edges = vec![m];
    let mut vertices = vec![x, cur];
    let mut last = Color::Red;
    loop {
        let want = last.opposite();
        let palette = if want == Color::Red { &red } else { &blue };
        let next = h
            .adj(cur)
            .iter()
            .map(|&(_, e)| e)
            .filter(|&e| !used[e] && palette.contains(&e))
            .min();
        let Some(e) = next else { break };
        used[e] = true;
        cur = h.edge(e).other(cur);
        edges.push(e);
        vertices.push(cur);
        last = want;
    }
    if cur != x {
        return Err(Error::invariant("alternating walk stalled away from its start"));
    }
    if last != Color::Blue {
        return Err(Error::invariant("alternating walk closed on the wrong color"));
    }
    if !edges.contains(&(m + 1)) {
        return Err(Error::invariant("closed chain misses the second added edge"));
    }
    Ok(ClosedChain { edges, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximal;
    use std::collections::HashSet;

    fn coloring(g: &Multigraph, reds: &[EdgeId]) -> Coloring {
        let set: BTreeSet<EdgeId> = reds.iter().copied().collect();
        let colors = (0..g.m())
            .map(|e| if set.contains(&e) { Color::Red } else { Color::Blue })
            .collect();
        Coloring::new(g, colors).unwrap()
    }

    /// Enumerate every alternating edge-simple walk from `p` starting
    /// blue; exponential reference for small graphs.
    fn brute_reach(g: &Multigraph, c: &Coloring, p: VertexId) -> (Vec<bool>, Vec<bool>) {
        assert!(g.m() <= 12);
        let mut blue_end = vec![false; g.n()];
        let mut red_end = vec![false; g.n()];
        red_end[p] = true;
        let mut seen: HashSet<(VertexId, Color, u32)> = HashSet::new();
        let mut stack: Vec<(VertexId, Color, u32)> = Vec::new();
        for &(w, e) in g.adj(p) {
            let _ = w;
            if c.color(e) == Color::Blue {
                let v = g.edge(e).other(p);
                blue_end[v] = true;
                stack.push((v, Color::Blue, 1 << e));
            }
        }
        while let Some(state) = stack.pop() {
            if !seen.insert(state) {
                continue;
            }
            let (cur, last, mask) = state;
            for &(_, e) in g.adj(cur) {
                if mask >> e & 1 == 1 || c.color(e) == last {
                    continue;
                }
                let v = g.edge(e).other(cur);
                match c.color(e) {
                    Color::Blue => blue_end[v] = true,
                    Color::Red => red_end[v] = true,
                }
                stack.push((v, c.color(e), mask | 1 << e));
            }
        }
        (blue_end, red_end)
    }

    #[test]
    fn two_edge_path_labels() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let c = coloring(&g, &[1]);
        let l = classify(&g, &c, 0).unwrap();
        assert_eq!(l.labels(), vec![Label::R, Label::B, Label::R]);
    }

    #[test]
    fn isolated_root_is_r_everything_else_unreachable() {
        let g = Multigraph::new(3, &[(1, 2)]).unwrap();
        let c = coloring(&g, &[]);
        let l = classify(&g, &c, 0).unwrap();
        assert_eq!(l.label(0), Label::R);
        assert_eq!(l.label(1), Label::Unreachable);
        assert_eq!(l.label(2), Label::Unreachable);
    }

    #[test]
    fn edge_reuse_is_forbidden() {
        // 0–1 blue, 1–2 red, 2–3 blue, 3–4 red, 4–2 blue. Every trail to
        // vertex 1 ends with the blue 0–1 edge: reaching it red would
        // need the 1–2 edge twice (out along the cycle and back), which a
        // state-level BFS without edge memory would wrongly allow.
        let g = Multigraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]).unwrap();
        let c = coloring(&g, &[1, 3]);
        let l = classify(&g, &c, 0).unwrap();
        assert_eq!(
            l.labels(),
            vec![Label::R, Label::B, Label::BR, Label::BR, Label::BR]
        );
    }

    #[test]
    fn star_with_loops_labels_and_entering_edges() {
        // Star center 3 with leaf loops, plus a loop at the center; red =
        // the loops (a 2-factor), blue = the star edges.
        let g = Multigraph::new(
            4,
            &[(0, 3), (1, 3), (2, 3), (0, 0), (1, 1), (2, 2), (3, 3)],
        )
        .unwrap();
        let c = coloring(&g, &[3, 4, 5, 6]);
        let l = classify(&g, &c, 3).unwrap();
        assert_eq!(
            l.labels(),
            vec![Label::BR, Label::BR, Label::BR, Label::R]
        );
        let report = verify_entering_edges(&g, &c, &l);
        assert!(report.ok());
        assert_eq!(report.components.len(), 3);
        let entering: Vec<Vec<EdgeId>> = report
            .components
            .iter()
            .map(|c| c.entering.clone())
            .collect();
        assert_eq!(entering, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn no_br_vertices_gives_empty_report() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let c = coloring(&g, &[1]);
        let l = classify(&g, &c, 0).unwrap();
        let report = verify_entering_edges(&g, &c, &l);
        assert!(report.ok());
        assert!(report.components.is_empty());
    }

    #[test]
    fn classify_matches_walk_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..120 {
            let n = rng.gen_range(2..=5);
            let mut pairs = Vec::new();
            for u in 0..n {
                if rng.gen_bool(0.3) {
                    pairs.push((u, u));
                }
                for v in (u + 1)..n {
                    for _ in 0..2 {
                        if rng.gen_bool(0.3) {
                            pairs.push((u, v));
                        }
                    }
                }
            }
            pairs.truncate(9);
            let g = Multigraph::new(n, &pairs).unwrap();
            let colors: Vec<Color> = (0..g.m())
                .map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue })
                .collect();
            let c = Coloring::new(&g, colors).unwrap();
            for p in 0..n {
                let l = classify(&g, &c, p).unwrap();
                let (blue, red) = brute_reach(&g, &c, p);
                assert_eq!(l.ending_blue, blue, "blue reach, graph {g:?}");
                assert_eq!(l.ending_red, red, "red reach, graph {g:?}");
            }
        }
    }

    #[test]
    fn entering_edges_hold_on_random_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        // Complete graph on 4 vertices plus random small multigraphs.
        for round in 0..60 {
            let g = if round % 2 == 0 {
                Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
            } else {
                let n = rng.gen_range(3..=5);
                let mut pairs = Vec::new();
                for u in 0..n {
                    if rng.gen_bool(0.4) {
                        pairs.push((u, u));
                    }
                    for v in (u + 1)..n {
                        if rng.gen_bool(0.5) {
                            pairs.push((u, v));
                        }
                    }
                }
                Multigraph::new(n, &pairs).unwrap()
            };
            let colors: Vec<Color> = (0..g.m())
                .map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue })
                .collect();
            let c = Coloring::new(&g, colors).unwrap();
            let p = rng.gen_range(0..g.n());
            let l = classify(&g, &c, p).unwrap();
            let report = verify_entering_edges(&g, &c, &l);
            assert!(report.ok(), "graph {g:?} root {p}");
        }
    }

    #[test]
    fn closed_chain_through_center_loop_and_parallel_edge() {
        let g = Multigraph::new(4, &[(0, 3), (1, 3), (2, 3), (0, 0), (1, 1), (2, 2)]).unwrap();
        let e1 = AddCandidate::Loop(3);
        let f1 = TwoFactor { edges: [3, 4, 5, 6].into() };
        let e2 = AddCandidate::Pair(0, 3);
        let f2 = TwoFactor { edges: [0, 6, 4, 5].into() };
        let chain = closed_chain(&g, e1, &f1, e2, &f2).unwrap();
        assert_eq!(chain.edges, vec![6, 0, 3, 7]);
        assert_eq!(chain.vertices, vec![3, 3, 0, 0, 3]);
    }

    #[test]
    fn closed_chain_rejects_equal_additions() {
        let g = Multigraph::new(4, &[(0, 3), (1, 3), (2, 3), (0, 0), (1, 1), (2, 2)]).unwrap();
        let f = TwoFactor { edges: [3, 4, 5, 6].into() };
        let err = closed_chain(&g, AddCandidate::Loop(3), &f, AddCandidate::Loop(3), &f);
        assert!(err.is_err());
    }

    fn random_maximal(rng: &mut impl rand::Rng, n: usize) -> Option<Multigraph> {
        let mut pairs = Vec::new();
        for u in 0..n {
            if rng.gen_bool(0.25) {
                pairs.push((u, u));
            }
            for v in (u + 1)..n {
                if rng.gen_bool(0.25) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Multigraph::new(n, &pairs).unwrap();
        maximal::maximal_completion(&g).ok()
    }

    #[test]
    fn closed_chain_on_random_maximal_graphs_is_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(2..=5);
            let Some(g) = random_maximal(&mut rng, n) else { continue };
            let cands = g.add_candidates();
            if cands.len() < 2 {
                continue;
            }
            let i = rng.gen_range(0..cands.len());
            let mut j = rng.gen_range(0..cands.len());
            while j == i {
                j = rng.gen_range(0..cands.len());
            }
            let (e1, e2) = (cands[i], cands[j]);
            let f1 = factor::find_two_factor(&e1.apply(&g).unwrap()).expect("maximal");
            let f2 = factor::find_two_factor(&e2.apply(&g).unwrap()).expect("maximal");
            let chain = closed_chain(&g, e1, &f1, e2, &f2).unwrap();
            // Closed, distinct edges, alternating including the seam.
            assert_eq!(chain.vertices.first(), chain.vertices.last());
            assert_eq!(chain.edges.len() % 2, 0);
            let distinct: BTreeSet<EdgeId> = chain.edges.iter().copied().collect();
            assert_eq!(distinct.len(), chain.edges.len());
            assert!(chain.edges.contains(&g.m()));
            assert!(chain.edges.contains(&(g.m() + 1)));
            done += 1;
        }
    }

    #[test]
    fn factor_coloring_labels_by_vertex_class() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let mut done = 0;
        while done < 20 {
            let n = rng.gen_range(2..=5);
            let Some(g) = random_maximal(&mut rng, n) else { continue };
            let d = maximal::decompose(&g);
            assert!(!d.a.is_empty(), "maximal graphs keep a loopless vertex");
            let p = *d.a.iter().next().unwrap();
            let h = g.with_edge(p, p).unwrap();
            let f1 = factor::find_two_factor(&h).expect("maximal");
            let c = Coloring::red_factor(&h, &f1).unwrap();
            let l = classify(&h, &c, p).unwrap();
            for &v in &d.a {
                assert_eq!(l.label(v), Label::R, "A-vertex {v} in {g:?}");
            }
            for &v in &d.b {
                assert_eq!(l.label(v), Label::B, "B-vertex {v} in {g:?}");
            }
            for &v in &d.c {
                assert_eq!(l.label(v), Label::BR, "C-vertex {v} in {g:?}");
            }
            done += 1;
        }
    }

    #[test]
    fn double_edge_neighborhoods_are_closed() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        let mut done = 0;
        while done < 30 {
            let n = rng.gen_range(3..=5);
            let Some(g) = random_maximal(&mut rng, n) else { continue };
            done += 1;
            // If ab and bc are double edges and some b–d slot is not full,
            // then ac must be a double edge.
            for b in 0..n {
                let open_slot = (0..n).any(|d| d != b && g.pair_multiplicity(b, d) <= 1);
                if !open_slot {
                    continue;
                }
                for a in 0..n {
                    for c in 0..n {
                        if a == b || c == b || a == c {
                            continue;
                        }
                        if g.pair_multiplicity(a, b) == 2 && g.pair_multiplicity(b, c) == 2 {
                            assert_eq!(g.pair_multiplicity(a, c), 2, "graph {g:?}");
                        }
                    }
                }
            }
        }
    }
}
