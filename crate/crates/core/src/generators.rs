//! Constructors for the extremal families and for test corpora: blobs
//! (near-regular bridge ends), Sylvester graphs, primitive (2k+1)-regular
//! graphs built from a bipartite core, maximal 2-factor-free graphs built
//! from a validated decomposition, plus seeded random and exhaustive M₂
//! suppliers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maximal::{check_condition_41, BipartiteProfile};
use crate::multigraph::{Multigraph, VertexId};

/// A connected graph with every vertex of degree 2k+1 except one
/// distinguished `port` of degree 2k, ready to hang off a bridge.
#[derive(Debug, Clone)]
pub struct BlobSpec {
    pub k: usize,
    pub graph: Multigraph,
    pub port: VertexId,
}

impl BlobSpec {
    /// Check the defining degree and connectivity conditions.
    pub fn validate(&self) -> bool {
        let g = &self.graph;
        self.port < g.n()
            && g.degree(self.port) == 2 * self.k
            && (0..g.n()).all(|v| v == self.port || g.degree(v) == 2 * self.k + 1)
            && g.components().len() == 1
    }
}

/// Smallest blob shape: complete graph on 2k+2 vertices minus a perfect
/// matching on the first 2k of them, plus a port joined to those 2k
/// vertices. 2k+3 vertices total; for k = 1 this is K₄ with one edge
/// subdivided.
pub fn blob(k: usize) -> Result<BlobSpec> {
    if k < 1 {
        return Err(Error::input("blob shape needs k >= 1"));
    }
    let core = 2 * k + 2;
    let port = core;
    let mut pairs = Vec::new();
    for u in 0..core {
        for v in (u + 1)..core {
            let matched = u % 2 == 0 && v == u + 1 && v < 2 * k;
            if !matched {
                pairs.push((u, v));
            }
        }
    }
    for u in 0..2 * k {
        pairs.push((u, port));
    }
    let graph = Multigraph::new(core + 1, &pairs)?;
    let spec = BlobSpec { k, graph, port };
    debug_assert!(spec.validate());
    Ok(spec)
}

/// Hub vertex 0 joined by one bridge to each of 2k+1 disjoint blobs at
/// their ports: (2k+1)-regular, 2k+1 leaves, no 2-factor.
pub fn sylvester_graph(k: usize) -> Result<Multigraph> {
    let blob = blob(k)?;
    let bn = blob.graph.n();
    let mut pairs = Vec::new();
    for copy in 0..(2 * k + 1) {
        let off = 1 + copy * bn;
        for e in blob.graph.edges() {
            pairs.push((off + e.u, off + e.v));
        }
        pairs.push((0, off + blob.port));
    }
    Multigraph::new(1 + (2 * k + 1) * bn, &pairs)
}

/// The bipartite core of a primitive graph: side sizes with
/// |A| = |B| + 1, and A–B edge multiplicities (1 or 2).
#[derive(Debug, Clone)]
pub struct BipartiteSpec {
    pub a_size: usize,
    pub b_size: usize,
    /// (A index, B index, multiplicity), one entry per joined pair.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Optional surgery preserving regularity: replace one A–B edge by a
/// complete graph minus an edge, or (k = 1 only) replace a B-vertex by a
/// triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    Edge { a: usize, b: usize },
    Vertex { b: usize },
}

/// Build a (2k+1)-regular primitive graph: the bipartite core, the
/// requested expansions, and 2k+1 blobs attached to A to fill the missing
/// degrees.
pub fn primitive_graph(
    k: usize,
    spec: &BipartiteSpec,
    expansions: &[Expansion],
) -> Result<Multigraph> {
    if k < 1 {
        return Err(Error::input("primitive construction needs k >= 1"));
    }
    if spec.a_size != spec.b_size + 1 {
        return Err(Error::input(format!(
            "side sizes must satisfy |A| = |B| + 1, got {} and {}",
            spec.a_size, spec.b_size
        )));
    }
    let degree = 2 * k + 1;
    let mut mult = vec![vec![0usize; spec.b_size]; spec.a_size];
    for &(a, b, m) in &spec.edges {
        if a >= spec.a_size || b >= spec.b_size {
            return Err(Error::input(format!("edge ({a}, {b}) out of range")));
        }
        if !(1..=2).contains(&m) {
            return Err(Error::input(format!(
                "multiplicity {m} of edge ({a}, {b}) must be 1 or 2"
            )));
        }
        if mult[a][b] != 0 {
            return Err(Error::input(format!("duplicate edge entry ({a}, {b})")));
        }
        mult[a][b] = m;
    }
    for b in 0..spec.b_size {
        let d: usize = mult.iter().map(|row| row[b]).sum();
        if d != degree {
            return Err(Error::input(format!(
                "B-vertex {b} has degree {d}, needs {degree}"
            )));
        }
    }
    for (a, row) in mult.iter().enumerate() {
        let d: usize = row.iter().sum();
        if d > degree {
            return Err(Error::input(format!(
                "A-vertex {a} has degree {d}, exceeding {degree}"
            )));
        }
    }

    let mut expanded_vertex = vec![false; spec.b_size];
    let mut consumed = vec![vec![0usize; spec.b_size]; spec.a_size];
    for x in expansions {
        match *x {
            Expansion::Vertex { b } => {
                if k != 1 {
                    return Err(Error::input("vertex expansion is a k = 1 construction"));
                }
                if b >= spec.b_size {
                    return Err(Error::input(format!("vertex expansion index {b} out of range")));
                }
                if expanded_vertex[b] {
                    return Err(Error::input(format!("B-vertex {b} expanded twice")));
                }
                expanded_vertex[b] = true;
            }
            Expansion::Edge { a, b } => {
                if a >= spec.a_size || b >= spec.b_size {
                    return Err(Error::input(format!(
                        "edge expansion ({a}, {b}) out of range"
                    )));
                }
                consumed[a][b] += 1;
                if consumed[a][b] > mult[a][b] {
                    return Err(Error::input(format!(
                        "edge expansion ({a}, {b}) exceeds multiplicity {}",
                        mult[a][b]
                    )));
                }
            }
        }
    }
    for x in expansions {
        if let Expansion::Edge { b, .. } = *x {
            if expanded_vertex[b] {
                return Err(Error::input(format!(
                    "B-vertex {b} cannot have both edge and vertex expansions"
                )));
            }
        }
    }

    // Layout: A block, surviving B block, then auxiliary blocks (edge
    // expansions, triangles, blobs) in construction order.
    let mut b_id = vec![usize::MAX; spec.b_size];
    let mut next = spec.a_size;
    for b in 0..spec.b_size {
        if !expanded_vertex[b] {
            b_id[b] = next;
            next += 1;
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..spec.a_size {
        for b in 0..spec.b_size {
            if expanded_vertex[b] {
                continue;
            }
            for _ in 0..(mult[a][b] - consumed[a][b]) {
                pairs.push((a, b_id[b]));
            }
        }
    }
    for x in expansions {
        if let Expansion::Edge { a, b } = *x {
            // Complete graph on 2k+2 vertices minus its (0,1) edge,
            // endpoints rewired to a and b.
            let off = next;
            next += degree + 1;
            for u in 0..(degree + 1) {
                for v in (u + 1)..(degree + 1) {
                    if !(u == 0 && v == 1) {
                        pairs.push((off + u, off + v));
                    }
                }
            }
            pairs.push((a, off));
            pairs.push((b_id[b], off + 1));
        }
    }
    for x in expansions {
        if let Expansion::Vertex { b } = *x {
            let off = next;
            next += 3;
            pairs.push((off, off + 1));
            pairs.push((off, off + 2));
            pairs.push((off + 1, off + 2));
            let mut slot = 0;
            for (a, row) in mult.iter().enumerate() {
                for _ in 0..row[b] {
                    pairs.push((a, off + slot));
                    slot += 1;
                }
            }
            debug_assert_eq!(slot, 3);
        }
    }
    let blob = blob(k)?;
    for (a, row) in mult.iter().enumerate() {
        let have: usize = row.iter().sum();
        for _ in 0..(degree - have) {
            let off = next;
            next += blob.graph.n();
            for e in blob.graph.edges() {
                pairs.push((off + e.u, off + e.v));
            }
            pairs.push((a, off + blob.port));
        }
    }
    let g = Multigraph::new(next, &pairs)?;
    debug_assert!((0..g.n()).all(|v| g.degree(v) == degree));
    Ok(g)
}

/// One complete loop-component of a maximal graph: its size and the
/// A-vertices matched into it.
#[derive(Debug, Clone)]
pub struct ComponentSpec {
    pub size: usize,
    pub matched_to: Vec<usize>,
}

/// Build a maximal 2-factor-free graph from its decomposition data:
/// independent A, dominating loop vertices B, and complete components
/// matched into A. All structural conditions are validated up front, so
/// the output always passes the structural maximality check.
pub fn maximal_graph(
    a_size: usize,
    b_size: usize,
    components: &[ComponentSpec],
) -> Result<Multigraph> {
    let mut t = Vec::new();
    for (i, c) in components.iter().enumerate() {
        if c.size == 0 {
            return Err(Error::input(format!("component {i} is empty")));
        }
        let mut seen = vec![false; a_size];
        for &a in &c.matched_to {
            if a >= a_size {
                return Err(Error::input(format!(
                    "component {i} matched to A-vertex {a} outside 0..{a_size}"
                )));
            }
            if seen[a] {
                return Err(Error::input(format!(
                    "odd matchings condition: component {i} uses A-vertex {a} twice"
                )));
            }
            seen[a] = true;
        }
        if c.matched_to.len() % 2 == 0 {
            return Err(Error::input(format!(
                "odd matchings condition: component {i} has even matching size {}",
                c.matched_to.len()
            )));
        }
        if c.matched_to.len() > c.size {
            return Err(Error::input(format!(
                "component {i} of size {} cannot absorb {} matching edges",
                c.size,
                c.matched_to.len()
            )));
        }
        t.push(c.matched_to.len());
    }
    let e_ac: usize = t.iter().sum();
    if 2 * a_size as i64 + components.len() as i64 != 2 * b_size as i64 + e_ac as i64 + 2 {
        return Err(Error::input(format!(
            "counting identity fails: 2·{a_size} + {} != 2·{b_size} + {e_ac} + 2",
            components.len()
        )));
    }
    let h_edges: Vec<(usize, usize)> = components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.matched_to.iter().map(move |&a| (a, i)))
        .collect();
    let profile = BipartiteProfile::new((0..a_size).collect(), components.len(), &h_edges)?;
    if let Some(v) = check_condition_41(&profile)? {
        return Err(Error::input(format!(
            "subset condition fails: A' indices {:?} with components {:?} give {} < {}",
            v.a_prime, v.c_prime, v.lhs, v.rhs
        )));
    }

    let b_start = a_size;
    let c_start = a_size + b_size;
    let n = c_start + components.iter().map(|c| c.size).sum::<usize>();
    let mut pairs = Vec::new();
    for b in b_start..c_start {
        pairs.push((b, b));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if (b_start..c_start).contains(&u) || (b_start..c_start).contains(&v) {
                pairs.push((u, v));
                pairs.push((u, v));
            }
        }
    }
    let mut off = c_start;
    for c in components {
        for i in 0..c.size {
            pairs.push((off + i, off + i));
            for j in (i + 1)..c.size {
                pairs.push((off + i, off + j));
                pairs.push((off + i, off + j));
            }
        }
        let mut sorted = c.matched_to.clone();
        sorted.sort_unstable();
        for (j, &a) in sorted.iter().enumerate() {
            pairs.push((a, off + j));
        }
        off += c.size;
    }
    let g = Multigraph::new(n, &pairs)?;
    debug_assert!(crate::maximal::is_maximal_structural(&g)
        .map(|r| r.maximal)
        .unwrap_or(false));
    Ok(g)
}

/// Seeded random M₂ graph: each pair multiplicity is binomial(2,
/// edge_density), each loop Bernoulli(loop_density).
pub fn random_m2(n: usize, edge_density: f64, loop_density: f64, seed: u64) -> Result<Multigraph> {
    for d in [edge_density, loop_density] {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::input(format!("density {d} outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        if rng.gen_bool(loop_density) {
            pairs.push((u, u));
        }
        for v in (u + 1)..n {
            for _ in 0..2 {
                if rng.gen_bool(edge_density) {
                    pairs.push((u, v));
                }
            }
        }
    }
    Multigraph::new(n, &pairs)
}

/// Seeded random d-regular M₂ multigraph by the configuration model:
/// pair up degree stubs at random and reject samples that violate the
/// multiplicity bounds.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Multigraph> {
    if n == 0 {
        return Multigraph::new(0, &[]);
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::input(format!(
            "no {degree}-regular graph on {n} vertices: odd degree sum"
        )));
    }
    if degree > 2 * (n - 1) + 2 {
        return Err(Error::input(format!(
            "degree {degree} exceeds the M2 maximum on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<VertexId> =
        (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        // A loop uses two stubs and adds two to the degree, so pairing
        // consecutive stubs keeps every vertex exactly d-regular.
        let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Multigraph::new(n, &pairs) {
            return Ok(g);
        }
    }
    Err(Error::cap(format!(
        "rejected 10000 configuration samples for a {degree}-regular graph on {n} vertices"
    )))
}

/// Exhaustive enumeration of all M₂ graphs on `n` vertices (every loop
/// present or absent, every pair multiplicity 0, 1 or 2), in a fixed
/// order. 11,664 graphs at n = 4; 1,889,568 at n = 5.
pub fn enumerate_m2(n: usize) -> Result<M2Enumeration> {
    if n > 5 {
        return Err(Error::cap(format!(
            "exhaustive M2 enumeration on {n} vertices is too large"
        )));
    }
    Ok(M2Enumeration { n, index: 0, total: m2_count(n) })
}

/// Number of M₂ graphs on `n` labeled vertices.
pub fn m2_count(n: usize) -> u64 {
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    2u64.pow(n as u32) * 3u64.pow(pairs)
}

pub struct M2Enumeration {
    n: usize,
    index: u64,
    total: u64,
}

impl Iterator for M2Enumeration {
    type Item = Multigraph;

    fn next(&mut self) -> Option<Multigraph> {
        if self.index >= self.total {
            return None;
        }
        let mut code = self.index;
        self.index += 1;
        let mut pairs = Vec::new();
        for v in 0..self.n {
            if code & 1 == 1 {
                pairs.push((v, v));
            }
            code >>= 1;
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let m = (code % 3) as usize;
                code /= 3;
                for _ in 0..m {
                    pairs.push((u, v));
                }
            }
        }
        Some(Multigraph::new(self.n, &pairs).expect("enumerated graph is valid"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor;
    use crate::maximal;
    use crate::witness;

    #[test]
    fn blobs_satisfy_their_invariants() {
        for k in 1..=3 {
            let b = blob(k).unwrap();
            assert!(b.validate(), "k = {k}");
            assert_eq!(b.graph.n(), 2 * k + 3);
            assert_eq!(b.graph.n() % 2, 1, "vertex count must be odd");
        }
        assert!(blob(0).is_err());
    }

    #[test]
    fn blob_one_is_the_subdivided_k4() {
        let b = blob(1).unwrap();
        let mut degs: Vec<usize> = (0..b.graph.n()).map(|v| b.graph.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 3, 3, 3, 3]);
    }

    #[test]
    fn sylvester_one_shape_and_primitivity() {
        let g = sylvester_graph(1).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.m(), 24);
        assert!((0..16).all(|v| g.degree(v) == 3));
        let report = g.bridges_and_leaves();
        assert_eq!(report.leaves.len(), 3);
        assert_eq!(report.bridges.len(), 3);
        assert!(factor::find_two_factor(&g).is_none());
        let w = witness::check_witness(&g, &[0].into(), &std::collections::BTreeSet::new(), 2)
            .unwrap();
        assert!(w.valid());
        assert_eq!((w.q, w.bound, w.slack), (3, 1, 2));
    }

    #[test]
    fn sylvester_two_shape_and_primitivity() {
        let g = sylvester_graph(2).unwrap();
        assert_eq!(g.n(), 36);
        assert_eq!(g.m(), 90);
        assert!((0..36).all(|v| g.degree(v) == 5));
        assert_eq!(g.bridges_and_leaves().leaves.len(), 5);
        assert!(factor::find_two_factor(&g).is_none());
    }

    #[test]
    fn trivial_primitive_spec_matches_sylvester() {
        for k in 1..=2 {
            let spec = BipartiteSpec { a_size: 1, b_size: 0, edges: vec![] };
            let g = primitive_graph(k, &spec, &[]).unwrap();
            let s = sylvester_graph(k).unwrap();
            assert_eq!(g.n(), s.n());
            assert_eq!(g.m(), s.m());
            assert_eq!(g.bridges_and_leaves().leaves.len(), 2 * k + 1);
        }
    }

    #[test]
    fn primitive_with_inner_b_vertex() {
        // k = 1: one B-vertex joined twice to one A-vertex and once to the
        // other; three blobs fill the A-degrees.
        let spec = BipartiteSpec {
            a_size: 2,
            b_size: 1,
            edges: vec![(0, 0, 2), (1, 0, 1)],
        };
        let g = primitive_graph(1, &spec, &[]).unwrap();
        assert_eq!(g.n(), 3 + 3 * 5);
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        assert_eq!(g.bridges_and_leaves().leaves.len(), 3);
        assert!(factor::find_two_factor(&g).is_none());
    }

    #[test]
    fn edge_expansion_preserves_regularity_and_primitivity() {
        let spec = BipartiteSpec {
            a_size: 2,
            b_size: 1,
            edges: vec![(0, 0, 2), (1, 0, 1)],
        };
        let g = primitive_graph(1, &spec, &[Expansion::Edge { a: 1, b: 0 }]).unwrap();
        assert_eq!(g.n(), 3 + 3 * 5 + 4);
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        assert_eq!(g.bridges_and_leaves().leaves.len(), 3);
        assert!(factor::find_two_factor(&g).is_none());
    }

    #[test]
    fn vertex_expansion_preserves_regularity_and_primitivity() {
        let spec = BipartiteSpec {
            a_size: 2,
            b_size: 1,
            edges: vec![(0, 0, 2), (1, 0, 1)],
        };
        let g = primitive_graph(1, &spec, &[Expansion::Vertex { b: 0 }]).unwrap();
        assert_eq!(g.n(), 2 + 3 + 3 * 5);
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        assert_eq!(g.bridges_and_leaves().leaves.len(), 3);
        assert!(factor::find_two_factor(&g).is_none());
    }

    #[test]
    fn primitive_spec_validation() {
        let bad_sides = BipartiteSpec { a_size: 2, b_size: 2, edges: vec![] };
        assert!(primitive_graph(1, &bad_sides, &[]).is_err());
        let bad_b_degree = BipartiteSpec { a_size: 2, b_size: 1, edges: vec![(0, 0, 1)] };
        assert!(primitive_graph(1, &bad_b_degree, &[]).is_err());
        let bad_a_degree = BipartiteSpec {
            a_size: 3,
            b_size: 2,
            edges: vec![(0, 0, 2), (0, 1, 2), (1, 0, 1), (2, 1, 1)],
        };
        assert!(primitive_graph(1, &bad_a_degree, &[]).is_err());
        let spec = BipartiteSpec { a_size: 2, b_size: 1, edges: vec![(0, 0, 2), (1, 0, 1)] };
        assert!(primitive_graph(2, &spec, &[Expansion::Vertex { b: 0 }]).is_err());
        assert!(primitive_graph(1, &spec, &[Expansion::Edge { a: 0, b: 0 }, Expansion::Vertex { b: 0 }])
            .is_err());
    }

    #[test]
    fn maximal_star_shape() {
        let comp = |_: usize| ComponentSpec { size: 1, matched_to: vec![0] };
        let g = maximal_graph(1, 0, &[comp(0), comp(1), comp(2)]).unwrap();
        assert_eq!(g.n(), 4);
        assert!(maximal::is_maximal_structural(&g).unwrap().maximal);
        assert!(maximal::is_maximal_direct(&g).is_maximal());
        let d = maximal::decompose(&g);
        assert_eq!(d.a, [0].into());
    }

    #[test]
    fn maximal_without_components() {
        let g = maximal_graph(2, 1, &[]).unwrap();
        assert_eq!(g.n(), 3);
        assert!(maximal::is_maximal_structural(&g).unwrap().maximal);
        assert!(maximal::is_maximal_direct(&g).is_maximal());
    }

    #[test]
    fn maximal_spec_validation_names_the_condition() {
        let even = maximal_graph(1, 0, &[ComponentSpec { size: 2, matched_to: vec![] }]);
        assert!(format!("{}", even.unwrap_err()).contains("odd matchings"));
        let identity = maximal_graph(2, 0, &[ComponentSpec { size: 1, matched_to: vec![0] }]);
        assert!(format!("{}", identity.unwrap_err()).contains("identity"));
        // Three components matched to the same two A-vertices plus a
        // private one each: the subset condition fails.
        let comp = |extra: usize| ComponentSpec { size: 3, matched_to: vec![0, 1, extra] };
        let bad = maximal_graph(5, 1, &[comp(2), comp(3), comp(4)]);
        assert!(format!("{}", bad.unwrap_err()).contains("subset condition"));
    }

    #[test]
    fn maximal_larger_component_instance() {
        // A = {0}; one component of three vertices matched once, plus two
        // singleton components: identity 2 + 3 = 0 + 3 + 2.
        let g = maximal_graph(
            1,
            0,
            &[
                ComponentSpec { size: 3, matched_to: vec![0] },
                ComponentSpec { size: 1, matched_to: vec![0] },
                ComponentSpec { size: 1, matched_to: vec![0] },
            ],
        )
        .unwrap();
        assert!(maximal::is_maximal_structural(&g).unwrap().maximal);
        assert!(maximal::is_maximal_direct(&g).is_maximal());
    }

    #[test]
    fn random_m2_is_deterministic_and_respects_density() {
        let a = random_m2(6, 0.4, 0.3, 99).unwrap();
        let b = random_m2(6, 0.4, 0.3, 99).unwrap();
        assert_eq!(
            crate::format::serialize(&a),
            crate::format::serialize(&b)
        );
        assert_eq!(random_m2(6, 0.0, 0.0, 1).unwrap().m(), 0);
        let full = random_m2(4, 1.0, 1.0, 1).unwrap();
        assert_eq!(full.m(), 4 + 2 * 6);
        let loops: std::collections::BTreeSet<_> =
            (0..4).map(|v| full.loop_at(v).unwrap()).collect();
        assert!(factor::is_two_factor(&full, &loops));
    }

    #[test]
    fn random_regular_shapes() {
        for (n, d, seed) in [(8, 3, 1), (9, 4, 2), (12, 6, 3), (10, 5, 4)] {
            let g = random_regular(n, d, seed).unwrap();
            assert!((0..n).all(|v| g.degree(v) == d), "n={n} d={d}");
        }
        assert!(random_regular(3, 3, 1).is_err());
        let a = random_regular(8, 3, 7).unwrap();
        let b = random_regular(8, 3, 7).unwrap();
        assert_eq!(crate::format::serialize(&a), crate::format::serialize(&b));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(m2_count(0), 1);
        assert_eq!(m2_count(3), 8 * 27);
        assert_eq!(m2_count(4), 11_664);
        assert_eq!(m2_count(5), 1_889_568);
        assert_eq!(enumerate_m2(3).unwrap().count(), 216);
        assert!(enumerate_m2(6).is_err());
        // Every enumerated graph is distinct.
        let mut seen = std::collections::BTreeSet::new();
        for g in enumerate_m2(2).unwrap() {
            assert!(seen.insert(crate::format::serialize(&g)));
        }
        assert_eq!(seen.len(), 12);
    }
}
