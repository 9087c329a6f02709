//! Maximality without a 2-factor, decided two independent ways: directly
//! (no 2-factor, and every M₂ edge addition creates one) and structurally
//! (a five-part characterization of the decomposition into loopless
//! vertices A, dominating loop vertices B, and complete components C, with
//! a max-flow subset condition as the final part). The two must agree on
//! every M₂ graph; tests hold them to that.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factor::{self, TwoFactor};
use crate::flow::FlowNetwork;
use crate::multigraph::{AddCandidate, Multigraph, VertexId};

/// The A/B/C decomposition and the first four structural conditions.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    /// Loopless vertices.
    pub a: BTreeSet<VertexId>,
    /// Loop vertices joined to every other vertex by two edges.
    pub b: BTreeSet<VertexId>,
    /// Everything else (loop vertices not dominating).
    pub c: BTreeSet<VertexId>,
    /// Components of G[C], each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<VertexId>>,
    /// tᵢ = e(A, V(Cᵢ)), counting multiplicity.
    pub t: Vec<usize>,
    /// e(A, C) = Σ tᵢ.
    pub e_ac: usize,
    /// No edges inside A.
    pub a_independent: bool,
    /// Every component has all its internal pair multiplicities equal to 2
    /// (loops are present by construction of C).
    pub components_complete: bool,
    /// The A–Cᵢ edges form a matching of odd size, for every i.
    pub odd_matchings: bool,
    /// 2|A| + q = 2|B| + e(A,C) + 2.
    pub identity_holds: bool,
}

impl DecompositionReport {
    pub fn q(&self) -> usize {
        self.components.len()
    }

    pub fn bullets_hold(&self) -> bool {
        self.a_independent && self.components_complete && self.odd_matchings && self.identity_holds
    }
}

/// Compute the A/B/C decomposition and evaluate the four counting bullets.
pub fn decompose(g: &Multigraph) -> DecompositionReport {
    let n = g.n();
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    let mut c = BTreeSet::new();
    for v in 0..n {
        if !g.has_loop(v) {
            a.insert(v);
        } else if (0..n).all(|w| w == v || g.pair_multiplicity(v, w) == 2) {
            b.insert(v);
        } else {
            c.insert(v);
        }
    }
    let keep: Vec<bool> = (0..n).map(|v| c.contains(&v)).collect();
    let components = g.components_within(&keep);
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }

    let mut t = vec![0usize; components.len()];
    let mut a_independent = true;
    // Matchings are per component: an A-vertex may serve several
    // components, but never twice the same one.
    let mut seen_end: BTreeSet<(VertexId, usize)> = BTreeSet::new();
    let mut odd_matchings = true;
    for e in g.edges() {
        let (ua, va) = (a.contains(&e.u), a.contains(&e.v));
        if ua && va {
            a_independent = false;
        }
        let cv = if ua && comp_of[e.v] != usize::MAX {
            Some(e.v)
        } else if va && comp_of[e.u] != usize::MAX {
            Some(e.u)
        } else {
            None
        };
        if let Some(cv) = cv {
            let i = comp_of[cv];
            t[i] += 1;
            if !seen_end.insert((e.u, i)) || !seen_end.insert((e.v, i)) {
                odd_matchings = false;
            }
        }
    }
    if t.iter().any(|&ti| ti % 2 == 0) {
        odd_matchings = false;
    }

    let mut components_complete = true;
    for comp in &components {
        for (i, &u) in comp.iter().enumerate() {
            for &v in &comp[i + 1..] {
                if g.pair_multiplicity(u, v) != 2 {
                    components_complete = false;
                }
            }
        }
    }

    let e_ac: usize = t.iter().sum();
    let identity_holds =
        2 * a.len() as i64 + components.len() as i64 == 2 * b.len() as i64 + e_ac as i64 + 2;
    DecompositionReport {
        a,
        b,
        c,
        components,
        t,
        e_ac,
        a_independent,
        components_complete,
        odd_matchings,
        identity_holds,
    }
}

/// The bipartite incidence of A-vertices and components: an edge (x, Cᵢ)
/// whenever x has an edge into Cᵢ. Degrees on the component side must be
/// odd. Usable standalone; `from_decomposition` derives it from a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteProfile {
    /// Vertex ids backing the A side (indices into this list are used
    /// everywhere else).
    pub a: Vec<VertexId>,
    /// Component-side degrees tᵢ.
    pub t: Vec<usize>,
    /// H-edges (A index, component index).
    pub edges: BTreeSet<(usize, usize)>,
}

impl BipartiteProfile {
    pub fn new(a: Vec<VertexId>, components: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut t = vec![0usize; components];
        let mut set = BTreeSet::new();
        for &(x, i) in edges {
            if x >= a.len() || i >= components {
                return Err(Error::input(format!("profile edge ({x}, {i}) out of range")));
            }
            if !set.insert((x, i)) {
                return Err(Error::input(format!("duplicate profile edge ({x}, {i})")));
            }
            t[i] += 1;
        }
        if let Some(i) = t.iter().position(|&ti| ti % 2 == 0) {
            return Err(Error::input(format!(
                "component {i} has even degree {}; degrees must be odd",
                t[i]
            )));
        }
        Ok(BipartiteProfile { a, t, edges: set })
    }

    pub fn need(&self) -> i64 {
        self.t.iter().map(|&ti| ti as i64 - 1).sum()
    }

    /// tᵢ′: neighbors of component `i` inside the A-index set `a_prime`.
    pub fn t_prime(&self, i: usize, a_prime: &BTreeSet<usize>) -> usize {
        a_prime
            .iter()
            .filter(|&&x| self.edges.contains(&(x, i)))
            .count()
    }
}

/// Bipartite profile of a graph whose decomposition satisfies the counting
/// bullets.
pub fn profile_of(g: &Multigraph, report: &DecompositionReport) -> Result<BipartiteProfile> {
    if !report.bullets_hold() {
        return Err(Error::input(
            "decomposition does not satisfy the counting conditions",
        ));
    }
    let a: Vec<VertexId> = report.a.iter().copied().collect();
    let a_index = |v: VertexId| a.binary_search(&v).unwrap();
    let mut comp_of = vec![usize::MAX; g.n()];
    for (i, comp) in report.components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        if report.a.contains(&e.u) && comp_of[e.v] != usize::MAX {
            edges.push((a_index(e.u), comp_of[e.v]));
        } else if report.a.contains(&e.v) && comp_of[e.u] != usize::MAX {
            edges.push((a_index(e.v), comp_of[e.u]));
        }
    }
    BipartiteProfile::new(a, report.components.len(), &edges)
}

/// Network deciding the loop-addition condition at `x`: every other
/// A-vertex may supply 2 units, H-edges carry 1, and each component must
/// absorb tᵢ − 1.
pub fn build_condition_network(profile: &BipartiteProfile, x: usize) -> Result<CaseNetwork> {
    if x >= profile.a.len() {
        return Err(Error::input(format!("vertex index {x} outside A")));
    }
    build_case_network(profile, &AdditionCase::LoopAtA { x })
}

/// One of the four ways an edge can be added to a graph matching the
/// structural decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdditionCase {
    /// Loop at the A-vertex with index `x`.
    LoopAtA { x: usize },
    /// Edge between two A-vertices.
    EdgeWithinA { x: usize, y: usize },
    /// Edge from an A-vertex into component `i`.
    EdgeIntoComponent { x: usize, i: usize },
    /// Edge between two different components.
    EdgeBetweenComponents { i: usize, j: usize },
}

/// A constructed case network plus bookkeeping to read a solution back.
pub struct CaseNetwork {
    pub net: FlowNetwork,
    pub need: i64,
    source: usize,
    sink: usize,
    edge_arcs: Vec<((usize, usize), crate::flow::ArcId)>,
    a_nodes: std::ops::Range<usize>,
    c_nodes: std::ops::Range<usize>,
}

fn build_case_network(profile: &BipartiteProfile, case: &AdditionCase) -> Result<CaseNetwork> {
    let na = profile.a.len();
    let q = profile.t.len();
    let check_a = |x: usize| {
        if x >= na {
            Err(Error::input(format!("vertex index {x} outside A")))
        } else {
            Ok(())
        }
    };
    let check_c = |i: usize| {
        if i >= q {
            Err(Error::input(format!("component index {i} out of range")))
        } else {
            Ok(())
        }
    };
    // Per-A source capacity and per-component sink demand.
    let mut supply = vec![2i64; na];
    let mut demand: Vec<i64> = profile.t.iter().map(|&ti| ti as i64 - 1).collect();
    match *case {
        AdditionCase::LoopAtA { x } => {
            check_a(x)?;
            supply[x] = 0;
        }
        AdditionCase::EdgeWithinA { x, y } => {
            check_a(x)?;
            check_a(y)?;
            if x == y {
                return Err(Error::input("the two A-vertices must differ"));
            }
            supply[x] = 1;
            supply[y] = 1;
        }
        AdditionCase::EdgeIntoComponent { x, i } => {
            check_a(x)?;
            check_c(i)?;
            supply[x] = 1;
            demand[i] = profile.t[i] as i64;
        }
        AdditionCase::EdgeBetweenComponents { i, j } => {
            check_c(i)?;
            check_c(j)?;
            if i == j {
                return Err(Error::input("the two components must differ"));
            }
            demand[i] = profile.t[i] as i64;
            demand[j] = profile.t[j] as i64;
        }
    }
    let mut net = FlowNetwork::new(2 + na + q);
    let (source, sink) = (0, 1);
    let a_node = |x: usize| 2 + x;
    let c_node = |i: usize| 2 + na + i;
    for (x, &cap) in supply.iter().enumerate() {
        if cap > 0 {
            net.add_arc(source, a_node(x), cap);
        }
    }
    let mut edge_arcs = Vec::new();
    for &(x, i) in &profile.edges {
        let id = net.add_arc(a_node(x), c_node(i), 1);
        edge_arcs.push(((x, i), id));
    }
    for (i, &d) in demand.iter().enumerate() {
        if d > 0 {
            net.add_arc(c_node(i), sink, d);
        }
    }
    Ok(CaseNetwork {
        net,
        need: demand.iter().sum(),
        source,
        sink,
        edge_arcs,
        a_nodes: 2..2 + na,
        c_nodes: 2 + na..2 + na + q,
    })
}

/// Decide whether the graph obtained by the given addition has a 2-factor,
/// which reduces to choosing H-edges meeting the case's degree constraints.
/// Returns the chosen H-edge set when it exists.
pub fn case_conditions(
    profile: &BipartiteProfile,
    case: &AdditionCase,
) -> Result<Option<Vec<(usize, usize)>>> {
    let mut cn = build_case_network(profile, case)?;
    let (value, _) = cn.net.max_flow(cn.source, cn.sink);
    if value < cn.need {
        return Ok(None);
    }
    debug_assert_eq!(value, cn.need, "flow exceeds total sink capacity");
    let mut chosen: Vec<(usize, usize)> = cn
        .edge_arcs
        .iter()
        .filter(|&&(_, arc)| cn.net.flow_on(arc) == 1)
        .map(|&(e, _)| e)
        .collect();
    chosen.sort_unstable();
    Ok(Some(chosen))
}

/// A violated instance of the subset condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Indices into the profile's A list.
    pub a_prime: BTreeSet<usize>,
    /// Component indices.
    pub c_prime: BTreeSet<usize>,
    /// 2|A′| on the left, 2 + Σ(tᵢ′ − 1) on the right.
    pub lhs: i64,
    pub rhs: i64,
}

/// Check that 2|A′| ≥ 2 + Σ_{Cᵢ∈𝒞′}(tᵢ′ − 1) for every nonempty A′ ⊆ A and
/// every 𝒞′ ⊆ 𝒞, via one max-flow run per A-vertex. A violating pair is
/// recovered from the minimum cut when the condition fails.
pub fn check_condition_41(profile: &BipartiteProfile) -> Result<Option<Violation>> {
    for x in 0..profile.a.len() {
        let mut cn = build_case_network(profile, &AdditionCase::LoopAtA { x })?;
        let (value, cut) = cn.net.max_flow(cn.source, cn.sink);
        if value >= cn.need {
            continue;
        }
        // Sink-side A-nodes together with x, and sink-side component nodes.
        let mut a_prime: BTreeSet<usize> = cn
            .a_nodes
            .clone()
            .filter(|&node| !cut[node])
            .map(|node| node - 2)
            .collect();
        a_prime.insert(x);
        let c_prime: BTreeSet<usize> = cn
            .c_nodes
            .clone()
            .filter(|&node| !cut[node])
            .map(|node| node - 2 - profile.a.len())
            .collect();
        let lhs = 2 * a_prime.len() as i64;
        let rhs = 2 + c_prime
            .iter()
            .map(|&i| profile.t_prime(i, &a_prime) as i64 - 1)
            .sum::<i64>();
        if lhs >= rhs {
            return Err(Error::invariant(
                "minimum cut did not produce a violating pair",
            ));
        }
        return Ok(Some(Violation { a_prime, c_prime, lhs, rhs }));
    }
    Ok(None)
}

/// Reference implementation of the subset condition by exhaustive
/// enumeration; exponential, for cross-checking only.
pub fn check_condition_41_exhaustive(profile: &BipartiteProfile) -> Option<Violation> {
    let na = profile.a.len();
    let q = profile.t.len();
    assert!(na <= 16 && q <= 16, "exhaustive check is exponential");
    for a_mask in 1u32..(1 << na) {
        let a_prime: BTreeSet<usize> = (0..na).filter(|x| a_mask >> x & 1 == 1).collect();
        for c_mask in 0u32..(1 << q) {
            let c_prime: BTreeSet<usize> = (0..q).filter(|i| c_mask >> i & 1 == 1).collect();
            let lhs = 2 * a_prime.len() as i64;
            let rhs = 2 + c_prime
                .iter()
                .map(|&i| profile.t_prime(i, &a_prime) as i64 - 1)
                .sum::<i64>();
            if lhs < rhs {
                return Some(Violation { a_prime, c_prime, lhs, rhs });
            }
        }
    }
    None
}

/// Structural maximality: the four counting bullets plus the subset
/// condition.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub decomposition: DecompositionReport,
    /// None when the counting bullets already failed.
    pub violation: Option<Violation>,
    pub condition_41: Option<bool>,
    pub maximal: bool,
}

impl StructuralReport {
    /// One line per condition, `ok`/`FAIL` plus the relevant numbers.
    pub fn lines(&self) -> Vec<String> {
        let d = &self.decomposition;
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        let mut out = vec![
            format!(
                "A independent: {} (|A| = {})",
                mark(d.a_independent),
                d.a.len()
            ),
            format!(
                "components complete: {} (q = {})",
                mark(d.components_complete),
                d.q()
            ),
            format!(
                "odd matchings to A: {} (t = {:?})",
                mark(d.odd_matchings),
                d.t
            ),
            format!(
                "identity 2|A| + q = 2|B| + e(A,C) + 2: {} ({} + {} vs {} + {} + 2)",
                mark(d.identity_holds),
                2 * d.a.len(),
                d.q(),
                2 * d.b.len(),
                d.e_ac
            ),
        ];
        match (&self.condition_41, &self.violation) {
            (Some(true), _) => out.push("subset condition: ok".to_string()),
            (Some(false), Some(v)) => {
                let ids: Vec<VertexId> = v
                    .a_prime
                    .iter()
                    .map(|&i| self.decomposition.a.iter().nth(i).copied().unwrap())
                    .collect();
                out.push(format!(
                    "subset condition: FAIL (A' = {:?}, components {:?}, {} < {})",
                    ids,
                    v.c_prime.iter().collect::<Vec<_>>(),
                    v.lhs,
                    v.rhs
                ));
            }
            _ => out.push("subset condition: skipped (earlier conditions failed)".to_string()),
        }
        out.push(format!(
            "maximal without a 2-factor: {}",
            if self.maximal { "yes" } else { "no" }
        ));
        out
    }
}

/// Evaluate the full structural characterization.
pub fn is_maximal_structural(g: &Multigraph) -> Result<StructuralReport> {
    let decomposition = decompose(g);
    if !decomposition.bullets_hold() {
        return Ok(StructuralReport {
            decomposition,
            violation: None,
            condition_41: None,
            maximal: false,
        });
    }
    let profile = profile_of(g, &decomposition)?;
    let violation = check_condition_41(&profile)?;
    let holds = violation.is_none();
    Ok(StructuralReport {
        decomposition,
        violation,
        condition_41: Some(holds),
        maximal: holds,
    })
}

/// Direct maximality check by trying every M₂ addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectResult {
    /// No 2-factor and every addition creates one.
    Maximal,
    /// The graph already has a 2-factor.
    HasTwoFactor(TwoFactor),
    /// This addition keeps the graph 2-factor-free.
    Extendable(AddCandidate),
}

impl DirectResult {
    pub fn is_maximal(&self) -> bool {
        matches!(self, DirectResult::Maximal)
    }
}

pub fn is_maximal_direct(g: &Multigraph) -> DirectResult {
    if let Some(f) = factor::find_two_factor(g) {
        return DirectResult::HasTwoFactor(f);
    }
    for cand in g.add_candidates() {
        let next = cand.apply(g).expect("candidate is addable");
        if factor::find_two_factor(&next).is_none() {
            return DirectResult::Extendable(cand);
        }
    }
    DirectResult::Maximal
}

/// Grow the graph to a maximal 2-factor-free supergraph: scan candidates
/// in canonical order (loops by vertex, then pairs lexicographically),
/// add the first one that keeps the graph 2-factor-free, and repeat until
/// nothing can be added.
pub fn maximal_completion(g: &Multigraph) -> Result<Multigraph> {
    if factor::find_two_factor(g).is_some() {
        return Err(Error::input("graph already has a 2-factor"));
    }
    let mut cur = g.clone();
    'grow: loop {
        for cand in cur.add_candidates() {
            let next = cand.apply(&cur).expect("candidate is addable");
            if factor::find_two_factor(&next).is_none() {
                cur = next;
                continue 'grow;
            }
        }
        break;
    }
    debug_assert!(is_maximal_direct(&cur).is_maximal());
    Ok(cur)
}

/// Map an addable candidate on a structurally sound graph to its case.
/// Candidates touching B or staying inside one component cannot occur on
/// such graphs (those multiplicities are already full), so `None` is
/// returned only for them.
pub fn classify_addition(
    report: &DecompositionReport,
    cand: &AddCandidate,
) -> Option<AdditionCase> {
    let a: Vec<VertexId> = report.a.iter().copied().collect();
    let a_idx = |v: VertexId| a.binary_search(&v).ok();
    let comp_idx = |v: VertexId| report.components.iter().position(|c| c.contains(&v));
    match *cand {
        AddCandidate::Loop(v) => a_idx(v).map(|x| AdditionCase::LoopAtA { x }),
        AddCandidate::Pair(u, v) => match (a_idx(u), a_idx(v)) {
            (Some(x), Some(y)) => Some(AdditionCase::EdgeWithinA { x, y }),
            (Some(x), None) => comp_idx(v).map(|i| AdditionCase::EdgeIntoComponent { x, i }),
            (None, Some(y)) => comp_idx(u).map(|i| AdditionCase::EdgeIntoComponent { x: y, i }),
            (None, None) => match (comp_idx(u), comp_idx(v)) {
                (Some(i), Some(j)) if i != j => {
                    Some(AdditionCase::EdgeBetweenComponents { i, j })
                }
                _ => None,
            },
        },
    }
}

/// Exceptional shapes whose simple restriction is *not* maximal within
/// simple graphs even though the multigraph is maximal in M₂.
///
/// Each flag is set only when the named shape actually breaks simple
/// maximality at the graph's order. On three or fewer vertices nothing
/// breaks: each missing pair of such a restriction touches every vertex
/// the stripped loops and doubled edges left short, so every addition
/// restores a 2-factor. On exactly four vertices the harmful shapes are
/// the star over three loop-stripped singletons and a two-vertex
/// component held by a single edge; a three-vertex component or an
/// A-vertex with no component is harmless there because the additions
/// that would strand a vertex do not exist yet. From five vertices on,
/// all three component-level shapes are harmful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExceptionReport {
    /// Exactly four vertices with |A| = 1, |B| = 0, q = 3: the simple
    /// restriction is the claw K₁,₃.
    pub star_shape: bool,
    /// A component with tᵢ = 1 and two vertices (or three once n ≥ 5):
    /// stripping its internal doubles leaves too few distinct edges for
    /// additions elsewhere to complete a 2-factor.
    pub small_component: bool,
    /// |B| = 1 with an A-vertex joined to no component (n ≥ 5): that
    /// vertex keeps degree 1 in the restriction under any far addition.
    pub idle_a_vertex: bool,
    /// An A-vertex joined to ≥ 2 components, one of them a singleton
    /// (n ≥ 4): the singleton loses its loop and keeps degree 1.
    pub split_singletons: bool,
}

impl ExceptionReport {
    pub fn is_exception(&self) -> bool {
        self.star_shape || self.small_component || self.idle_a_vertex || self.split_singletons
    }
}

/// Classify whether the simple restriction of a maximal graph fails to be
/// maximal among simple graphs. Requires structural maximality.
pub fn simple_exception_classify(g: &Multigraph) -> Result<ExceptionReport> {
    let report = is_maximal_structural(g)?;
    if !report.maximal {
        return Err(Error::precondition(
            "graph is not maximal without a 2-factor",
        ));
    }
    let d = &report.decomposition;
    let mut out = ExceptionReport::default();
    if g.n() <= 3 {
        return Ok(out);
    }
    let small_component = |max_size: usize| {
        d.t.iter()
            .zip(&d.components)
            .any(|(&ti, comp)| ti == 1 && comp.len() >= 2 && comp.len() <= max_size)
    };
    let profile = profile_of(g, d)?;
    let components_of = |x: usize| -> Vec<usize> {
        profile
            .edges
            .iter()
            .filter(|&&(px, _)| px == x)
            .map(|&(_, i)| i)
            .collect()
    };
    out.split_singletons = (0..profile.a.len()).any(|x| {
        let comps = components_of(x);
        comps.len() >= 2 && comps.iter().any(|&i| d.components[i].len() == 1)
    });
    if g.n() == 4 {
        out.star_shape = d.a.len() == 1 && d.b.is_empty() && d.q() == 3;
        out.small_component = small_component(2);
        return Ok(out);
    }
    out.small_component = small_component(3);
    out.idle_a_vertex =
        d.b.len() == 1 && (0..profile.a.len()).any(|x| components_of(x).is_empty());
    Ok(out)
}
