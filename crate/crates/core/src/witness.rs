//! Deficiency witnesses: disjoint vertex pairs (A, B) certifying that no
//! k-factor exists. A witness is valid when the number q of odd components
//! of G − A − B exceeds 2e(A,A) − k|A| + k|B| + e(A,C); validity is sound
//! for every k and, for k = 2 on M₂ graphs, a valid witness exists whenever
//! a 2-factor does not (searchable exhaustively at small n). The equality
//! case of the bound forces a rigid path structure on any 2-factor, exposed
//! here as well.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::factor::{self, TwoFactor};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// One component of G − A − B with its parity data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentParity {
    pub vertices: Vec<VertexId>,
    /// e(A, V(Cᵢ)[): edges joining A to this component, with multiplicity.
    pub edges_to_a: usize,
    /// Whether k·|V(Cᵢ)| + e(A, V(Cᵢ)) is odd.
    pub odd: bool,
}

/// An evaluated (A, B) pair. `valid()` certifies that no k-factor exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: BTreeSet<VertexId>,
    pub b: BTreeSet<VertexId>,
    pub k: usize,
    /// Odd components of G − A − B.
    pub q: usize,
    /// 2e(A,A) − k|A| + k|B| + e(A,C).
    pub bound: i64,
    /// q − bound; the witness is valid iff this is positive.
    pub slack: i64,
}

impl Witness {
    pub fn valid(&self) -> bool {
        self.slack > 0
    }

    /// One-line certificate, e.g. `witness k=2 A=3 B=- q=3 bound=1 slack=2`.
    pub fn certificate(&self) -> String {
        self.to_string()
    }
}

fn id_list(set: &BTreeSet<VertexId>) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        set.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "witness k={} A={} B={} q={} bound={} slack={}",
            self.k,
            id_list(&self.a),
            id_list(&self.b),
            self.q,
            self.bound,
            self.slack
        )
    }
}

fn validate_pair(g: &Multigraph, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> Result<()> {
    if let Some(&v) = a.iter().chain(b.iter()).find(|&&v| v >= g.n()) {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    if let Some(&v) = a.intersection(b).next() {
        return Err(Error::input(format!("A and B overlap at vertex {v}")));
    }
    Ok(())
}

/// Components of G − A − B with the parity of k·|V(Cᵢ)| + e(A, V(Cᵢ)).
/// Returns the odd-component count q and all components in order of their
/// smallest vertex.
pub fn odd_component_count(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    k: usize,
) -> Result<(usize, Vec<ComponentParity>)> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    validate_pair(g, a, b)?;
    let n = g.n();
    let mut keep = vec![true; n];
    for &v in a.iter().chain(b.iter()) {
        keep[v] = false;
    }
    let comps = g.components_within(&keep);
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut edges_to_a = vec![0usize; comps.len()];
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        if a.contains(&u) && comp_of[v] != usize::MAX {
            edges_to_a[comp_of[v]] += 1;
        } else if a.contains(&v) && comp_of[u] != usize::MAX {
            edges_to_a[comp_of[u]] += 1;
        }
    }
    let parities: Vec<ComponentParity> = comps
        .into_iter()
        .zip(edges_to_a)
        .map(|(vertices, ea)| ComponentParity {
            odd: (k * vertices.len() + ea) % 2 == 1,
            vertices,
            edges_to_a: ea,
        })
        .collect();
    let q = parities.iter().filter(|c| c.odd).count();
    Ok((q, parities))
}

/// Edges with both ends in `a` (loops once) and edges joining `a` to
/// vertices outside `a ∪ b`, with multiplicity.
fn edge_counts(g: &Multigraph, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> (usize, usize) {
    let mut e_aa = 0;
    let mut e_ac = 0;
    for e in g.edges() {
        let ua = a.contains(&e.u);
        let va = a.contains(&e.v);
        if ua && va {
            e_aa += 1;
        } else if (ua && !b.contains(&e.v)) || (va && !b.contains(&e.u)) {
            e_ac += 1;
        }
    }
    (e_aa, e_ac)
}

/// Evaluate the pair (A, B) for the k-factor bound. Sound for every k: a
/// valid result means no k-factor exists.
pub fn check_witness(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    k: usize,
) -> Result<Witness> {
    let (q, _) = odd_component_count(g, a, b, k)?;
    let (e_aa, e_ac) = edge_counts(g, a, b);
    let bound =
        2 * e_aa as i64 - (k * a.len()) as i64 + (k * b.len()) as i64 + e_ac as i64;
    Ok(Witness {
        a: a.clone(),
        b: b.clone(),
        k,
        q,
        bound,
        slack: q as i64 - bound,
    })
}

/// Dense mask view of a graph for the exhaustive scanner (n ≤ 64).
struct MaskGraph {
    n: usize,
    adj: Vec<u64>,      // neighbor mask; own bit set iff loop
    mult: Vec<Vec<u8>>, // pair multiplicity, loops on the diagonal
}

impl MaskGraph {
    fn build(g: &Multigraph) -> MaskGraph {
        let n = g.n();
        let mut adj = vec![0u64; n];
        let mut mult = vec![vec![0u8; n]; n];
        for e in g.edges() {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
            mult[e.u][e.v] += 1;
            if e.u != e.v {
                mult[e.v][e.u] += 1;
            }
        }
        MaskGraph { n, adj, mult }
    }

    /// (q, bound) for the pair of disjoint masks.
    fn eval(&self, a: u64, b: u64, k: usize) -> (usize, i64) {
        let full = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        let c = full & !a & !b;
        let mut e_aa = 0i64;
        let mut e_ac = 0i64;
        let mut ai = a;
        while ai != 0 {
            let u = ai.trailing_zeros() as usize;
            ai &= ai - 1;
            e_aa += self.mult[u][u] as i64;
            let mut aj = a & !((1u64 << u) | ((1u64 << u) - 1));
            while aj != 0 {
                let v = aj.trailing_zeros() as usize;
                aj &= aj - 1;
                e_aa += self.mult[u][v] as i64;
            }
            let mut cj = c;
            while cj != 0 {
                let v = cj.trailing_zeros() as usize;
                cj &= cj - 1;
                e_ac += self.mult[u][v] as i64;
            }
        }
        let mut q = 0usize;
        let mut rem = c;
        while rem != 0 {
            let seed = rem & rem.wrapping_neg();
            let mut comp = seed;
            loop {
                let mut grow = 0u64;
                let mut ci = comp;
                while ci != 0 {
                    let v = ci.trailing_zeros() as usize;
                    ci &= ci - 1;
                    grow |= self.adj[v];
                }
                grow &= c & !comp;
                if grow == 0 {
                    break;
                }
                comp |= grow;
            }
            rem &= !comp;
            let mut edges = 0usize;
            let mut ai = a;
            while ai != 0 {
                let u = ai.trailing_zeros() as usize;
                ai &= ai - 1;
                let mut cj = comp;
                while cj != 0 {
                    let v = cj.trailing_zeros() as usize;
                    cj &= cj - 1;
                    edges += self.mult[u][v] as usize;
                }
            }
            if (k * comp.count_ones() as usize + edges) % 2 == 1 {
                q += 1;
            }
        }
        let bound = 2 * e_aa - (k as i64) * (a.count_ones() as i64)
            + (k as i64) * (b.count_ones() as i64)
            + e_ac;
        (q, bound)
    }
}

/// Exhaustive witness search; n above `cap` is refused. Pairs are visited
/// in a fixed order — |A| + |B| ascending, then the sorted A list
/// lexicographically, then the sorted B list — and the first valid witness
/// is returned, re-evaluated through `check_witness`.
pub fn search_witness_with_cap(
    g: &Multigraph,
    k: usize,
    independent_only: bool,
    cap: usize,
) -> Result<Option<Witness>> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let n = g.n();
    if n > cap {
        return Err(Error::cap(format!(
            "witness search limited to {cap} vertices (got {n}); raise the cap to proceed"
        )));
    }
    if n > 64 {
        return Err(Error::cap("witness search limited to 64 vertices"));
    }
    let mg = MaskGraph::build(g);
    for total in 0..=n {
        if let Some((a_mask, b_mask)) = scan_a(&mg, k, independent_only, total, 0, 0) {
            let a: BTreeSet<VertexId> = (0..n).filter(|v| a_mask >> v & 1 == 1).collect();
            let b: BTreeSet<VertexId> = (0..n).filter(|v| b_mask >> v & 1 == 1).collect();
            let w = check_witness(g, &a, &b, k)?;
            debug_assert!(w.valid());
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `search_witness_with_cap` with the default cap of 12.
pub fn search_witness(
    g: &Multigraph,
    k: usize,
    independent_only: bool,
) -> Result<Option<Witness>> {
    search_witness_with_cap(g, k, independent_only, 12)
}

/// Extend A (currently `a_mask`, next candidate vertex `from`) in
/// lexicographic order of the sorted A list; for each A, enumerate B over
/// the complement the same way.
fn scan_a(
    mg: &MaskGraph,
    k: usize,
    independent_only: bool,
    total: usize,
    a_mask: u64,
    from: usize,
) -> Option<(u64, u64)> {
    let a_size = a_mask.count_ones() as usize;
    if a_size <= total && total - a_size <= mg.n - a_size {
        let need_b = total - a_size;
        if let Some(b_mask) = scan_b(mg, k, a_mask, need_b, 0, 0) {
            return Some((a_mask, b_mask));
        }
    }
    if a_size < total {
        for v in from..mg.n {
            let bit = 1u64 << v;
            if independent_only && mg.adj[v] & (a_mask | bit) != 0 {
                // A must stay independent (loops count); supersets of a
                // dependent set are dependent, so skip the whole branch.
                continue;
            }
            if let Some(hit) = scan_a(mg, k, independent_only, total, a_mask | bit, v + 1) {
                return Some(hit);
            }
        }
    }
    None
}

fn scan_b(
    mg: &MaskGraph,
    k: usize,
    a_mask: u64,
    need: usize,
    b_mask: u64,
    from: usize,
) -> Option<u64> {
    if need == 0 {
        let (q, bound) = mg.eval(a_mask, b_mask, k);
        return if q as i64 > bound { Some(b_mask) } else { None };
    }
    for v in from..mg.n {
        let bit = 1u64 << v;
        if a_mask & bit != 0 {
            continue;
        }
        if mg.n - v < need {
            break;
        }
        if let Some(hit) = scan_b(mg, k, a_mask, need - 1, b_mask | bit, v + 1) {
            return Some(hit);
        }
    }
    None
}

/// Witness for a graph without a 2-factor, read off a maximal completion:
/// complete g until adding any further edge creates a 2-factor, take A as
/// the loopless vertices and B as the loop vertices joined to every other
/// vertex by two edges, then evaluate that pair on the original graph.
pub fn extract_witness(g: &Multigraph) -> Result<Witness> {
    if factor::find_two_factor(g).is_some() {
        return Err(Error::precondition("graph has a 2-factor"));
    }
    let gplus = crate::maximal::maximal_completion(g)?;
    let a: BTreeSet<VertexId> = (0..gplus.n()).filter(|&v| !gplus.has_loop(v)).collect();
    let b: BTreeSet<VertexId> = (0..gplus.n())
        .filter(|&v| {
            gplus.has_loop(v)
                && (0..gplus.n()).all(|w| w == v || gplus.pair_multiplicity(v, w) == 2)
        })
        .collect();
    let w = check_witness(g, &a, &b, 2)?;
    if !w.valid() {
        return Err(Error::invariant(format!(
            "extracted pair is not a valid witness: {w}"
        )));
    }
    Ok(w)
}

/// Path types in a 2-factor's cycle decomposition relative to A: each cycle
/// breaks at its A-vertices into paths through B ∪ C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathType {
    /// Both ends in B (including one-vertex paths).
    BothEndsB,
    /// Both ends in the same component of G − A − B.
    WithinComponent,
    /// Ends in two different components; such a path passes through B.
    CrossComponents,
    /// One end in B, the other in a component.
    BToComponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPath {
    pub vertices: Vec<VertexId>,
    pub kind: PathType,
}

/// Structure forced on a 2-factor when (A, B) meets the component bound
/// with equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityStructure {
    pub paths: Vec<FactorPath>,
    /// One end of each both-ends-in-B path.
    pub b1: BTreeSet<VertexId>,
    /// One B-vertex from each component-crossing path.
    pub b2: BTreeSet<VertexId>,
    /// The B-end of each mixed path.
    pub b3: BTreeSet<VertexId>,
    /// E(A,C) edges outside the factor — exactly one in each of
    /// q − 2|B₂| − |B₃| odd components.
    pub missing_ac_edges: Vec<EdgeId>,
}

/// Decompose the 2-factor `f` at the A-vertices and build B₁, B₂, B₃.
/// Requires q = 2e(A,A) − 2|A| + 2|B| + e(A,C) (the equality case); the
/// structural conclusions are then checked, not assumed.
pub fn equality_structure(
    g: &Multigraph,
    f: &TwoFactor,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
) -> Result<EqualityStructure> {
    if !factor::is_two_factor(g, &f.edges) {
        return Err(Error::input("edge set is not a 2-factor"));
    }
    let w = check_witness(g, a, b, 2)?;
    if w.slack != 0 {
        return Err(Error::input(format!(
            "pair does not meet the bound with equality: {w}"
        )));
    }
    let (_, comps) = odd_component_count(g, a, b, 2)?;
    let mut comp_of = vec![usize::MAX; g.n()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in &comp.vertices {
            comp_of[v] = i;
        }
    }

    let mut paths = Vec::new();
    for cycle in factor_cycles(g, f) {
        if !cycle.iter().any(|v| a.contains(v)) {
            continue;
        }
        let start = cycle.iter().position(|v| a.contains(v)).unwrap();
        let len = cycle.len();
        let mut segment: Vec<VertexId> = Vec::new();
        for i in 1..=len {
            let v = cycle[(start + i) % len];
            if a.contains(&v) {
                if !segment.is_empty() {
                    paths.push(std::mem::take(&mut segment));
                }
            } else {
                segment.push(v);
            }
        }
    }

    let mut b1 = BTreeSet::new();
    let mut b2 = BTreeSet::new();
    let mut b3 = BTreeSet::new();
    let mut typed = Vec::with_capacity(paths.len());
    for vertices in paths {
        let first = *vertices.first().unwrap();
        let last = *vertices.last().unwrap();
        let kind = match (b.contains(&first), b.contains(&last)) {
            (true, true) => {
                b1.insert(first.min(last));
                PathType::BothEndsB
            }
            (true, false) => {
                b3.insert(first);
                PathType::BToComponent
            }
            (false, true) => {
                b3.insert(last);
                PathType::BToComponent
            }
            (false, false) => {
                if comp_of[first] == comp_of[last] {
                    PathType::WithinComponent
                } else {
                    let via = vertices.iter().copied().filter(|v| b.contains(v)).min();
                    match via {
                        Some(v) => {
                            b2.insert(v);
                        }
                        None => {
                            return Err(Error::invariant(
                                "component-crossing path avoids B",
                            ))
                        }
                    }
                    PathType::CrossComponents
                }
            }
        };
        typed.push(FactorPath { vertices, kind });
    }

    let union: BTreeSet<VertexId> = b1.union(&b2).cloned().chain(b3.iter().cloned()).collect();
    if &union != b {
        return Err(Error::invariant(format!(
            "B1 ∪ B2 ∪ B3 = {union:?} differs from B = {b:?}"
        )));
    }

    // All E(A,C) edges lie in the factor except one per charged component.
    let mut missing = Vec::new();
    let mut missing_comp = BTreeSet::new();
    for e in g.edges() {
        let cv = if a.contains(&e.u) && comp_of[e.v] != usize::MAX {
            Some(e.v)
        } else if a.contains(&e.v) && comp_of[e.u] != usize::MAX {
            Some(e.u)
        } else {
            None
        };
        if let Some(cv) = cv {
            if !f.contains(e.id) {
                let ci = comp_of[cv];
                if !comps[ci].odd {
                    return Err(Error::invariant(format!(
                        "edge {} missing from an even component",
                        e.id
                    )));
                }
                if !missing_comp.insert(ci) {
                    return Err(Error::invariant(format!(
                        "two missing edges in one component (edge {})",
                        e.id
                    )));
                }
                missing.push(e.id);
            }
        }
    }
    let expected = w.q as i64 - 2 * b2.len() as i64 - b3.len() as i64;
    if missing.len() as i64 != expected {
        return Err(Error::invariant(format!(
            "{} missing (A,C)-edges, expected {expected}",
            missing.len()
        )));
    }
    Ok(EqualityStructure {
        paths: typed,
        b1,
        b2,
        b3,
        missing_ac_edges: missing,
    })
}

/// Vertex sequences of the factor's cycles (loop → one-vertex cycle,
/// doubled edge → two-vertex cycle), each starting at its smallest unseen
/// vertex, in ascending edge-id order of discovery.
fn factor_cycles(g: &Multigraph, f: &TwoFactor) -> Vec<Vec<VertexId>> {
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.n()];
    for &id in &f.edges {
        let e = g.edge(id);
        at[e.u].push(id);
        if !e.is_loop() {
            at[e.v].push(id);
        }
    }
    let mut used = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start_id in &f.edges {
        if used.contains(&start_id) {
            continue;
        }
        let e = g.edge(start_id);
        used.insert(start_id);
        if e.is_loop() {
            cycles.push(vec![e.u]);
            continue;
        }
        let mut seq = vec![e.u];
        let mut cur = e.v;
        while cur != e.u {
            seq.push(cur);
            let next = at[cur]
                .iter()
                .copied()
                .find(|id| !used.contains(id))
                .expect("degree-2 vertex has a second factor edge");
            used.insert(next);
            cur = g.edge(next).other(cur);
        }
        cycles.push(seq);
    }
    cycles
}
