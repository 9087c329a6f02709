//! Analysis of (2k+1)-regular graphs: the leaf bound that forces a
//! 2-factor, the four counting inequalities satisfied by every valid
//! witness, primitivity testing, and recovery of the extremal structure of
//! primitive graphs with the minimum number of leaves.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factor::{self, TwoFactor};
use crate::multigraph::{Multigraph, VertexId};
use crate::witness::{self, Witness};

/// Degree shared by all vertices, or none if the graph is irregular or
/// empty.
pub fn regular_degree(g: &Multigraph) -> Option<usize> {
    if g.n() == 0 {
        return None;
    }
    let d = g.degree(0);
    (1..g.n()).all(|v| g.degree(v) == d).then_some(d)
}

fn require_regular(g: &Multigraph, k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::input("regular analysis needs k >= 1"));
    }
    let d = 2 * k + 1;
    for v in 0..g.n() {
        if g.degree(v) != d {
            return Err(Error::input(format!(
                "vertex {v} has degree {}, expected {d}",
                g.degree(v)
            )));
        }
    }
    Ok(())
}

/// Outcome of the leaf bound: at most 2k leaves forces a 2-factor.
#[derive(Debug, Clone)]
pub enum LeafBound {
    FactorGuaranteed { leaves: usize, factor: TwoFactor },
    Inconclusive { leaves: usize, factor: Option<TwoFactor> },
}

/// Count leaves of a (2k+1)-regular graph and run the factor search. With
/// at most 2k leaves a 2-factor is guaranteed, so its absence is an
/// internal failure, not a negative answer.
pub fn leaf_bound_check(g: &Multigraph, k: usize) -> Result<LeafBound> {
    require_regular(g, k)?;
    let leaves = g.bridges_and_leaves().leaves.len();
    let factor = factor::find_two_factor(g);
    if leaves <= 2 * k {
        match factor {
            Some(factor) => Ok(LeafBound::FactorGuaranteed { leaves, factor }),
            None => Err(Error::invariant(format!(
                "{leaves} leaves <= {} guarantee a 2-factor, but none was found",
                2 * k
            ))),
        }
    } else {
        Ok(LeafBound::Inconclusive { leaves, factor })
    }
}

/// One evaluated counting inequality, `lhs >= rhs`.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub label: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }

    pub fn slack(&self) -> i64 {
        self.lhs - self.rhs
    }
}

/// Witness-based component counts on a (2k+1)-regular graph together with
/// the four counting inequalities they satisfy.
#[derive(Debug, Clone)]
pub struct RegularAnalysis {
    pub k: usize,
    pub witness: Witness,
    pub e_ab: usize,
    /// Components joined to A by exactly one edge and not joined to B.
    pub q1: usize,
    /// Components joined to A by exactly one edge and to B by at least one.
    pub q2: usize,
    /// Components joined to A by an odd number of at least three edges.
    pub q3: usize,
    pub inequalities: [Inequality; 4],
}

impl RegularAnalysis {
    pub fn q(&self) -> usize {
        self.witness.q
    }

    /// Human-readable report, one line per fact.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("regular of degree {} (k = {})", 2 * self.k + 1, self.k),
            self.witness.to_string(),
            format!(
                "e(A,B) = {}, q1 = {}, q2 = {}, q3 = {}",
                self.e_ab, self.q1, self.q2, self.q3
            ),
        ];
        for (i, ineq) in self.inequalities.iter().enumerate() {
            out.push(format!(
                "({}) {}: {} >= {}, slack {}",
                i + 1,
                ineq.label,
                ineq.lhs,
                ineq.rhs,
                ineq.slack()
            ));
        }
        out
    }
}

struct ComponentCounts {
    components: Vec<Vec<VertexId>>,
    a_edges: Vec<usize>,
    b_edges: Vec<usize>,
    e_ab: usize,
}

fn component_counts(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
) -> ComponentCounts {
    let n = g.n();
    let mut keep = vec![true; n];
    for &v in a.iter().chain(b.iter()) {
        keep[v] = false;
    }
    let components = g.components_within(&keep);
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut a_edges = vec![0usize; components.len()];
    let mut b_edges = vec![0usize; components.len()];
    let mut e_ab = 0;
    for e in g.edges() {
        let ua = a.contains(&e.u);
        let va = a.contains(&e.v);
        let ub = b.contains(&e.u);
        let vb = b.contains(&e.v);
        if (ua && vb) || (va && ub) {
            e_ab += 1;
        } else if ua && comp_of[e.v] != usize::MAX {
            a_edges[comp_of[e.v]] += 1;
        } else if va && comp_of[e.u] != usize::MAX {
            a_edges[comp_of[e.u]] += 1;
        } else if ub && comp_of[e.v] != usize::MAX {
            b_edges[comp_of[e.v]] += 1;
        } else if vb && comp_of[e.u] != usize::MAX {
            b_edges[comp_of[e.u]] += 1;
        }
    }
    ComponentCounts { components, a_edges, b_edges, e_ab }
}

/// Classify the components seen by a valid witness (A, B) on a
/// (2k+1)-regular graph and evaluate the four counting inequalities. All
/// four hold for every valid witness, as does the weighted-sum identity
/// 2·s4 = (2k+1)·s1 + (2k−1)·s2 + 2·s3 on their slacks; a violation is
/// reported as an internal error.
pub fn inequality_analysis(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    k: usize,
) -> Result<RegularAnalysis> {
    require_regular(g, k)?;
    let w = witness::check_witness(g, a, b, 2)?;
    if !w.valid() {
        return Err(Error::input(format!(
            "(A, B) is not a valid witness: q = {} does not exceed bound {}",
            w.q, w.bound
        )));
    }
    let counts = component_counts(g, a, b);
    let (mut q1, mut q2, mut q3) = (0i64, 0i64, 0i64);
    for i in 0..counts.components.len() {
        match (counts.a_edges[i], counts.b_edges[i]) {
            (1, 0) => q1 += 1,
            (1, _) => q2 += 1,
            (m, _) if m >= 3 && m % 2 == 1 => q3 += 1,
            _ => {}
        }
    }
    if q1 + q2 + q3 != w.q as i64 {
        return Err(Error::invariant(format!(
            "component classes {q1} + {q2} + {q3} do not add up to q = {}",
            w.q
        )));
    }
    let d = 2 * k as i64 + 1;
    let (na, nb, e_ab) = (a.len() as i64, b.len() as i64, counts.e_ab as i64);
    let inequalities = [
        Inequality {
            label: "q + e(A,B) >= (2k-1)|A| + 2|B| + 2",
            lhs: w.q as i64 + e_ab,
            rhs: (d - 2) * na + 2 * nb + 2,
        },
        Inequality {
            label: "(2k+1)|A| >= e(A,B) + q1 + q2 + 3 q3",
            lhs: d * na,
            rhs: e_ab + q1 + q2 + 3 * q3,
        },
        Inequality {
            label: "(2k+1)|B| >= e(A,B) + q2",
            lhs: d * nb,
            rhs: e_ab + q2,
        },
        Inequality {
            label: "q1 >= (2k+1) + (2k-2) q3",
            lhs: q1,
            rhs: d + (d - 3) * q3,
        },
    ];
    for ineq in &inequalities {
        if !ineq.holds() {
            return Err(Error::invariant(format!(
                "inequality {} fails on a valid witness: {} < {}",
                ineq.label, ineq.lhs, ineq.rhs
            )));
        }
    }
    let s: Vec<i64> = inequalities.iter().map(Inequality::slack).collect();
    if 2 * s[3] != d * s[0] + (d - 2) * s[1] + 2 * s[2] {
        return Err(Error::invariant(format!(
            "weighted-sum identity fails: 2*{} != {d}*{} + {}*{} + 2*{}",
            s[3],
            s[0],
            d - 2,
            s[1],
            s[2]
        )));
    }
    Ok(RegularAnalysis {
        k,
        witness: w,
        e_ab: counts.e_ab,
        q1: q1 as usize,
        q2: q2 as usize,
        q3: q3 as usize,
        inequalities,
    })
}

/// A (2k+1)-regular graph is primitive when it has no 2-factor.
pub fn primitivity_check(g: &Multigraph, k: usize) -> Result<bool> {
    require_regular(g, k)?;
    Ok(factor::find_two_factor(g).is_none())
}

/// The structure of an extremal primitive graph: disjoint independent
/// sets with |A| = |B| + 1 such that every remaining component has exactly
/// one A-edge, 2k+1 of them avoiding B and all others meeting B exactly
/// once.
#[derive(Debug, Clone)]
pub struct ExtremalStructure {
    pub a: BTreeSet<VertexId>,
    pub b: BTreeSet<VertexId>,
    /// Components with one A-edge and no B-edge; always 2k+1 of them.
    pub leaf_components: Vec<Vec<VertexId>>,
    /// Components with exactly one A-edge and exactly one B-edge.
    pub linked_components: Vec<Vec<VertexId>>,
}

/// Search for the extremal structure with |A| up to 3.
pub fn extremal_structure(g: &Multigraph, k: usize) -> Result<Option<ExtremalStructure>> {
    extremal_structure_with_cap(g, k, 3)
}

/// Search a primitive (2k+1)-regular graph with exactly 2k+1 leaves for
/// its extremal decomposition, trying |A| = 1, 2, … up to `cap` and
/// returning the first structure found in lexicographic order. For k = 1
/// some extremal graphs fall outside this shape, so none may be found.
pub fn extremal_structure_with_cap(
    g: &Multigraph,
    k: usize,
    cap: usize,
) -> Result<Option<ExtremalStructure>> {
    require_regular(g, k)?;
    if factor::find_two_factor(g).is_some() {
        return Err(Error::input("graph has a 2-factor, so it is not primitive"));
    }
    let leaves = g.bridges_and_leaves().leaves.len();
    if leaves != 2 * k + 1 {
        return Err(Error::input(format!(
            "extremal structure needs exactly {} leaves, found {leaves}",
            2 * k + 1
        )));
    }
    let vertices: Vec<VertexId> = (0..g.n()).collect();
    for a_size in 1..=cap.min(g.n()) {
        let mut found = None;
        for_each_combination(&vertices, a_size, &mut |a_set| {
            if !independent(g, a_set) {
                return false;
            }
            let rest: Vec<VertexId> =
                (0..g.n()).filter(|v| !a_set.contains(v)).collect();
            let mut hit = false;
            for_each_combination(&rest, a_size - 1, &mut |b_set| {
                if !independent(g, b_set) {
                    return false;
                }
                if let Some(s) = classify_structure(g, k, a_set, b_set) {
                    found = Some(s);
                    hit = true;
                }
                hit
            });
            hit
        });
        if let Some(s) = found {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// No loops at and no edges between the given vertices.
fn independent(g: &Multigraph, set: &[VertexId]) -> bool {
    set.iter().all(|&v| {
        g.loop_at(v).is_none()
            && g.adj(v).iter().all(|&(u, _)| u == v || !set.contains(&u))
    })
}

fn classify_structure(
    g: &Multigraph,
    k: usize,
    a_set: &[VertexId],
    b_set: &[VertexId],
) -> Option<ExtremalStructure> {
    let a: BTreeSet<VertexId> = a_set.iter().copied().collect();
    let b: BTreeSet<VertexId> = b_set.iter().copied().collect();
    let counts = component_counts(g, &a, &b);
    let mut leaf_components = Vec::new();
    let mut linked_components = Vec::new();
    for (i, comp) in counts.components.iter().enumerate() {
        match (counts.a_edges[i], counts.b_edges[i]) {
            (1, 0) => leaf_components.push(comp.clone()),
            (1, 1) => linked_components.push(comp.clone()),
            _ => return None,
        }
    }
    if leaf_components.len() != 2 * k + 1 {
        return None;
    }
    Some(ExtremalStructure { a, b, leaf_components, linked_components })
}

/// Call `f` on every size-`k` combination of `items` in lexicographic
/// order until it returns true; the return value reports early stop.
fn for_each_combination(
    items: &[VertexId],
    k: usize,
    f: &mut impl FnMut(&[VertexId]) -> bool,
) -> bool {
    fn recurse(
        items: &[VertexId],
        k: usize,
        start: usize,
        chosen: &mut Vec<VertexId>,
        f: &mut impl FnMut(&[VertexId]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let needed = k - chosen.len();
        let mut i = start;
        while i + needed <= items.len() {
            chosen.push(items[i]);
            if recurse(items, k, i + 1, chosen, f) {
                chosen.pop();
                return true;
            }
            chosen.pop();
            i += 1;
        }
        false
    }
    recurse(items, k, 0, &mut Vec::new(), f)
}
