//! Multigraphs of class M2.
//!
//! Class M2 allows at most two parallel edges between any vertex pair and at
//! most one loop per vertex. A loop contributes 2 to its vertex's degree.
//! Graphs are immutable after construction; edge additions return a new
//! graph with the added edge receiving the next id.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An edge, stored with `u <= v`. A loop has `u == v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `w`; for a loop both endpoints are the vertex.
    pub fn other(&self, w: VertexId) -> VertexId {
        debug_assert!(w == self.u || w == self.v);
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    // adj[v] lists (neighbor, edge id); a loop at v appears once as (v, id).
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    loop_edge: Vec<Option<EdgeId>>,
}

impl Multigraph {
    /// Builds a graph from endpoint pairs; `(v, v)` denotes a loop. Edge ids
    /// are assigned in input order. Errors when an endpoint is out of range
    /// or a class-M2 bound (pair multiplicity 2, one loop per vertex) is
    /// exceeded.
    pub fn new(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Multigraph {
            n,
            edges: Vec::with_capacity(pairs.len()),
            adj: vec![Vec::new(); n],
            loop_edge: vec![None; n],
        };
        for &(a, b) in pairs {
            g.push_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Multigraph::new(n, &[]).expect("edge-free graph is always valid")
    }

    fn push_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(Error::input(format!(
                "edge ({a}, {b}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        if u == v {
            if self.loop_edge[u].is_some() {
                return Err(Error::input(format!("second loop at vertex {u}")));
            }
        } else if self.pair_multiplicity(u, v) >= 2 {
            return Err(Error::input(format!(
                "third parallel edge between {u} and {v}"
            )));
        }
        let id = self.edges.len();
        self.edges.push(Edge { id, u, v });
        if u == v {
            self.loop_edge[u] = Some(id);
            self.adj[u].push((u, id));
        } else {
            self.adj[u].push((v, id));
            self.adj[v].push((u, id));
        }
        Ok(())
    }

    /// A copy of this graph with one extra edge (id `m()`), validated
    /// against the class-M2 bounds.
    pub fn with_edge(&self, a: VertexId, b: VertexId) -> Result<Multigraph> {
        let mut g = self.clone();
        g.push_edge(a, b)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Incident (neighbor, edge id) pairs; a loop at `v` appears once.
    pub fn adj(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len() + usize::from(self.loop_edge[v].is_some())
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.loop_edge[v].is_some()
    }

    pub fn loop_at(&self, v: VertexId) -> Option<EdgeId> {
        self.loop_edge[v]
    }

    /// Number of parallel edges between distinct vertices `u` and `v`.
    pub fn pair_multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        debug_assert_ne!(u, v);
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member. Loops do not affect connectivity.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let keep = vec![true; self.n];
        self.components_within(&keep)
    }

    /// Connected components of the subgraph induced by `keep`, as sorted
    /// vertex lists ordered by smallest member.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<VertexId>> {
        debug_assert_eq!(keep.len(), self.n);
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for root in 0..self.n {
            if !keep[root] || seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(w, _) in &self.adj[v] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Bridges and leaves. A bridge is an edge lying on no cycle (loops and
    /// doubled edges never qualify). A leaf is a bridgeless block joined to
    /// the rest of the graph by exactly one bridge; the blocks are the
    /// components left after deleting all bridges.
    pub fn bridges_and_leaves(&self) -> LeafReport {
        let bridges = self.bridges();
        let mut is_bridge = vec![false; self.m()];
        for &e in &bridges {
            is_bridge[e] = true;
        }

        // Blocks: components of the graph minus its bridges.
        let mut block_of = vec![usize::MAX; self.n];
        let mut blocks: Vec<Vec<VertexId>> = Vec::new();
        let mut stack = Vec::new();
        for root in 0..self.n {
            if block_of[root] != usize::MAX {
                continue;
            }
            let b = blocks.len();
            block_of[root] = b;
            stack.push(root);
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v);
                for &(w, e) in &self.adj[v] {
                    if !is_bridge[e] && block_of[w] == usize::MAX {
                        block_of[w] = b;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            blocks.push(verts);
        }

        let mut incident = vec![0usize; blocks.len()];
        for &e in &bridges {
            incident[block_of[self.edges[e].u]] += 1;
            incident[block_of[self.edges[e].v]] += 1;
        }
        let leaves = blocks
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| incident[i] == 1)
            .map(|(_, verts)| verts)
            .collect();
        LeafReport { bridges, leaves }
    }

    fn bridges(&self) -> Vec<EdgeId> {
        // Iterative low-link DFS keyed on edge ids, so parallel edges and
        // loops are handled exactly: only the tree edge itself is excluded
        // when updating low values.
        const UNSEEN: u32 = u32::MAX;
        let mut disc = vec![UNSEEN; self.n];
        let mut low = vec![0u32; self.n];
        let mut timer: u32 = 0;
        let mut bridges = Vec::new();
        // Frame: (vertex, tree edge into it, next adjacency index).
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();

        for root in 0..self.n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, None, 0));
            while let Some(&mut (v, tree_edge, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let (w, e) = self.adj[v][*idx];
                    *idx += 1;
                    if Some(e) == tree_edge {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push(tree_edge.expect("non-root frame has a tree edge"));
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Edge additions that stay inside class M2: a loop at every loopless
    /// vertex (ascending), then one more edge for every pair below
    /// multiplicity 2 (lexicographic). This is the canonical scan order used
    /// by maximality checks and completion.
    pub fn add_candidates(&self) -> Vec<AddCandidate> {
        let mut out = Vec::new();
        for v in 0..self.n {
            if !self.has_loop(v) {
                out.push(AddCandidate::Loop(v));
            }
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.pair_multiplicity(u, v) < 2 {
                    out.push(AddCandidate::Pair(u, v));
                }
            }
        }
        out
    }

    /// Simple restriction: loops dropped, multiplicities collapsed to one.
    pub fn simple_restriction(&self) -> Multigraph {
        let mut pairs = Vec::new();
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !e.is_loop() && seen.insert((e.u, e.v)) {
                pairs.push((e.u, e.v));
            }
        }
        Multigraph::new(self.n, &pairs).expect("restriction of a valid graph is valid")
    }
}

/// One legal edge addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AddCandidate {
    Loop(VertexId),
    Pair(VertexId, VertexId),
}

impl AddCandidate {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        match *self {
            AddCandidate::Loop(v) => (v, v),
            AddCandidate::Pair(u, v) => (u, v),
        }
    }

    pub fn apply(&self, g: &Multigraph) -> Result<Multigraph> {
        let (a, b) = self.endpoints();
        g.with_edge(a, b)
    }
}

impl std::fmt::Display for AddCandidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            AddCandidate::Loop(v) => write!(f, "loop {v}"),
            AddCandidate::Pair(u, v) => write!(f, "e {u} {v}"),
        }
    }
}

/// Bridge list (ascending ids) and leaf blocks (sorted vertex lists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafReport {
    pub bridges: Vec<EdgeId>,
    pub leaves: Vec<Vec<VertexId>>,
}
