//! Shared inputs for the benchmark targets; see `benches/factors.rs`.

use graph_factors::generators::{maximal_graph, random_regular, ComponentSpec};
use graph_factors::Multigraph;

/// A 4-regular graph on `n` vertices (guaranteed 2-factor).
pub fn even_regular(n: usize, seed: u64) -> Multigraph {
    for attempt in 0..100 {
        if let Ok(g) = random_regular(n, 4, seed + attempt) {
            return g;
        }
    }
    panic!("no 4-regular graph found near seed {seed}");
}

/// A mid-sized edge-maximal 2-factor-free graph: |A| = 5, |B| = 4, four
/// singleton components matched to distinct A-vertices (n = 13).
pub fn midsize_maximal() -> Multigraph {
    let components: Vec<ComponentSpec> = (0..4)
        .map(|x| ComponentSpec { size: 1, matched_to: vec![x] })
        .collect();
    maximal_graph(5, 4, &components).expect("spec satisfies the structural conditions")
}
