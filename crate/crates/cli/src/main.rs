//! `m2factor`: file-oriented front end for the graph-factors crate.
//!
//! Every command reads `m2graph v1` text from a path or from standard
//! input when the path is `-`. Exit codes are stable: 0 success (factor or
//! witness found, verdict positive), 1 negative answer (no factor, no
//! witness, not maximal), 2 disagreement between maximality methods,
//! 64 parse/usage errors, 65 cap refusals, 70 internal invariant
//! violations.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_factors::chains::{classify, verify_entering_edges, Color, Coloring};
use graph_factors::factor::{brute_force_k_factor, find_two_factor, OracleCaps};
use graph_factors::format;
use graph_factors::generators::{
    maximal_graph, primitive_graph, random_m2, sylvester_graph, BipartiteSpec, ComponentSpec,
    Expansion,
};
use graph_factors::maximal::{is_maximal_direct, is_maximal_structural, DirectResult};
use graph_factors::multigraph::AddCandidate;
use graph_factors::regular::{extremal_structure, inequality_analysis, leaf_bound_check, LeafBound};
use graph_factors::witness::{extract_witness, search_witness_with_cap};
use graph_factors::{Error, Multigraph, Result};

#[derive(Parser)]
#[command(
    name = "m2factor",
    version,
    about = "2-factor existence, witnesses, maximality and chain analysis \
             for multigraphs with at most doubled edges and single loops"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph file and print a summary.
    Check {
        /// Graph file in m2graph v1 format, or `-` for standard input.
        input: String,
        /// Also write a Graphviz rendering to this path.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Find a 2-factor (exit 1 when none exists).
    Find {
        input: String,
    },
    /// Search for sets (A, B) certifying that no 2-factor exists.
    Witness {
        input: String,
        /// Factor degree in the bound q <= 2e(A,A) - k|A| + k|B| + e(A,C).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Only consider independent sets A.
        #[arg(long)]
        independent: bool,
        /// Largest vertex count the exhaustive search will accept.
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Decide edge-maximality among 2-factor-free graphs.
    Maximal {
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Classify vertices by alternating chains from a root vertex.
    Chains {
        input: String,
        /// File with one line per edge id: `red` or `blue`.
        #[arg(long, value_name = "FILE")]
        colors: PathBuf,
        /// Vertex the chains start from.
        #[arg(long)]
        root: usize,
    },
    /// Leaf bound and counting inequalities on a (2k+1)-regular graph.
    AnalyzeRegular {
        input: String,
        /// Regularity parameter: every vertex must have degree 2k+1.
        #[arg(long)]
        k: usize,
        /// Also search for the extremal structure when the graph is
        /// primitive with exactly 2k+1 leaves.
        #[arg(long)]
        structure: bool,
    },
    /// Emit a generated graph in m2graph v1 format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Brute-force k-factor search, guarded by FACTOR_ORACLE_CAP_N/M.
    Oracle {
        input: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Structural,
    Both,
}

#[derive(Args)]
struct EmitArgs {
    /// Also write a Graphviz rendering to this path.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Hub joined by bridges to 2k+1 blobs: (2k+1)-regular, no 2-factor.
    Sylvester {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// (2k+1)-regular primitive graph from a bipartite core.
    Primitive {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a_size: usize,
        #[arg(long)]
        b_size: usize,
        /// Core edge as A:B:MULT (repeatable), e.g. `--edge 0:0:2`.
        #[arg(long = "edge", value_name = "A:B:MULT", value_parser = parse_core_edge)]
        edges: Vec<(usize, usize, usize)>,
        /// Replace the A:B core edge by a complete graph minus an edge.
        #[arg(long = "expand-edge", value_name = "A:B", value_parser = parse_expand_edge)]
        expand_edges: Vec<Expansion>,
        /// Replace a B-vertex by a triangle (k = 1 only).
        #[arg(long = "expand-vertex", value_name = "B", value_parser = parse_expand_vertex)]
        expand_vertices: Vec<Expansion>,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Edge-maximal 2-factor-free graph from its decomposition data.
    Maximal {
        #[arg(long)]
        a_size: usize,
        #[arg(long)]
        b_size: usize,
        /// Component as SIZE:X,Y,... with the A-vertices it is matched to
        /// (repeatable), e.g. `--component 3:0` or `--component 1:2`.
        #[arg(long = "component", value_name = "SIZE:IDS", value_parser = parse_component)]
        components: Vec<ComponentSpec>,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Seed-deterministic random graph with doubled-edge and loop density.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_density: f64,
        #[arg(long, default_value_t = 0.2)]
        loop_density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emit: EmitArgs,
    },
}

fn parse_core_edge(text: &str) -> std::result::Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err("expected A:B:MULT".into());
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| format!("`{p}` is not a number")))
        .collect::<std::result::Result<_, String>>()?;
    Ok((nums[0], nums[1], nums[2]))
}

fn parse_expand_edge(text: &str) -> std::result::Result<Expansion, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err("expected A:B".into());
    }
    let a = parts[0].parse().map_err(|_| "A must be a number")?;
    let b = parts[1].parse().map_err(|_| "B must be a number")?;
    Ok(Expansion::Edge { a, b })
}

fn parse_expand_vertex(text: &str) -> std::result::Result<Expansion, String> {
    let b = text.parse().map_err(|_| "B must be a number")?;
    Ok(Expansion::Vertex { b })
}

fn parse_component(text: &str) -> std::result::Result<ComponentSpec, String> {
    let (size_text, ids_text) = match text.split_once(':') {
        Some((s, rest)) => (s, Some(rest)),
        None => (text, None),
    };
    let size = size_text
        .parse()
        .map_err(|_| format!("`{size_text}` is not a size"))?;
    let matched_to = match ids_text {
        None | Some("") => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|p| p.parse().map_err(|_| format!("`{p}` is not an A index")))
            .collect::<std::result::Result<_, String>>()?,
    };
    Ok(ComponentSpec { size, matched_to })
}

/// Restore the default `SIGPIPE` disposition so that piping output into a
/// consumer that exits early (`m2factor ... | head`) terminates this process
/// quietly instead of panicking on a broken-pipe write error.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::Input(_) | Error::Precondition(_) => 64,
                Error::Cap(_) => 65,
                Error::Invariant(_) => 70,
            })
        }
    }
}

fn read_graph(path: &str) -> Result<Multigraph> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::input(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("reading {path}: {e}")))?
    };
    format::parse(&text)
}

fn id_list(ids: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = ids.into_iter().map(|i| i.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(" ")
    }
}

fn candidate_text(c: &AddCandidate) -> String {
    match *c {
        AddCandidate::Loop(v) => format!("loop {v}"),
        AddCandidate::Pair(u, v) => format!("e {u} {v}"),
    }
}

fn emit(g: &Multigraph, emit: &EmitArgs) -> Result<u8> {
    print!("{}", format::serialize(g));
    if let Some(path) = &emit.dot {
        std::fs::write(path, format::to_dot(g))
            .map_err(|e| Error::input(format!("writing {}: {e}", path.display())))?;
    }
    Ok(0)
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Check { input, dot } => {
            let g = read_graph(&input)?;
            let loops = g.edges().iter().filter(|e| e.is_loop()).count();
            let mut doubles = 0;
            for u in 0..g.n() {
                for v in (u + 1)..g.n() {
                    if g.pair_multiplicity(u, v) == 2 {
                        doubles += 1;
                    }
                }
            }
            println!("ok n={} m={} loops={loops} doubled-pairs={doubles}", g.n(), g.m());
            if let Some(path) = dot {
                std::fs::write(&path, format::to_dot(&g))
                    .map_err(|e| Error::input(format!("writing {}: {e}", path.display())))?;
            }
            Ok(0)
        }
        Command::Find { input } => {
            let g = read_graph(&input)?;
            match find_two_factor(&g) {
                Some(f) => {
                    println!("factor: {}", id_list(f.edges.iter().copied()));
                    Ok(0)
                }
                None => {
                    println!("no-2-factor");
                    Ok(1)
                }
            }
        }
        Command::Witness {
            input,
            k,
            independent,
            cap,
        } => {
            let g = read_graph(&input)?;
            match search_witness_with_cap(&g, k, independent, cap)? {
                Some(w) => {
                    println!("{}", w.certificate());
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(1)
                }
            }
        }
        Command::Maximal { input, method } => {
            let g = read_graph(&input)?;
            let mut verdicts = Vec::new();
            if matches!(method, Method::Direct | Method::Both) {
                let result = is_maximal_direct(&g);
                println!("maximal: {}", if result.is_maximal() { "yes" } else { "no" });
                match &result {
                    DirectResult::Maximal => {}
                    DirectResult::HasTwoFactor(f) => {
                        println!("has 2-factor: {}", id_list(f.edges.iter().copied()));
                    }
                    DirectResult::Extendable(c) => {
                        println!("extendable by: {}", candidate_text(c));
                    }
                }
                verdicts.push(result.is_maximal());
            }
            if matches!(method, Method::Structural | Method::Both) {
                let report = is_maximal_structural(&g)?;
                println!("maximal: {}", if report.maximal { "yes" } else { "no" });
                for line in report.lines() {
                    println!("  {line}");
                }
                verdicts.push(report.maximal);
            }
            if verdicts.len() == 2 && verdicts[0] != verdicts[1] {
                eprintln!("direct and structural methods disagree");
                return Ok(2);
            }
            Ok(u8::from(!verdicts[0]))
        }
        Command::Chains { input, colors, root } => {
            let g = read_graph(&input)?;
            let coloring = read_colors(&g, &colors)?;
            let labeling = classify(&g, &coloring, root)?;
            for (v, label) in labeling.labels().iter().enumerate() {
                println!("{v} {label}");
            }
            let report = verify_entering_edges(&g, &coloring, &labeling);
            for entry in &report.components {
                println!(
                    "component {}: entering {}{}",
                    id_list(entry.component.iter().copied()),
                    id_list(entry.entering.iter().copied()),
                    if entry.well_formed { "" } else { " (malformed)" }
                );
            }
            if report.ok() {
                println!("entering-edges: ok");
                Ok(0)
            } else {
                Err(Error::invariant(
                    "a BR-component away from the root lacks a unique entering edge",
                ))
            }
        }
        Command::AnalyzeRegular { input, k, structure } => {
            let g = read_graph(&input)?;
            match leaf_bound_check(&g, k)? {
                LeafBound::FactorGuaranteed { leaves, factor } => {
                    println!("leaves: {leaves} (at most {}, 2-factor guaranteed)", 2 * k);
                    println!("factor: {}", id_list(factor.edges.iter().copied()));
                    Ok(0)
                }
                LeafBound::Inconclusive {
                    leaves,
                    factor: Some(factor),
                } => {
                    println!("leaves: {leaves} (above the bound, factor found anyway)");
                    println!("factor: {}", id_list(factor.edges.iter().copied()));
                    Ok(0)
                }
                LeafBound::Inconclusive { leaves, factor: None } => {
                    println!("leaves: {leaves}");
                    println!("primitive: no 2-factor");
                    let w = extract_witness(&g)?;
                    let analysis = inequality_analysis(&g, &w.a, &w.b, k)?;
                    for line in analysis.lines() {
                        println!("{line}");
                    }
                    if structure {
                        match extremal_structure(&g, k)? {
                            Some(s) => {
                                println!("structure A: {}", id_list(s.a.iter().copied()));
                                println!("structure B: {}", id_list(s.b.iter().copied()));
                                println!(
                                    "leaf components: {}, linked components: {}",
                                    s.leaf_components.len(),
                                    s.linked_components.len()
                                );
                            }
                            None => println!("structure: none within |A| <= 3"),
                        }
                    }
                    Ok(0)
                }
            }
        }
        Command::Generate { family } => match family {
            Family::Sylvester { k, emit: e } => emit(&sylvester_graph(k)?, &e),
            Family::Primitive {
                k,
                a_size,
                b_size,
                edges,
                expand_edges,
                expand_vertices,
                emit: e,
            } => {
                let spec = BipartiteSpec { a_size, b_size, edges };
                let expansions: Vec<Expansion> =
                    expand_edges.into_iter().chain(expand_vertices).collect();
                emit(&primitive_graph(k, &spec, &expansions)?, &e)
            }
            Family::Maximal {
                a_size,
                b_size,
                components,
                emit: e,
            } => emit(&maximal_graph(a_size, b_size, &components)?, &e),
            Family::Random {
                n,
                edge_density,
                loop_density,
                seed,
                emit: e,
            } => emit(&random_m2(n, edge_density, loop_density, seed)?, &e),
        },
        Command::Oracle { input, k } => {
            let g = read_graph(&input)?;
            match brute_force_k_factor(&g, k, OracleCaps::from_env())? {
                Some(edges) => {
                    println!("factor: {}", id_list(edges.iter().copied()));
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(1)
                }
            }
        }
    }
}

fn read_colors(g: &Multigraph, path: &PathBuf) -> Result<Coloring> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("reading {}: {e}", path.display())))?;
    let mut colors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        colors.push(match line {
            "red" => Color::Red,
            "blue" => Color::Blue,
            other => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected `red` or `blue`, found `{other}`"),
                })
            }
        });
    }
    Coloring::new(g, colors)
}
