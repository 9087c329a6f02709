//! The `m2graph v1` text format and DOT export.
//!
//! ```text
//! m2graph v1
//! n 4
//! e 0 3
//! loop 0
//! ```
//!
//! Line 1 is the exact header, line 2 declares the vertex count, and each
//! following line is one edge in id order (`e u v` or `loop v`). `#` starts
//! a comment line; comment and blank lines are accepted after the header
//! and never emitted by the serializer, so parse/serialize round-trips are
//! byte-stable.

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

const HEADER: &str = "m2graph v1";

pub fn parse(text: &str) -> Result<Multigraph> {
    let mut lines = text.lines().enumerate();

    let (_, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input, expected header"))?;
    if first.trim_end() != HEADER {
        return Err(parse_err(1, format!("expected `{HEADER}` header")));
    }

    let mut n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    // Incremental class-M2 accounting so violations carry a line number.
    let mut staged: Option<Multigraph> = None;

    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("non-empty line has a first token");
        match keyword {
            "n" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate `n` line"));
                }
                let count = parse_usize(words.next(), line_no, "vertex count")?;
                expect_end(words.next(), line_no)?;
                n = Some(count);
                staged = Some(Multigraph::empty(count));
            }
            "e" | "loop" => {
                let Some(g) = staged.as_mut() else {
                    return Err(parse_err(line_no, "edge line before `n` line"));
                };
                let (u, v) = if keyword == "e" {
                    let u = parse_usize(words.next(), line_no, "endpoint")?;
                    let v = parse_usize(words.next(), line_no, "endpoint")?;
                    if u == v {
                        return Err(parse_err(line_no, "use `loop v` for loops"));
                    }
                    (u, v)
                } else {
                    let v = parse_usize(words.next(), line_no, "loop vertex")?;
                    (v, v)
                };
                expect_end(words.next(), line_no)?;
                *g = g
                    .with_edge(u, v)
                    .map_err(|e| parse_err(line_no, e.to_string()))?;
                pairs.push((u, v));
            }
            other => {
                return Err(parse_err(line_no, format!("unknown directive `{other}`")));
            }
        }
    }

    let n = n.ok_or_else(|| parse_err(2, "missing `n` line"))?;
    Multigraph::new(n, &pairs).map_err(|e| Error::input(e.to_string()))
}

pub fn serialize(g: &Multigraph) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", g.n()));
    for e in g.edges() {
        if e.is_loop() {
            out.push_str(&format!("loop {}\n", e.u));
        } else {
            out.push_str(&format!("e {} {}\n", e.u, e.v));
        }
    }
    out
}

/// Graphviz export; parallel edges appear as repeated lines, loops as
/// self-edges, and isolated vertices as bare declarations.
pub fn to_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph m2 {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("  {} -- {};\n", e.u, e.v));
    }
    out.push_str("}\n");
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(word: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let word = word.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    word.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{word}`")))
}

fn expect_end(word: Option<&str>, line: usize) -> Result<()> {
    match word {
        None => Ok(()),
        Some(extra) => Err(parse_err(line, format!("unexpected token `{extra}`"))),
    }
}
