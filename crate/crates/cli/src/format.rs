//! Text formats for problems and graphs.
//!
//! Matrix file:
//!
//! ```text
//! # comment
//! n m
//! <n rows of m integers; column i is v_i>
//! bounds:
//! <m lines "a_i b_i">
//! target:
//! <n integers>
//! ```
//!
//! Graph file (vertices are 1-based, edge order defines edge indices):
//!
//! ```text
//! graph n            # or: digraph n
//! i j
//! ...
//! s: <n integers>    # or r:
//! bounds:
//! <one line "a b" per edge>
//! ```
//!
//! Sections after the header are optional. `#` starts a comment anywhere.

use num_bigint::BigInt;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(k, l)| {
            let body = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            (!toks.is_empty()).then_some((k + 1, toks))
        })
        .collect()
}

fn int(line: usize, tok: &str) -> Result<BigInt, ParseError> {
    tok.parse().or_else(|_| err(line, format!("expected an integer, found `{tok}`")))
}

fn count(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| err(line, format!("expected a non-negative count, found `{tok}`")))
}

/// Collects exactly `k` integers starting at `lines[*pos]`, possibly across lines.
/// `first` holds integers already found on the section header line.
fn take_ints(
    lines: &[(usize, Vec<&str>)],
    pos: &mut usize,
    mut first: Vec<BigInt>,
    k: usize,
    what: &str,
    header: usize,
) -> Result<Vec<BigInt>, ParseError> {
    while first.len() < k {
        let Some((ln, toks)) = lines.get(*pos) else {
            return err(header, format!("{what}: expected {k} integers, found {}", first.len()));
        };
        if toks[0].ends_with(':') {
            return err(*ln, format!("{what}: expected {k} integers, found {}", first.len()));
        }
        for t in toks {
            first.push(int(*ln, t)?);
        }
        *pos += 1;
    }
    if first.len() != k {
        return err(header, format!("{what}: expected {k} integers, found {}", first.len()));
    }
    Ok(first)
}

fn take_bounds(lines: &[(usize, Vec<&str>)], pos: &mut usize, m: usize, header: usize) -> Result<Vec<(BigInt, BigInt)>, ParseError> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let Some((ln, toks)) = lines.get(*pos) else {
            return err(header, format!("bounds: expected {m} lines, found {}", out.len()));
        };
        if toks.len() != 2 {
            return err(*ln, "bounds: expected two integers `a b`");
        }
        let (a, b) = (int(*ln, toks[0])?, int(*ln, toks[1])?);
        if a > b {
            return err(*ln, format!("bounds: lower {a} exceeds upper {b}"));
        }
        out.push((a, b));
        *pos += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Vec<BigInt>>,
    pub bounds: Option<Vec<(BigInt, BigInt)>>,
    pub target: Option<Vec<BigInt>>,
}

impl MatrixFile {
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.entries.iter().map(|r| r[j].clone()).collect()).collect()
    }
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile, ParseError> {
    let lines = content_lines(text);
    let Some((ln, header)) = lines.first() else {
        return err(0, "empty input");
    };
    if header.len() != 2 {
        return err(*ln, "expected header `n m`");
    }
    let (rows, cols) = (count(*ln, header[0])?, count(*ln, header[1])?);
    let mut pos = 1;
    let mut entries = Vec::with_capacity(rows);
    if cols == 0 {
        entries = vec![Vec::new(); rows];
    } else {
        for r in 0..rows {
            let Some((ln, toks)) = lines.get(pos) else {
                return err(0, format!("expected {rows} matrix rows, found {r}"));
            };
            if toks.len() != cols {
                return err(*ln, format!("expected {cols} entries, found {}", toks.len()));
            }
            entries.push(toks.iter().map(|t| int(*ln, t)).collect::<Result<Vec<_>, _>>()?);
            pos += 1;
        }
    }
    let (mut bounds, mut target) = (None, None);
    while let Some((ln, toks)) = lines.get(pos) {
        pos += 1;
        match toks[0] {
            "bounds:" if bounds.is_none() => {
                if toks.len() > 1 {
                    return err(*ln, "bounds: values go on the following lines");
                }
                bounds = Some(take_bounds(&lines, &mut pos, cols, *ln)?);
            }
            "target:" if target.is_none() => {
                let inline = toks[1..].iter().map(|t| int(*ln, t)).collect::<Result<Vec<_>, _>>()?;
                target = Some(take_ints(&lines, &mut pos, inline, rows, "target", *ln)?);
            }
            other => return err(*ln, format!("unexpected `{other}`")),
        }
    }
    Ok(MatrixFile {
        rows,
        cols,
        entries,
        bounds,
        target,
    })
}

pub fn write_matrix(f: &MatrixFile) -> String {
    let mut out = String::new();
    let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{} {}", f.rows, f.cols).unwrap();
    if f.cols > 0 {
        for row in &f.entries {
            writeln!(out, "{}", join(row)).unwrap();
        }
    }
    if let Some(bounds) = &f.bounds {
        writeln!(out, "bounds:").unwrap();
        for (a, b) in bounds {
            writeln!(out, "{a} {b}").unwrap();
        }
    }
    if let Some(t) = &f.target {
        writeln!(out, "target:").unwrap();
        writeln!(out, "{}", join(t)).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Graph,
    Digraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub kind: GraphKind,
    pub n: usize,
    /// 0-based endpoints in file order.
    pub edges: Vec<(usize, usize)>,
    /// Per-vertex vector from an `s:` or `r:` line.
    pub vector: Option<Vec<BigInt>>,
    pub bounds: Option<Vec<(BigInt, BigInt)>>,
}

/// Whether the text starts with a `graph` or `digraph` header.
pub fn is_graph_text(text: &str) -> bool {
    content_lines(text)
        .first()
        .is_some_and(|(_, t)| t[0] == "graph" || t[0] == "digraph")
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let lines = content_lines(text);
    let Some((ln, header)) = lines.first() else {
        return err(0, "empty input");
    };
    let kind = match header[0] {
        "graph" => GraphKind::Graph,
        "digraph" => GraphKind::Digraph,
        other => return err(*ln, format!("expected `graph n` or `digraph n`, found `{other}`")),
    };
    if header.len() != 2 {
        return err(*ln, "expected header `graph n` or `digraph n`");
    }
    let n = count(*ln, header[1])?;
    let mut pos = 1;
    let mut edges = Vec::new();
    while let Some((ln, toks)) = lines.get(pos) {
        if toks[0].ends_with(':') {
            break;
        }
        if toks.len() != 2 {
            return err(*ln, "expected an edge `i j`");
        }
        let (i, j) = (count(*ln, toks[0])?, count(*ln, toks[1])?);
        if i == 0 || j == 0 || i > n || j > n {
            return err(*ln, format!("vertex out of range 1..{n}"));
        }
        edges.push((i - 1, j - 1));
        pos += 1;
    }
    let (mut vector, mut bounds) = (None, None);
    while let Some((ln, toks)) = lines.get(pos) {
        pos += 1;
        match toks[0] {
            "s:" | "r:" if vector.is_none() => {
                let inline = toks[1..].iter().map(|t| int(*ln, t)).collect::<Result<Vec<_>, _>>()?;
                vector = Some(take_ints(&lines, &mut pos, inline, n, toks[0].trim_end_matches(':'), *ln)?);
            }
            "bounds:" if bounds.is_none() => {
                if toks.len() > 1 {
                    return err(*ln, "bounds: values go on the following lines");
                }
                bounds = Some(take_bounds(&lines, &mut pos, edges.len(), *ln)?);
            }
            other => return err(*ln, format!("unexpected `{other}`")),
        }
    }
    Ok(GraphFile {
        kind,
        n,
        edges,
        vector,
        bounds,
    })
}

pub fn write_graph(f: &GraphFile) -> String {
    let mut out = String::new();
    let kw = match f.kind {
        GraphKind::Graph => "graph",
        GraphKind::Digraph => "digraph",
    };
    writeln!(out, "{kw} {}", f.n).unwrap();
    for (i, j) in &f.edges {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    if let Some(v) = &f.vector {
        let label = match f.kind {
            GraphKind::Graph => "s:",
            GraphKind::Digraph => "r:",
        };
        let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{label} {}", vals.join(" ")).unwrap();
    }
    if let Some(bounds) = &f.bounds {
        writeln!(out, "bounds:").unwrap();
        for (a, b) in bounds {
            writeln!(out, "{a} {b}").unwrap();
        }
    }
    out
}
