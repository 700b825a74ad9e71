//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n m
//! u v
//! ...
//! ```
//! Writes emit `u < v` in lexicographic order; reads accept either order.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.order(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `n m` header"))?;
    let [n, m] = parse_pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        g.add_edge(u, v).map_err(|e| match e {
            Error::Usage(msg) => Error::parse(line, 1, msg),
            other => other,
        })?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(
            hline,
            1,
            format!("header declares {m} edges but {seen} were listed"),
        ));
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut out = [0usize; 2];
    let mut fields = 0;
    let mut col = 0;
    for tok in text.split_whitespace() {
        // 1-based column of this token
        let start = text[col..].find(tok).map(|p| p + col).unwrap_or(col);
        col = start + tok.len();
        if fields == 2 {
            return Err(Error::parse(
                line,
                start + 1,
                "expected exactly two integers",
            ));
        }
        out[fields] = tok.parse().map_err(|_| {
            Error::parse(
                line,
                start + 1,
                format!("`{tok}` is not a non-negative integer"),
            )
        })?;
        fields += 1;
    }
    if fields < 2 {
        return Err(Error::parse(
            line,
            text.len() + 1,
            "expected exactly two integers",
        ));
    }
    Ok(out)
}
