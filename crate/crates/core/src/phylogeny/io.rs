//! Matrix text format: header `m n`, then `m` rows of `n` cells written as
//! `0`/`1` with optional whitespace between cells. Lines starting with `#`
//! are comments.

use super::BinaryCharacterMatrix;
use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<BinaryCharacterMatrix> {
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
        .ok_or_else(|| Error::parse(1, 1, "missing `m n` header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |tok: &str| -> Result<usize> {
        match tok.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::parse(
                hline,
                header.find(tok).unwrap_or(0) + 1,
                format!("`{tok}` is not a positive integer"),
            )),
        }
    };
    if dims.len() != 2 {
        return Err(Error::parse(hline, 1, "header must be `m n`"));
    }
    let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, l) in lines {
        last_line = line;
        if rows.len() == m {
            return Err(Error::parse(line, 1, format!("more than {m} rows")));
        }
        let mut row = Vec::with_capacity(n);
        for (col, ch) in l.chars().enumerate() {
            match ch {
                '0' | '1' if row.len() == n => {
                    return Err(Error::parse(
                        line,
                        col + 1,
                        format!("row has more than {n} cells"),
                    ))
                }
                '0' => row.push(false),
                '1' => row.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::parse(
                        line,
                        col + 1,
                        format!("unexpected character `{c}`; cells must be 0 or 1"),
                    ))
                }
            }
        }
        if row.len() != n {
            return Err(Error::parse(
                line,
                l.chars().count() + 1,
                format!("row has {} cells, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(Error::parse(
            last_line + 1,
            1,
            format!("expected {m} rows, found {}", rows.len()),
        ));
    }
    BinaryCharacterMatrix::from_rows(&rows)
}

pub fn write_matrix(mtx: &BinaryCharacterMatrix) -> String {
    let mut out = format!("{} {}\n", mtx.species(), mtx.characters());
    for i in 0..mtx.species() {
        out.extend(mtx.row(i).iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}
