//! The `.gen` generator-matrix format.
//!
//! ```text
//! q k n
//! g00 g01 ... g0(n-1)
//! ...
//! g(k-1)0 ...
//! ```
//!
//! Residues are separated by single spaces and every line ends in `\n`.
//! Writing a loaded canonical file reproduces it byte for byte.

use std::fs;
use std::path::Path;

use crate::code::LinearCode;
use crate::error::{Error, Result};

pub fn to_gen_string(code: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", code.q(), code.k(), code.n());
    for i in 0..code.k() {
        let row: Vec<String> = code.row(i).iter().map(|s| s.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_gen(text: &str) -> Result<LinearCode> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [q, k, n] = dims[..] else {
        return Err(Error::Parse(format!("header must be `q k n`, got {header:?}")));
    };
    let q = u32::try_from(q).map_err(|_| Error::Parse("q too large".into()))?;
    let mut rows = Vec::with_capacity(k);
    for (i, line) in lines.by_ref().take(k).enumerate() {
        let row: Vec<u8> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("row {i}: bad residue {t:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(Error::Parse(format!("expected {k} rows, found {}", rows.len())));
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after generator rows".into()));
    }
    LinearCode::from_rows(q, &rows, n)
}

pub fn load_gen(path: impl AsRef<Path>) -> Result<LinearCode> {
    parse_gen(&fs::read_to_string(path)?)
}

pub fn store_gen(code: &LinearCode, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_gen_string(code))?;
    Ok(())
}
