//! Text formats: parity-check files, received-value files, and sweep output.
//!
//! A parity-check file is ASCII with one matrix row per line made of `0`
//! and `1` characters, no separators. Lines starting with `#` are comments
//! and blank lines are ignored.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::harness::sweep::SimRow;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a parity-check file. Rank deficiency is reported on
/// stderr but not rejected here.
pub fn load_parity_check(path: impl AsRef<Path>) -> Result<BinaryMatrix> {
    let path = path.as_ref();
    let m = parse_parity_check(&read(path)?, path)?;
    let rank = m.rank();
    if rank < m.num_rows() {
        eprintln!(
            "warning: {}: parity-check matrix has rank {} but {} rows",
            path.display(),
            rank,
            m.num_rows()
        );
    }
    Ok(m)
}

/// Parses parity-check text; `path` is used only in error messages.
pub fn parse_parity_check(text: &str, path: &Path) -> Result<BinaryMatrix> {
    let err = |line: usize, column: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let mut rows = Vec::new();
    let mut width = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let row = BinaryVector::parse01(line).map_err(|col| {
            let c = line.chars().nth(col).unwrap_or(' ');
            err(
                i + 1,
                col + 1,
                format!("unexpected character {c:?}, expected '0' or '1'"),
            )
        })?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(err(
                    i + 1,
                    1,
                    format!("row has {} columns, expected {w}", row.len()),
                ));
            }
            _ => {}
        }
        rows.push(row);
    }
    let Some(width) = width else {
        return Err(err(1, 1, "file contains no matrix rows".into()));
    };
    BinaryMatrix::from_rows(width, rows)
}

/// Reads received channel values, one real per line. Blank lines and `#`
/// comments are skipped.
pub fn load_received(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    parse_received(&read(path)?, path)
}

pub fn parse_received(text: &str, path: &Path) -> Result<Vec<f64>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.trim().parse::<f64>().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                column: 1,
                message: format!("expected a real number, got {:?}", l.trim()),
            })
        })
        .collect()
}

/// CSV with a header row; columns are the [`SimRow`] fields in order.
pub fn write_csv<W: Write>(rows: &[SimRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<csv output>".into(),
        source,
    })?;
    Ok(())
}

/// Pretty-printed JSON array of rows.
pub fn write_json<W: Write>(rows: &[SimRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out).map_err(|source| Error::Io {
        path: "<json output>".into(),
        source,
    })?;
    Ok(())
}
