//! Plain-text code files.
//!
//! ```text
//! # comment lines start with '#'
//! 4 2
//! 1010
//! 0101
//! ```
//!
//! The header gives length `n` and dimension `k`; exactly `k` rows of `n`
//! characters from `{0,1}` follow. Blank lines are ignored.

use std::io::BufRead;

use super::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

pub fn load_code<R: BufRead>(source: R) -> Result<BinaryCode> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    [n, k] => n.parse::<usize>().ok().zip(k.parse::<usize>().ok()),
                    _ => None,
                };
                let (n, k) = parsed.ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("expected header \"n k\", found {trimmed:?}"),
                })?;
                if k > n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("dimension {k} exceeds length {n}"),
                    });
                }
                header = Some((n, k));
            }
            Some((n, k)) => {
                if rows.len() == k {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("more than the {k} rows announced in the header"),
                    });
                }
                if trimmed.len() != n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("row has {} characters, expected {n}", trimmed.len()),
                    });
                }
                let row = BitVector::parse(trimmed).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { line: lineno, msg },
                    other => other,
                })?;
                rows.push(row);
            }
        }
    }
    let (n, k) = header.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if rows.len() != k {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header announces {k} rows, found {}", rows.len()),
        });
    }
    let code = BinaryCode::from_rows(n, rows)?;
    if code.dimension() != k {
        return Err(Error::DimensionMismatch(format!(
            "header dimension {k} but the rows have rank {}",
            code.dimension()
        )));
    }
    Ok(code)
}

/// Serializes the canonical generator in the format read by [`load_code`].
pub fn write_code(code: &BinaryCode) -> String {
    let mut out = format!("{} {}\n", code.length(), code.dimension());
    for row in code.generator().rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
