//! Plain-text array format.
//!
//! ```text
//! # any line may carry a trailing comment introduced by '#'
//! OA 12 4 2 2
//! -1 -1 -1 -1
//! ...
//! ```
//!
//! The header reads `OA <runs> <columns> <levels> <strength>`; the level
//! count is always 2 here. It is followed by exactly `<runs>` rows of
//! `<columns>` entries from {-1, 1}, whitespace-separated. Blank lines and
//! comments are ignored everywhere. The declared strength travels with the
//! file so a reader knows what the array claims to be; verification is a
//! separate step.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::jchar::Design;

/// Parses a design and its declared strength from text.
///
/// # Errors
///
/// [`Error::Parse`] with a 1-based line number for any malformed content.
pub fn parse_design(text: &str) -> Result<(Design, u32)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());
    let Some((header_no, header)) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing header line".into(),
        });
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let fail = |msg: String| Error::Parse {
        line: header_no,
        msg,
    };
    if fields.len() != 5 || fields[0] != "OA" {
        return Err(fail(format!(
            "header must read 'OA <runs> <columns> <levels> <strength>', got '{header}'"
        )));
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| fail(format!("run count '{}' is not a number", fields[1])))?;
    let m: u32 = fields[2]
        .parse()
        .map_err(|_| fail(format!("column count '{}' is not a number", fields[2])))?;
    if fields[3] != "2" {
        return Err(fail(format!(
            "only 2-level arrays are supported, got {} levels",
            fields[3]
        )));
    }
    let d: u32 = fields[4]
        .parse()
        .map_err(|_| fail(format!("strength '{}' is not a number", fields[4])))?;
    let mut rows: Vec<Vec<i8>> = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("more than the declared {n} rows"),
            });
        }
        let row: Vec<i8> = line
            .split_whitespace()
            .map(|tok| match tok {
                "1" | "+1" => Ok(1),
                "-1" => Ok(-1),
                other => Err(Error::Parse {
                    line: line_no,
                    msg: format!("entry '{other}' is not -1 or 1"),
                }),
            })
            .collect::<Result<_>>()?;
        if row.len() != m as usize {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("row has {} entries, expected {m}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("found {} rows, header declares {n}", rows.len()),
        });
    }
    let design = Design::new(rows, m).map_err(|e| Error::Parse {
        line: header_no,
        msg: e.to_string(),
    })?;
    Ok((design, d))
}

/// Renders a design with its declared strength in the format
/// [`parse_design`] reads.
#[must_use]
pub fn render_design(design: &Design, d: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!("OA {} {} 2 {}\n", design.n(), design.m(), d));
    for row in design.rows() {
        let cells: Vec<String> = row.iter().map(i8::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a design file from disk.
///
/// # Errors
///
/// I/O failures and everything [`parse_design`] rejects.
pub fn read_design_file(path: &Path) -> Result<(Design, u32)> {
    parse_design(&fs::read_to_string(path)?)
}

/// Writes a design file to disk.
///
/// # Errors
///
/// I/O failures.
pub fn write_design_file(path: &Path, design: &Design, d: u32) -> Result<()> {
    Ok(fs::write(path, render_design(design, d))?)
}
