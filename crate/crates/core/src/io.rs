//! Text format for racks and permutations.
//!
//! ```text
//! # comment lines start with '#'
//! rack 2
//! 1 0
//! 1 0
//!
//! perm 3
//! 1 2 0
//! ```
//!
//! A `rack <n>` block is followed by `n` rows of `n` space-separated integers, a
//! `perm <n>` block by one row of `n` integers (no row when `n = 0`). Blocks are
//! separated by blank lines and the file ends with a newline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::ValidationError;
use crate::functors::Structure;
use crate::perm::Permutation;
use crate::rack::validate_rack;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("block {index} (line {line}): {error}")]
    Invalid { index: usize, line: usize, error: ValidationError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Rack,
    Perm,
}

/// A syntactically valid block whose axioms have not been checked yet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlock {
    pub kind: BlockKind,
    pub order: usize,
    pub rows: Vec<Vec<usize>>,
    /// 1-based line of the header.
    pub line: usize,
}

impl RawBlock {
    pub fn validate(&self) -> Result<Structure, ValidationError> {
        match self.kind {
            BlockKind::Rack => validate_rack(self.rows.clone()).map(Structure::Rack),
            BlockKind::Perm => {
                let images = self.rows.first().cloned().unwrap_or_default();
                Ok(Structure::Perm(Permutation::new(images)?))
            }
        }
    }
}

/// A parsed and validated document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RackFile {
    pub blocks: Vec<Structure>,
}

impl RackFile {
    pub fn parse(text: &str) -> Result<RackFile, FileError> {
        let raw = parse_raw(text)?;
        let blocks = raw
            .iter()
            .enumerate()
            .map(|(i, b)| b.validate().map_err(|error| FileError::Invalid { index: i + 1, line: b.line, error }))
            .collect::<Result<_, _>>()?;
        Ok(RackFile { blocks })
    }

    pub fn print(&self) -> String {
        print_blocks(&self.blocks)
    }
}

pub fn print_blocks(blocks: &[Structure]) -> String {
    let mut out = String::new();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_block(&mut out, block);
    }
    out
}

pub fn write_block(out: &mut String, block: &Structure) {
    let join = |row: &[usize]| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    match block {
        Structure::Rack(r) => {
            let _ = writeln!(out, "rack {}", r.order());
            for x in 0..r.order() {
                let _ = writeln!(out, "{}", join(r.row(x)));
            }
        }
        Structure::Perm(p) => {
            let _ = writeln!(out, "perm {}", p.len());
            if !p.is_empty() {
                let _ = writeln!(out, "{}", join(p.images()));
            }
        }
    }
}

/// Parses the grammar without checking any axioms (entries are still range-checked).
pub fn parse_raw(text: &str) -> Result<Vec<RawBlock>, ParseError> {
    let lines: Vec<&str> = text.split('\n').collect();
    if !text.is_empty() && !text.ends_with('\n') {
        let line = lines.len();
        return Err(ParseError {
            line,
            column: lines[line - 1].chars().count() + 1,
            message: "missing trailing newline".into(),
        });
    }
    // `split` leaves an empty string after the final newline
    let lines = &lines[..lines.len().saturating_sub(1)];

    let mut blocks = Vec::new();
    let mut i = 0;
    let mut need_separator = false;
    while i < lines.len() {
        let line = lines[i];
        let lineno = i + 1;
        if line.starts_with('#') {
            i += 1;
            continue;
        }
        if line.trim().is_empty() {
            need_separator = false;
            i += 1;
            continue;
        }
        if need_separator {
            return Err(ParseError { line: lineno, column: 1, message: "expected a blank line between blocks".into() });
        }
        let (kind, order) = parse_header(line, lineno)?;
        let row_count = match kind {
            BlockKind::Rack => order,
            BlockKind::Perm => usize::from(order > 0),
        };
        let mut rows = Vec::with_capacity(row_count);
        i += 1;
        while rows.len() < row_count {
            let Some(row_line) = lines.get(i) else {
                return Err(ParseError {
                    line: i + 1,
                    column: 1,
                    message: format!("block starting on line {lineno} needs {row_count} rows, found {}", rows.len()),
                });
            };
            if row_line.starts_with('#') {
                i += 1;
                continue;
            }
            rows.push(parse_row(row_line, i + 1, order)?);
            i += 1;
        }
        blocks.push(RawBlock { kind, order, rows, line: lineno });
        need_separator = true;
    }
    Ok(blocks)
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(col),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..col]));
                start = None;
            }
            _ => {}
        }
    }
    out.into_iter()
}

fn parse_header(line: &str, lineno: usize) -> Result<(BlockKind, usize), ParseError> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    let err = |column, message: &str| ParseError { line: lineno, column, message: message.into() };
    let kind = match toks.first() {
        Some((_, "rack")) => BlockKind::Rack,
        Some((_, "perm")) => BlockKind::Perm,
        Some((col, _)) => return Err(err(*col, "expected `rack <n>` or `perm <n>`")),
        None => return Err(err(1, "expected a block header")),
    };
    match toks.get(1) {
        Some((col, tok)) => {
            let order = tok.parse::<usize>().map_err(|_| err(*col, "expected a non-negative integer order"))?;
            if let Some((col, _)) = toks.get(2) {
                return Err(err(*col, "unexpected token after the order"));
            }
            Ok((kind, order))
        }
        None => Err(err(line.len() + 1, "missing order")),
    }
}

fn parse_row(line: &str, lineno: usize, order: usize) -> Result<Vec<usize>, ParseError> {
    let mut row = Vec::with_capacity(order);
    for (col, tok) in tokens(line) {
        let v = tok.parse::<usize>().map_err(|_| ParseError {
            line: lineno,
            column: col,
            message: format!("expected an integer, found `{tok}`"),
        })?;
        if v >= order {
            return Err(ParseError { line: lineno, column: col, message: format!("entry {v} is outside 0..{order}") });
        }
        if row.len() == order {
            return Err(ParseError { line: lineno, column: col, message: format!("row has more than {order} entries") });
        }
        row.push(v);
    }
    if row.len() != order {
        return Err(ParseError {
            line: lineno,
            column: line.len() + 1,
            message: format!("row has {} entries, expected {order}", row.len()),
        });
    }
    Ok(row)
}
