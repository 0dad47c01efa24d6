//! Matrix, monodromy-table, and weight file parsing.
//!
//! A matrix block is a line holding the dimension `n` followed by n
//! lines of n whitespace-separated exact entries. Files may hold
//! several blocks back to back. `#` starts a comment anywhere.

use std::fmt;

use mirror_count_core::matrix::{IntMatrix, RatMatrix};
use mirror_count_core::rat::{as_integer, parse_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for FileError {}

fn err(line: usize, msg: impl Into<String>) -> FileError {
    FileError { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    /// Line number of the most recently yielded line, for error reports
    /// about running out of input.
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { iter: text.lines().enumerate(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.iter.by_ref() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                self.last = idx + 1;
                return Some((idx + 1, trimmed));
            }
        }
        None
    }
}

fn parse_block(lines: &mut Lines<'_>, header: (usize, &str)) -> Result<RatMatrix, FileError> {
    let (lineno, head) = header;
    let n: usize = head
        .parse()
        .map_err(|_| err(lineno, format!("expected a matrix dimension, found '{head}'")))?;
    if n == 0 {
        return Err(err(lineno, "matrix dimension must be positive"));
    }
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        let (rowno, row) = lines
            .next()
            .ok_or_else(|| err(lines.last, format!("matrix row {} missing", i + 1)))?;
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != n {
            return Err(err(
                rowno,
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        for (j, e) in entries.iter().enumerate() {
            let v = parse_rat(e).ok_or_else(|| err(rowno, format!("bad entry '{e}'")))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// All matrix blocks in a file, in order. Every block must be square;
/// an empty file yields an empty list.
pub fn parse_matrices(text: &str) -> Result<Vec<RatMatrix>, FileError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        out.push(parse_block(&mut lines, header)?);
    }
    Ok(out)
}

pub fn require_integral(m: &RatMatrix, what: &str) -> Result<IntMatrix, String> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if as_integer(m.at(i, j)).is_none() {
                return Err(format!("{what} must have integer entries"));
            }
        }
    }
    Ok(m.to_int().expect("checked integral"))
}

/// One monodromy-table row: the raw matrix A, the base change m', the
/// expected conjugate A', and the expected invariants.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub name: String,
    pub lambda: i64,
    pub mu: i64,
    pub a: IntMatrix,
    pub m_prime: IntMatrix,
    pub a_prime: IntMatrix,
}

/// Parses a table file: each row is a header `row <name> <lambda> <mu>`
/// followed by three matrix blocks A, m', A'. An empty file is a valid
/// empty table.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>, FileError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((lineno, line)) = lines.next() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "row" {
            return Err(err(lineno, format!("expected 'row <name> <lambda> <mu>', found '{line}'")));
        }
        let name = fields[1].to_string();
        let lambda: i64 = fields[2]
            .parse()
            .map_err(|_| err(lineno, format!("bad lambda '{}'", fields[2])))?;
        let mu: i64 = fields[3]
            .parse()
            .map_err(|_| err(lineno, format!("bad mu '{}'", fields[3])))?;
        let mut take = |what: &str| -> Result<IntMatrix, FileError> {
            let header = lines
                .next()
                .ok_or_else(|| err(lines.last, format!("row {name}: {what} block missing")))?;
            let block_line = header.0;
            let m = parse_block(&mut lines, header)?;
            require_integral(&m, what).map_err(|msg| err(block_line, msg))
        };
        let a = take("A")?;
        let m_prime = take("m'")?;
        let a_prime = take("A'")?;
        out.push(TableRow { name, lambda, mu, a, m_prime, a_prime });
    }
    Ok(out)
}

/// Comma-separated positive rational weights, e.g. `1,1,2/3`.
pub fn parse_weights(text: &str) -> Result<Vec<Rat>, String> {
    use num_traits::Zero;
    let mut out = Vec::new();
    for piece in text.split(',') {
        let w = parse_rat(piece.trim()).ok_or_else(|| format!("bad weight '{}'", piece.trim()))?;
        if w <= Rat::zero() {
            return Err(format!("weight '{}' must be positive", piece.trim()));
        }
        out.push(w);
    }
    Ok(out)
}
