//! Plain-text frame documents.
//!
//! ```text
//! # optional comments
//! name: mercedes-benz
//! n: 2
//! m: 3
//! 1.0000000000000000e0 0.0000000000000000e0
//! -4.9999999999999978e-1 8.6602540378443871e-1
//! -5.0000000000000044e-1 -8.6602540378443837e-1
//! ```
//!
//! Header lines are `key: value` pairs (`name`, `n`, `m`) and come before the
//! data. Each data line is one vector of `n` whitespace-separated decimals.

use std::fmt;
use std::fmt::Write as _;

use framescale::Frame;

#[derive(Debug, Clone, PartialEq)]
pub struct FrameDocument {
    pub name: Option<String>,
    pub n: usize,
    pub m: usize,
    /// `m` vectors of length `n`.
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Words of a line with their 1-based starting columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut col = 0;
    line.split_inclusive(char::is_whitespace).filter_map(move |piece| {
        let start = col;
        col += piece.chars().count();
        let word = piece.trim_end();
        (!word.is_empty()).then_some((start + 1, word))
    })
}

fn parse_count(value: &str, line: usize, column: usize, key: &str) -> Result<usize, ParseError> {
    value
        .parse::<usize>()
        .map_err(|_| err(line, column, format!("`{key}` must be a non-negative integer, found `{value}`")))
}

impl FrameDocument {
    pub fn new(name: Option<String>, vectors: Vec<Vec<f64>>) -> Self {
        let n = vectors.first().map_or(0, Vec::len);
        Self {
            name,
            n,
            m: vectors.len(),
            vectors,
        }
    }

    pub fn from_frame(name: Option<String>, frame: &Frame<f64>) -> Self {
        Self::new(name, frame.vectors())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name = None;
        let mut n = None;
        let mut m = None;
        let mut vectors: Vec<Vec<f64>> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let key_col = line.len() - line.trim_start().len() + 1;
                if !vectors.is_empty() {
                    return Err(err(lineno, key_col, "header line after vector data"));
                }
                let value_col = key.chars().count() + 2 + (value.len() - value.trim_start().len());
                let value = value.trim();
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "n" => n = Some(parse_count(value, lineno, value_col, "n")?),
                    "m" => m = Some(parse_count(value, lineno, value_col, "m")?),
                    other => return Err(err(lineno, key_col, format!("unknown header key `{other}`"))),
                }
                continue;
            }
            let Some(dim) = n else {
                return Err(err(lineno, 1, "vector data before the `n` header"));
            };
            let mut row = Vec::with_capacity(dim);
            for (col, word) in tokens(line) {
                let v: f64 = word
                    .parse()
                    .map_err(|_| err(lineno, col, format!("`{word}` is not a decimal number")))?;
                if !v.is_finite() {
                    return Err(err(lineno, col, format!("`{word}` is not finite")));
                }
                if row.len() == dim {
                    return Err(err(lineno, col, format!("vector {} has more than n = {dim} entries", vectors.len() + 1)));
                }
                row.push(v);
            }
            if row.len() != dim {
                let end = line.trim_end().chars().count() + 1;
                return Err(err(
                    lineno,
                    end,
                    format!("vector {} has {} entries, expected n = {dim}", vectors.len() + 1, row.len()),
                ));
            }
            vectors.push(row);
        }
        let n = n.ok_or_else(|| err(last_line.max(1), 1, "missing `n` header"))?;
        let m = m.ok_or_else(|| err(last_line.max(1), 1, "missing `m` header"))?;
        if n == 0 {
            return Err(err(1, 1, "`n` must be at least 1"));
        }
        if vectors.len() != m {
            return Err(err(
                last_line.max(1),
                1,
                format!("expected m = {m} vectors, found {}", vectors.len()),
            ));
        }
        if m < n {
            return Err(err(
                last_line.max(1),
                1,
                format!("m = {m} vectors cannot span R^{n}"),
            ));
        }
        Ok(Self { name, n, m, vectors })
    }

    pub fn to_frame(&self) -> framescale::Result<Frame<f64>> {
        Frame::new(&self.vectors)
    }

    /// Serializes with 17 significant digits, which round-trips every `f64`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name: {name}");
        }
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "m: {}", self.m);
        for v in &self.vectors {
            let row: Vec<String> = v.iter().map(|x| format_f64(*x)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// `{:.16e}`: one digit before the point and sixteen after.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}
