//! Reader for the line-oriented `.vh` complex format.
//!
//! ```text
//! complex <name>
//! horizontal a1 a2 ... am
//! vertical b1 b2 ... bn
//! square <x1> <x2> <x3> <x4>
//! ```
//!
//! Tokens are generator names optionally suffixed with `^-1`. Positions 1 and
//! 3 of a square are horizontal, 2 and 4 vertical. `#` starts a comment.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{canonical_square, ComplexError, Letter, Side, SquareComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: undeclared generator `{name}`")]
    Undeclared { line: usize, name: String },
    #[error("line {line}: {source}")]
    Square { line: usize, source: ComplexError },
    #[error("complex must declare at least one {0:?} generator")]
    Degenerate(Side),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_complex(text: &str) -> Result<SquareComplex, ParseError> {
    let mut name: Option<String> = None;
    let mut horizontal: Option<Vec<String>> = None;
    let mut vertical: Option<Vec<String>> = None;
    let mut lookup: HashMap<String, (Side, u32)> = HashMap::new();
    let mut squares = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "complex" => {
                if name.is_some() {
                    return Err(syntax(line, "duplicate `complex` line"));
                }
                let [n] = rest.as_slice() else {
                    return Err(syntax(line, "expected `complex <name>`"));
                };
                name = Some(n.to_string());
            }
            "horizontal" | "vertical" => {
                if name.is_none() {
                    return Err(syntax(line, "`complex <name>` must come first"));
                }
                let side = if keyword == "horizontal" {
                    Side::Horizontal
                } else {
                    Side::Vertical
                };
                if side == Side::Vertical && horizontal.is_none() {
                    return Err(syntax(line, "`horizontal` must precede `vertical`"));
                }
                let slot = match side {
                    Side::Horizontal => &mut horizontal,
                    Side::Vertical => &mut vertical,
                };
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate `{keyword}` line")));
                }
                for (i, tok) in rest.iter().enumerate() {
                    if tok.contains('^') {
                        return Err(syntax(line, format!("invalid generator name `{tok}`")));
                    }
                    if lookup.insert(tok.to_string(), (side, i as u32 + 1)).is_some() {
                        return Err(syntax(line, format!("generator `{tok}` declared twice")));
                    }
                }
                if rest.is_empty() {
                    return Err(ParseError::Degenerate(side));
                }
                *slot = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "square" => {
                if vertical.is_none() {
                    return Err(syntax(line, "generators must be declared before squares"));
                }
                let [x1, x2, x3, x4] = rest.as_slice() else {
                    return Err(syntax(line, "a square needs exactly four letters"));
                };
                let mut letters = [Letter::h(1); 4];
                for (slot, tok) in letters.iter_mut().zip([x1, x2, x3, x4]) {
                    *slot = parse_letter(tok, &lookup, line)?;
                }
                let [a, b, a2, b2] = letters;
                let sq = canonical_square(a, b, a2, b2)
                    .map_err(|source| ParseError::Square { line, source })?;
                squares.insert(sq);
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| syntax(1, "missing `complex <name>` line"))?;
    let horizontal = horizontal.ok_or(ParseError::Degenerate(Side::Horizontal))?;
    let vertical = vertical.ok_or(ParseError::Degenerate(Side::Vertical))?;
    Ok(SquareComplex {
        name,
        horizontal_names: horizontal,
        vertical_names: vertical,
        squares,
    })
}

fn parse_letter(
    tok: &str,
    lookup: &HashMap<String, (Side, u32)>,
    line: usize,
) -> Result<Letter, ParseError> {
    let (base, inverted) = match tok.strip_suffix("^-1") {
        Some(base) => (base, true),
        None => (tok, false),
    };
    if base.contains('^') {
        return Err(syntax(line, format!("only `^-1` exponents are allowed, got `{tok}`")));
    }
    let &(side, index) = lookup.get(base).ok_or_else(|| ParseError::Undeclared {
        line,
        name: base.to_string(),
    })?;
    Ok(Letter::new(side, index, inverted))
}
