//! Generator words: whitespace-separated `tau`, `t[P,Q;R,S]`, `p[P,Q;R,S]`
//! and `inner(expr)`.
//!
//! Matrix entries use the commutative grammar and may depend on `x` only; the
//! operand of `inner` uses the noncommutative grammar.

use super::comm::{parse_comm, print_comm};
use super::nc::{parse_nc, print_nc};
use crate::cremona::{Generator, Gl2Rat};
use crate::error::{Error, Result};
use crate::ncexpr::ExprStore;

pub fn parse_word(store: &ExprStore, text: &str) -> Result<Vec<Generator>> {
    split_top(text, |c| c.is_whitespace())?
        .into_iter()
        .filter(|(_, s)| !s.trim().is_empty())
        .map(|(pos, s)| parse_generator(store, s.trim(), pos).map_err(|e| shift(e, pos)))
        .collect()
}

/// Parses the body `P,Q;R,S` of a matrix literal.
pub fn parse_gl2(text: &str) -> Result<Gl2Rat> {
    let rows = split_top(text, |c| c == ';')?;
    if rows.len() != 2 {
        return Err(Error::Syntax { pos: 0, msg: "matrix needs two rows separated by ';'".into() });
    }
    let mut entries = Vec::with_capacity(4);
    for (rpos, row) in rows {
        let cells = split_top(row, |c| c == ',')?;
        if cells.len() != 2 {
            return Err(Error::Syntax { pos: rpos, msg: "matrix row needs two entries separated by ','".into() });
        }
        for (cpos, cell) in cells {
            entries.push(parse_comm(cell).map_err(|e| shift(e, rpos + cpos))?);
        }
    }
    let mut it = entries.into_iter();
    let mut next = || it.next().expect("four entries");
    Gl2Rat::new(next(), next(), next(), next())
}

pub fn print_word(store: &ExprStore, w: &[Generator]) -> String {
    let mat = |m: &Gl2Rat| format!("[{},{};{},{}]", print_comm(&m.p), print_comm(&m.q), print_comm(&m.r), print_comm(&m.s));
    w.iter()
        .map(|g| match g {
            Generator::Tau => "tau".to_string(),
            Generator::T(m) => format!("t{}", mat(m)),
            Generator::P(m) => format!("p{}", mat(m)),
            Generator::Inner(r) => format!("inner({})", print_nc(store, *r)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_generator(store: &ExprStore, s: &str, _pos: usize) -> Result<Generator> {
    if s == "tau" {
        return Ok(Generator::Tau);
    }
    let body = |open: char, close: char, skip: usize| -> Result<&str> {
        let rest = &s[skip..];
        if !rest.starts_with(open) || !rest.ends_with(close) {
            return Err(Error::Syntax { pos: skip, msg: format!("expected '{open}' ... '{close}'") });
        }
        Ok(&rest[1..rest.len() - 1])
    };
    if s.starts_with("inner") {
        let inner = body('(', ')', 5)?;
        let r = parse_nc(store, inner).map_err(|e| shift(e, 6))?;
        // the conjugator must be invertible
        store.inv(r)?;
        return Ok(Generator::Inner(r));
    }
    match s.chars().next() {
        Some('t') => Ok(Generator::T(parse_gl2(body('[', ']', 1)?).map_err(|e| shift(e, 2))?)),
        Some('p') => Ok(Generator::P(parse_gl2(body('[', ']', 1)?).map_err(|e| shift(e, 2))?)),
        _ => Err(Error::Syntax { pos: 0, msg: format!("unknown generator '{s}'") }),
    }
}

/// Splits at separator characters outside brackets, returning each piece
/// with its byte offset.
fn split_top(text: &str, is_sep: impl Fn(char) -> bool) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Syntax { pos: i, msg: "unbalanced bracket".into() });
                }
            }
            _ if depth == 0 && is_sep(c) => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Syntax { pos: text.len(), msg: "unbalanced bracket".into() });
    }
    out.push((start, &text[start..]));
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        other => other,
    }
}
