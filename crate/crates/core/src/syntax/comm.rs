//! Grammar for commutative rational functions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := 'x' | 'y' | INT | '(' expr ')'
//! ```

use num_traits::ToPrimitive;

use super::lexer::{Lexer, Tok};
use crate::error::{Error, Result};
use crate::{CommRat, Rational};

pub fn parse_comm(text: &str) -> Result<CommRat> {
    let mut lx = Lexer::new(text, false)?;
    let e = expr(&mut lx)?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("unexpected trailing input".into()));
    }
    Ok(e.reduce())
}

/// Canonical text of a rational function (reduced, graded-lex terms).
pub fn print_comm(f: &CommRat) -> String {
    f.to_string()
}

fn expr(lx: &mut Lexer) -> Result<CommRat> {
    let mut acc = term(lx)?;
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.next();
                acc = &acc + &term(lx)?;
            }
            Tok::Minus => {
                lx.next();
                acc = &acc - &term(lx)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn term(lx: &mut Lexer) -> Result<CommRat> {
    let mut acc = unary(lx)?;
    loop {
        match lx.peek() {
            Tok::Star => {
                lx.next();
                acc = &acc * &unary(lx)?;
            }
            Tok::Slash => {
                let pos = lx.pos();
                lx.next();
                let d = unary(lx)?;
                acc = acc.div(&d).map_err(|_| Error::Syntax { pos, msg: "division by zero".into() })?;
            }
            _ => return Ok(acc.reduce()),
        }
    }
}

fn unary(lx: &mut Lexer) -> Result<CommRat> {
    if *lx.peek() == Tok::Minus {
        lx.next();
        return Ok(-&unary(lx)?);
    }
    power(lx)
}

fn power(lx: &mut Lexer) -> Result<CommRat> {
    let base = atom(lx)?;
    if *lx.peek() != Tok::Caret {
        return Ok(base);
    }
    lx.next();
    let pos = lx.pos();
    match lx.next() {
        Tok::Int(n) => {
            let n = n
                .to_u32()
                .filter(|&n| n <= 256)
                .ok_or(Error::Syntax { pos, msg: "exponent out of range".into() })?;
            let (num, den) = base.into_parts();
            Ok(CommRat::new(num.pow(n), den.pow(n)).expect("nonzero denominator"))
        }
        _ => Err(Error::Syntax { pos, msg: "expected a nonnegative integer exponent".into() }),
    }
}

fn atom(lx: &mut Lexer) -> Result<CommRat> {
    let pos = lx.pos();
    match lx.next() {
        Tok::Int(n) => Ok(CommRat::constant(Rational::from_integer(n))),
        Tok::Ident(id) => match id.as_str() {
            "x" => Ok(CommRat::x()),
            "y" => Ok(CommRat::y()),
            other => Err(Error::Syntax { pos, msg: format!("unknown identifier {other:?}") }),
        },
        Tok::LParen => {
            let e = expr(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(e)
        }
        Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
    }
}
