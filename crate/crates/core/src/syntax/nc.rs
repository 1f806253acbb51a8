//! Grammar and printer for noncommutative expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom
//! atom  := 'x' | 'y' | INT | INT '/' INT | 'inv' '(' expr ')' | '(' expr ')'
//! ```
//!
//! A minus sign directly in front of a numeric literal yields a negative
//! constant; `a - b` is `a + (-b)`.

use num_traits::{Signed, Zero};

use super::lexer::{Lexer, Tok};
use crate::error::{Error, Result};
use crate::ncexpr::{ExprStore, NcExpr, Node};
use crate::Rational;

pub fn parse_nc(store: &ExprStore, text: &str) -> Result<NcExpr> {
    let mut lx = Lexer::new(text, true)?;
    let e = expr(store, &mut lx)?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("unexpected trailing input".into()));
    }
    Ok(e)
}

fn expr(s: &ExprStore, lx: &mut Lexer) -> Result<NcExpr> {
    let mut acc = term(s, lx)?;
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.next();
                let t = term(s, lx)?;
                acc = s.add(acc, t)?;
            }
            Tok::Minus => {
                lx.next();
                let t = term(s, lx)?;
                acc = s.sub(acc, t)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn term(s: &ExprStore, lx: &mut Lexer) -> Result<NcExpr> {
    let mut acc = unary(s, lx)?;
    while *lx.peek() == Tok::Star {
        lx.next();
        let u = unary(s, lx)?;
        acc = s.mul(acc, u)?;
    }
    Ok(acc)
}

fn unary(s: &ExprStore, lx: &mut Lexer) -> Result<NcExpr> {
    if *lx.peek() != Tok::Minus {
        return atom(s, lx);
    }
    lx.next();
    match lx.peek().clone() {
        Tok::Int(n) => {
            lx.next();
            s.constant(-Rational::from_integer(n))
        }
        Tok::Frac(n, d) => {
            lx.next();
            s.constant(-Rational::new(n, d))
        }
        _ => {
            let u = unary(s, lx)?;
            s.neg(u)
        }
    }
}

fn atom(s: &ExprStore, lx: &mut Lexer) -> Result<NcExpr> {
    let pos = lx.pos();
    match lx.next() {
        Tok::Int(n) => s.constant(Rational::from_integer(n)),
        Tok::Frac(n, d) => s.constant(Rational::new(n, d)),
        Tok::Ident(id) => match id.as_str() {
            "x" => Ok(s.x()),
            "y" => Ok(s.y()),
            "inv" => {
                lx.expect(Tok::LParen, "'(' after inv")?;
                let inner = expr(s, lx)?;
                lx.expect(Tok::RParen, "')'")?;
                s.inv(inner)
            }
            other => Err(Error::Syntax { pos, msg: format!("unknown identifier {other:?}") }),
        },
        Tok::LParen => {
            let inner = expr(s, lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(inner)
        }
        Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Sum,
    Prod,
    Unary,
}

/// Prints `e` in the grammar accepted by [`parse_nc`]; parsing the output in
/// the same store yields the same handle.
pub fn print_nc(store: &ExprStore, e: NcExpr) -> String {
    let mut out = String::new();
    write_expr(store, e, Level::Sum, &mut out);
    out
}

fn level_of(store: &ExprStore, e: NcExpr) -> Level {
    match store.node(e) {
        Node::Add(..) => Level::Sum,
        Node::Mul(..) => Level::Prod,
        _ => Level::Unary,
    }
}

fn write_rational(c: &Rational, out: &mut String) {
    if c.is_integer() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

fn write_expr(s: &ExprStore, e: NcExpr, ctx: Level, out: &mut String) {
    if level_of(s, e) < ctx {
        out.push('(');
        write_expr(s, e, Level::Sum, out);
        out.push(')');
        return;
    }
    match s.node(e) {
        Node::Const(c) => write_rational(&c, out),
        Node::X => out.push('x'),
        Node::Y => out.push('y'),
        Node::Add(a, b) => {
            write_expr(s, a, Level::Sum, out);
            match s.node(b) {
                Node::Neg(b1) => {
                    out.push_str(" - ");
                    write_expr(s, b1, Level::Prod, out);
                }
                _ => {
                    out.push_str(" + ");
                    write_expr(s, b, Level::Prod, out);
                }
            }
        }
        Node::Neg(a) => {
            out.push('-');
            match s.node(a) {
                Node::Const(c) if !c.is_negative() || c.is_zero() => {
                    out.push('(');
                    write_rational(&c, out);
                    out.push(')');
                }
                _ => write_expr(s, a, Level::Unary, out),
            }
        }
        Node::Mul(a, b) => {
            write_expr(s, a, Level::Prod, out);
            out.push('*');
            write_expr(s, b, Level::Unary, out);
        }
        Node::Inv(a) => {
            out.push_str("inv(");
            write_expr(s, a, Level::Sum, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commrat::commutativize;

    #[test]
    fn commutator_parses_and_vanishes() {
        let s = ExprStore::new();
        let e = parse_nc(&s, "x*y - y*x").unwrap();
        assert_eq!(commutativize(&s, e).unwrap().to_string(), "0");
    }

    #[test]
    fn inverse_of_commutator_rejected() {
        let s = ExprStore::new();
        match parse_nc(&s, "inv(x*y - y*x)") {
            Err(Error::CommutatorInverse { expr }) => assert_eq!(expr, "x*y - y*x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let s = ExprStore::new();
        let e = parse_nc(&s, "-x*y").unwrap();
        let nx = s.neg(s.x()).unwrap();
        assert_eq!(e, s.mul(nx, s.y()).unwrap());
        let e = parse_nc(&s, "x*y*x").unwrap();
        let xy = s.mul(s.x(), s.y()).unwrap();
        assert_eq!(e, s.mul(xy, s.x()).unwrap());
        let e = parse_nc(&s, "-3*x").unwrap();
        assert_eq!(e, s.mul(s.int(-3).unwrap(), s.x()).unwrap());
        let e = parse_nc(&s, "1/2*x").unwrap();
        let half = s.constant(Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(e, s.mul(half, s.x()).unwrap());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let s = ExprStore::new();
        assert!(matches!(parse_nc(&s, "x + "), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_nc(&s, "x ^ 2"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_nc(&s, "z"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_nc(&s, "x y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn round_trip_tricky_shapes() {
        let s = ExprStore::new();
        let three = s.int(3).unwrap();
        let m3 = s.int(-3).unwrap();
        let shapes = [
            s.neg(three).unwrap(),
            s.neg(m3).unwrap(),
            s.neg(s.neg(s.x()).unwrap()).unwrap(),
            s.mul(s.x(), s.mul(s.y(), s.x()).unwrap()).unwrap(),
            s.sub(s.x(), s.add(s.y(), three).unwrap()).unwrap(),
            s.mul(s.x(), m3).unwrap(),
            s.neg(s.mul(s.x(), s.y()).unwrap()).unwrap(),
            s.add(s.neg(s.y()).unwrap(), s.x()).unwrap(),
            s.mul(s.add(s.x(), s.y()).unwrap(), s.neg(s.y()).unwrap()).unwrap(),
        ];
        for e in shapes {
            let text = print_nc(&s, e);
            assert_eq!(parse_nc(&s, &text).unwrap(), e, "{text}");
        }
    }
}
