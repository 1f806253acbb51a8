use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    /// `p/q` read as one literal (noncommutative grammar only).
    Frac(BigInt, BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

pub(crate) struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Lexer {
    /// `fractions`: read `p/q` as a single rational literal.
    pub(crate) fn new(text: &str, fractions: bool) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        let digits = |start: usize| {
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'+' => toks.push((Tok::Plus, start)),
                b'-' => toks.push((Tok::Minus, start)),
                b'*' => toks.push((Tok::Star, start)),
                b'/' => toks.push((Tok::Slash, start)),
                b'^' => toks.push((Tok::Caret, start)),
                b'(' => toks.push((Tok::LParen, start)),
                b')' => toks.push((Tok::RParen, start)),
                b'0'..=b'9' => {
                    let end = digits(i);
                    let n: BigInt = text[i..end].parse().expect("digits");
                    if fractions && end < bytes.len() && bytes[end] == b'/' {
                        let dend = digits(end + 1);
                        if dend == end + 1 {
                            return Err(Error::Syntax { pos: end + 1, msg: "expected denominator digits".into() });
                        }
                        let d: BigInt = text[end + 1..dend].parse().expect("digits");
                        if d == BigInt::from(0) {
                            return Err(Error::Syntax { pos: end + 1, msg: "zero denominator in literal".into() });
                        }
                        toks.push((Tok::Frac(n, d), start));
                        i = dend;
                    } else {
                        toks.push((Tok::Int(n), start));
                        i = end;
                    }
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    toks.push((Tok::Ident(text[i..j].to_string()), start));
                    i = j;
                    continue;
                }
                _ => {
                    return Err(Error::Syntax { pos: i, msg: format!("unexpected character {:?}", c as char) });
                }
            }
            i += 1;
        }
        toks.push((Tok::End, text.len()));
        Ok(Lexer { toks, at: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    pub(crate) fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn error(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos(), msg }
    }
}
