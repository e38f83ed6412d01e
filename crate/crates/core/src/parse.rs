//! The expression grammar.
//!
//! ```text
//! expr    := product ('+' product)*
//! product := factor ('*' factor)*
//! factor  := atom | func '(' expr (',' expr)* ')' | '(' expr ')'
//! atom    := '0' | '1' | <nat> | 'w' | 'w*' | 'z' | 'q' | 'w1' | 'w1*' | 'w2' | 'U'
//! func    := 'rev' | 'cc' | 'fc' | 'mulw' | 'mulf'
//! ```
//!
//! `w*` and `w1*` are read greedily: a `*` directly after `w` or `w1` is
//! part of the atom name, so `w*w` is an error and products are written
//! `w * w`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::multiply;
use crate::classify::Level;
use crate::condense::cc;
use crate::term::{fin, lex, normalize, rev, OrderTerm};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Func {
    Rev,
    Cc,
    Fc,
    MulW,
    MulF,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "rev" => Func::Rev,
            "cc" => Func::Cc,
            "fc" => Func::Fc,
            "mulw" => Func::MulW,
            "mulf" => Func::MulF,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Rev => "rev",
            Func::Cc => "cc",
            Func::Fc => "fc",
            Func::MulW => "mulw",
            Func::MulF => "mulf",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Rev | Func::Cc | Func::Fc => 1,
            Func::MulW | Func::MulF => 2,
        }
    }
}

/// A parsed, unevaluated expression.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Term(OrderTerm),
    Sum(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    /// Evaluates function calls and returns the normalized term.
    pub fn eval(&self) -> Result<OrderTerm> {
        Ok(match self {
            Expr::Term(t) => normalize(t),
            Expr::Sum(a, b) => finite_checked(OrderTerm::Sum(alloc::vec![a.eval()?, b.eval()?]))?,
            Expr::Prod(a, b) => finite_checked(lex(a.eval()?, b.eval()?))?,
            Expr::Call(f, args) => {
                let args = args.iter().map(Expr::eval).collect::<Result<Vec<_>>>()?;
                match f {
                    Func::Rev => normalize(&rev(args[0].clone())),
                    Func::Cc => cc(&args[0], Level::Countable)?.quotient,
                    Func::Fc => cc(&args[0], Level::Finite)?.quotient,
                    Func::MulW => multiply(&args[0], &args[1], Level::Countable)?,
                    Func::MulF => multiply(&args[0], &args[1], Level::Finite)?,
                }
            }
        })
    }
}

/// Normalizes `t`, rejecting finite orders too long to count in a `u64`.
fn finite_checked(t: OrderTerm) -> Result<OrderTerm> {
    let parts: &[OrderTerm] = match &t {
        OrderTerm::Sum(ps) => ps,
        OrderTerm::LexProd(a, b) => &[(**a).clone(), (**b).clone()],
        _ => &[],
    };
    if parts.iter().all(|p| p.finite_len().is_some()) && t.finite_len().is_none() {
        return Err(Error::Unsupported(format!(
            "{t} has more than 2^64 - 1 elements"
        )));
    }
    Ok(normalize(&t))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => write!(f, "{t}"),
            Expr::Sum(a, b) => write!(f, "{a} + {b}"),
            Expr::Prod(a, b) => {
                for (i, x) in [a, b].into_iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    match **x {
                        Expr::Sum(..) => write!(f, "({x})")?,
                        Expr::Prod(..) if i == 1 => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses and evaluates `text`, returning a normalized term.
pub fn parse(text: &str) -> Result<OrderTerm> {
    parse_expr(text)?.eval()
}

/// Parses `text` without evaluating function calls.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some((pos, tok)) => Err(syntax(*pos, alloc::format!("unexpected {tok}"))),
    }
}

fn syntax(pos: usize, msg: impl ToString) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Star,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Star => write!(f, "`*`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'*' => out.push((start, Tok::Star)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "number too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = &text[start..i];
                if matches!(name, "w" | "w1") && bytes.get(i) == Some(&b'*') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].into())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, alloc::format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.1) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some((_, t)) => alloc::format!("{t}"),
                None => "end of input".into(),
            };
            Err(syntax(
                self.here(),
                alloc::format!("expected {tok}, found {found}"),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.product()?;
            lhs = Expr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            lhs = Expr::Prod(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let Some((pos, tok)) = self.peek().cloned() else {
            return Err(syntax(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Term(fin(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(t) = atom(&name) {
                    return Ok(Expr::Term(t));
                }
                let Some(func) = Func::from_name(&name) else {
                    return Err(syntax(pos, alloc::format!("unknown name `{name}`")));
                };
                self.expect(Tok::LParen)?;
                let mut args = alloc::vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                if args.len() != func.arity() {
                    return Err(Error::Arity {
                        name: func.name().into(),
                        expected: func.arity(),
                        found: args.len(),
                    });
                }
                Ok(Expr::Call(func, args))
            }
            other => Err(syntax(pos, alloc::format!("unexpected {other}"))),
        }
    }
}

fn atom(name: &str) -> Option<OrderTerm> {
    use OrderTerm::*;
    Some(match name {
        "w" => NatOrd,
        "w*" => NatOrdRev,
        "z" => IntOrd,
        "q" => RatOrd,
        "w1" => Omega1,
        "w1*" => Omega1Rev,
        "w2" => Omega2,
        "U" => ULine,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::sum;
    use alloc::vec;
    use OrderTerm::*;

    #[test]
    fn atoms_and_operators() {
        assert_eq!(parse("w1* + w1").unwrap(), sum(vec![Omega1Rev, Omega1]));
        assert_eq!(parse("2*w").unwrap(), sum(vec![NatOrd, NatOrd]));
        assert_eq!(parse("rev(w)").unwrap(), NatOrdRev);
        assert_eq!(parse("w* * w").unwrap(), lex(NatOrdRev, NatOrd));
        assert_eq!(parse("1 + w").unwrap(), NatOrd);
        // (ω+1) copies of 2, and 2 copies of ω+1
        assert_eq!(parse("(w + 1) * 2").unwrap(), parse("w + 2").unwrap());
        assert_eq!(parse("2 * (w + 1)").unwrap(), parse("w + w + 1").unwrap());
    }

    #[test]
    fn functions() {
        assert_eq!(parse("cc(w1 + 1)").unwrap(), fin(2));
        assert_eq!(parse("fc(z)").unwrap(), Single);
        assert_eq!(parse("mulw(q, w1)").unwrap(), RatOrd);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("cc("), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("w*w"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(
            parse("mulw(q)"),
            Err(Error::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(parse("w + "), Err(Error::Syntax { pos: 4, .. })));
    }

    #[test]
    fn printing_round_trips() {
        for text in ["w* * (w1 + 1)", "rev(w2) + U", "z * (w + w*)", "q + 1 + w1"] {
            let t = parse(text).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{text}");
        }
    }
}
