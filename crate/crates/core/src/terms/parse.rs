//! Recursive-descent parser for the ASCII term grammar:
//!
//! ```text
//! stmt    := term ("=" | "<=") term
//! lattice := prod ( ("\/" prod)* | ("/\" prod)* )
//! prod    := factor ( "*" factor )*
//! factor  := atom ( "^" integer )?
//! atom    := ident | "e" | "0" | "(" term ")"
//! ```
//!
//! Mixing `\/` and `/\` at one level requires parentheses. Identifiers are
//! `[a-z][a-z0-9_]*`; the reserved fresh names `_f<n>` are also accepted so
//! that translated output re-parses.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Op, Relation, Signature, Statement, Term, Var};
use crate::{Error, ParseError, Result};

/// Either a statement or a bare term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Statement(Statement),
    Term(Term),
}

pub fn parse(text: &str, sig: Signature) -> Result<Parsed> {
    let mut p = Parser::new(text, sig)?;
    let lhs = p.term()?;
    let parsed = match p.peek() {
        None => Parsed::Term(lhs),
        Some(_) => {
            let relation = p.relation()?;
            let rhs = p.term()?;
            Parsed::Statement(Statement::new(relation, lhs, rhs, sig)?)
        }
    };
    p.expect_end()?;
    Ok(parsed)
}

pub fn parse_statement(text: &str, sig: Signature) -> Result<Statement> {
    match parse(text, sig)? {
        Parsed::Statement(st) => Ok(st),
        Parsed::Term(_) => Err(ParseError {
            position: text.len(),
            message: "expected `=` or `<=`".to_string(),
        }
        .into()),
    }
}

pub fn parse_term(text: &str, sig: Signature) -> Result<Term> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Star,
    Caret,
    Join,
    Meet,
    Eq,
    Le,
    Minus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Join => "`\\/`".into(),
            Tok::Meet => "`/\\`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Minus => "`-`".into(),
        }
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse(ParseError {
        position,
        message: message.into(),
    }))
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'=' => Tok::Eq,
            b'-' => Tok::Minus,
            b'\\' if two(b"\\/") => {
                i += 1;
                Tok::Join
            }
            b'/' if two(b"/\\") => {
                i += 1;
                Tok::Meet
            }
            b'<' if two(b"<=") => {
                i += 1;
                Tok::Le
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                match digits.parse::<i64>() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => return err(start, format!("integer `{digits}` out of range")),
                }
            }
            b'a'..=b'z' | b'_' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                let name = &text[start..=i];
                if c == b'_' && Var::new(name).fresh_index().is_none() {
                    return err(start, format!("identifier `{name}` may not start with `_`"));
                }
                Tok::Ident(name.to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return err(start, format!("unexpected character `{ch}`"));
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: Signature,
}

impl Parser {
    fn new(text: &str, sig: Signature) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        match self.peek() {
            Some(t) => err(
                self.offset(),
                format!("expected {wanted}, found {}", t.describe()),
            ),
            None => err(self.end, format!("expected {wanted}, found end of input")),
        }
    }

    fn allow(&self, op: Op) -> Result<()> {
        self.sig.check(op)
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.unexpected("end of input")
        } else {
            Ok(())
        }
    }

    fn relation(&mut self) -> Result<Relation> {
        match self.peek() {
            Some(Tok::Eq) => {
                self.bump();
                Ok(Relation::Eq)
            }
            Some(Tok::Le) => {
                self.allow(Op::Join)?;
                self.bump();
                Ok(Relation::Le)
            }
            _ => self.unexpected("`=` or `<=`"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let first = self.prod()?;
        let kind = match self.peek() {
            Some(Tok::Join) => Tok::Join,
            Some(Tok::Meet) => Tok::Meet,
            _ => return Ok(first),
        };
        let op = if kind == Tok::Join {
            Op::Join
        } else {
            Op::Meet
        };
        let mut parts = alloc::vec![first];
        loop {
            let at = self.offset();
            match self.peek() {
                Some(t) if *t == kind => {
                    self.allow(op)?;
                    self.bump();
                    parts.push(self.prod()?);
                }
                Some(Tok::Join) | Some(Tok::Meet) => {
                    return err(
                        at,
                        "mixing `\\/` and `/\\` at one level requires parentheses",
                    )
                }
                _ => break,
            }
        }
        Ok(if kind == Tok::Join {
            Term::join(parts)
        } else {
            Term::meet(parts)
        })
    }

    fn prod(&mut self) -> Result<Term> {
        let mut factors = alloc::vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.allow(Op::Mul)?;
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Term::mul(factors))
    }

    fn factor(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => {
                self.pos -= 1;
                return self.unexpected("an integer exponent");
            }
        };
        if negative && n != 0 {
            self.allow(Op::Inv)?;
        }
        let count = usize::try_from(n).map_err(|_| ParseError {
            position: at,
            message: "exponent too large".into(),
        })?;
        if count > 4096 {
            return err(at, "exponent too large");
        }
        if count == 0 {
            return Ok(Term::One);
        }
        if count > 1 {
            self.allow(Op::Mul)?;
        }
        let unit = if negative { Term::inv(base) } else { base };
        Ok(Term::mul(core::iter::repeat(unit).take(count)))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Ident(name)) if name == "e" => {
                self.bump();
                Ok(Term::One)
            }
            Some(Tok::Ident(name)) => {
                let v = Var::new(name);
                self.bump();
                Ok(Term::Var(v))
            }
            Some(Tok::Int(0)) => {
                self.allow(Op::Zero)?;
                self.bump();
                Ok(Term::Zero)
            }
            Some(Tok::LParen) => {
                self.bump();
                let t = self.term()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.unexpected("`)`");
                }
                self.bump();
                Ok(t)
            }
            _ => self.unexpected("a variable, `e`, `0` or `(`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn power_sugar_expands() {
        let st = parse_statement("x <= e \\/ x^2", Signature::Semiring).unwrap();
        assert_eq!(st.relation, Relation::Le);
        assert_eq!(st.lhs, x());
        assert_eq!(
            st.rhs,
            Term::Join(vec![Term::One, Term::Mul(vec![x(), x()])])
        );
    }

    #[test]
    fn trivial_equation() {
        let st = parse_statement("e = e", Signature::Monoid).unwrap();
        assert_eq!(
            (st.lhs, st.rhs, st.relation),
            (Term::One, Term::One, Relation::Eq)
        );
    }

    #[test]
    fn inverse_rejected_outside_group_signatures() {
        let e = parse("x^-1", Signature::Semiring).unwrap_err();
        match e {
            Error::OutsideSignature { symbol, signature } => {
                assert!(symbol.contains("^-1"), "{symbol}");
                assert_eq!(signature, "semiring");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_term("x^-2", Signature::Group).unwrap(), {
            let i = Term::inv(x());
            Term::Mul(vec![i.clone(), i])
        });
    }

    #[test]
    fn zero_exponent_is_unit() {
        assert_eq!(parse_term("x^0", Signature::Monoid).unwrap(), Term::One);
        assert_eq!(parse_term("x^-0", Signature::Monoid).unwrap(), Term::One);
    }

    #[test]
    fn zero_constant_gated() {
        assert!(parse_term("x * 0", Signature::Semiring).is_err());
        assert_eq!(
            parse_term("x * 0", Signature::Semiring0).unwrap(),
            Term::Mul(vec![x(), Term::Zero])
        );
    }

    #[test]
    fn mixing_lattice_ops_needs_parens() {
        let e = parse_term("x \\/ y /\\ z", Signature::Lgroup).unwrap_err();
        assert!(
            matches!(e, Error::Parse(ParseError { position: 7, .. })),
            "{e:?}"
        );
        assert!(parse_term("x \\/ (y /\\ z)", Signature::Lgroup).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_statement("x <= (y", Signature::Semiring).unwrap_err() {
            Error::Parse(p) => assert_eq!(p.position, 7),
            other => panic!("{other:?}"),
        }
        match parse_statement("x <= y $", Signature::Semiring).unwrap_err() {
            Error::Parse(p) => assert_eq!(p.position, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_statement("x", Signature::Semiring).is_err());
        assert!(parse_term("_x", Signature::Semiring).is_err());
    }

    #[test]
    fn fresh_names_parse() {
        assert_eq!(
            parse_term("_f12", Signature::Monoid).unwrap(),
            Term::Var(Var::fresh(12))
        );
    }

    #[test]
    fn inequation_needs_join() {
        assert!(parse_statement("x <= y", Signature::Group).is_err());
    }
}
