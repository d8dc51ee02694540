//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! imp   := or ( "->" imp )?
//! or    := and ( "|" and )*
//! and   := unary ( "&" unary )*
//! unary := "~" unary | "<>" unary | "[]" unary | atom
//! atom  := "false" | ident | "(" imp ")"
//! ident := [a-z][a-zA-Z0-9_]*
//! ```

use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Falsum,
    Ident(String),
    Not,
    Diamond,
    Box,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Falsum => "`false`".into(),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Not => "`~`".into(),
        Tok::Diamond => "`<>`".into(),
        Tok::Box => "`[]`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'<' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(syntax(i, "expected `<>`"));
                }
                i += 2;
                Tok::Diamond
            }
            b'[' => {
                if bytes.get(i + 1) != Some(&b']') {
                    return Err(syntax(i, "expected `[]`"));
                }
                i += 2;
                Tok::Box
            }
            b'-' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(syntax(i, "expected `->`"));
                }
                i += 2;
                Tok::Arrow
            }
            b'a'..=b'z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "false" {
                    Tok::Falsum
                } else {
                    Tok::Ident(word.to_string())
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, &format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Diamond => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Falsum => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return self.error("`)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("a formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut parser = Parser { toks: tokenize(text)?, pos: 0 };
    let f = parser.implication()?;
    if *parser.peek() != Tok::End {
        return parser.error("end of input");
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}
