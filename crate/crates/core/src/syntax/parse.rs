use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use super::{Formula, Sequent, SubexpIndex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(char),
    #[error("expected {expected}, found {found}")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("nested division needs parentheses")]
    NonAssociativeDivision,
    #[error("empty succedent")]
    EmptySuccedent,
    #[error("missing `->`")]
    MissingArrow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Star,
    Backslash,
    Slash,
    Amp,
    Bar,
    Bang,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        use alloc::string::ToString;
        match self {
            Tok::Ident(s) => alloc::format!("identifier `{}`", s),
            Tok::One => "`1`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Backslash => "`\\`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Amp => "`&`".to_string(),
            Tok::Bar => "`|`".to_string(),
            Tok::Bang => "`!`".to_string(),
            Tok::LBrace => "`{`".to_string(),
            Tok::RBrace => "`}`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '*' => Tok::Star,
            '\\' => Tok::Backslash,
            '/' => Tok::Slash,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '!' => Tok::Bang,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '1' => Tok::One,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                out.push((start, Tok::Arrow));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((start, Tok::Ident(String::from(&text[i..j]))));
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::UnknownToken(ch),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expected(&self, what: &'static str) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Expected {
                expected: what,
                found: self.peek().describe(),
            },
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.with()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.with()?;
            lhs = Formula::plus(lhs, rhs);
        }
        Ok(lhs)
    }

    fn with(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.division()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.division()?;
            lhs = Formula::with(lhs, rhs);
        }
        Ok(lhs)
    }

    fn division(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.product()?;
        let out = match self.peek() {
            Tok::Backslash => {
                self.bump();
                Formula::ldiv(lhs, self.product()?)
            }
            Tok::Slash => {
                self.bump();
                Formula::rdiv(lhs, self.product()?)
            }
            _ => return Ok(lhs),
        };
        if matches!(self.peek(), Tok::Backslash | Tok::Slash) {
            return Err(ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::NonAssociativeDivision,
            });
        }
        Ok(out)
    }

    fn product(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::product(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                self.expect(Tok::LBrace, "`{` after `!`")?;
                let index = match self.bump() {
                    Tok::Ident(s) => s,
                    _ => {
                        self.at -= 1;
                        return Err(self.expected("subexponential index"));
                    }
                };
                self.expect(Tok::RBrace, "`}`")?;
                let body = self.unary()?;
                Ok(Formula::Bang(SubexpIndex(index), alloc::boxed::Box::new(body)))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Formula::Atom(s))
            }
            Tok::One => {
                self.bump();
                Ok(Formula::Unit)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.expected("formula")),
        }
    }
}

/// Parses a single formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.expected("end of formula"));
    }
    Ok(f)
}

/// Parses `A1, ..., An -> B`; `-> B` has an empty antecedent.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let mut antecedent = Vec::new();
    if *p.peek() != Tok::Arrow {
        loop {
            antecedent.push(p.formula()?);
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Arrow => break,
                Tok::Eof => {
                    return Err(ParseError {
                        pos: p.pos(),
                        kind: ParseErrorKind::MissingArrow,
                    })
                }
                _ => return Err(p.expected("`,` or `->`")),
            }
        }
    }
    p.bump();
    if *p.peek() == Tok::Eof {
        return Err(ParseError {
            pos: p.pos(),
            kind: ParseErrorKind::EmptySuccedent,
        });
    }
    let succedent = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.expected("end of sequent"));
    }
    Ok(Sequent::new(antecedent, succedent))
}
