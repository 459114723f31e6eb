//! Formulas, sequents and subexponential signatures.
//!
//! Concrete syntax (ASCII):
//!
//! | connective            | text     | binding |
//! |-----------------------|----------|---------|
//! | modality `!s`         | `!{s}A`  | tightest |
//! | product               | `A * B`  | left-assoc |
//! | left/right division   | `A\B`, `B/A` | non-assoc |
//! | additive conjunction  | `A & B`  | left-assoc |
//! | additive disjunction  | `A | B`  | loosest, left-assoc |
//!
//! `1` is the unit; atoms and indices match `[a-zA-Z][a-zA-Z0-9_]*`.

mod parse;
mod signature;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use parse::{parse_formula, parse_sequent, ParseError, ParseErrorKind};
pub use signature::{validate_signature, SetName, Signature, SignatureError, SignatureSpec};

/// Name of a subexponential modality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubexpIndex(pub String);

impl SubexpIndex {
    pub fn new(name: impl Into<String>) -> Self {
        SubexpIndex(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SubexpIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula of the calculus.
///
/// `LDiv(a, b)` is `a\b` ("a under b", consumes an `a` on the left) and
/// `RDiv(b, a)` is `b/a` ("b over a", consumes an `a` on the right).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Unit,
    Product(Box<Formula>, Box<Formula>),
    LDiv(Box<Formula>, Box<Formula>),
    RDiv(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Bang(SubexpIndex, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn product(l: Formula, r: Formula) -> Self {
        Formula::Product(Box::new(l), Box::new(r))
    }

    pub fn ldiv(l: Formula, r: Formula) -> Self {
        Formula::LDiv(Box::new(l), Box::new(r))
    }

    pub fn rdiv(l: Formula, r: Formula) -> Self {
        Formula::RDiv(Box::new(l), Box::new(r))
    }

    pub fn with(l: Formula, r: Formula) -> Self {
        Formula::With(Box::new(l), Box::new(r))
    }

    pub fn plus(l: Formula, r: Formula) -> Self {
        Formula::Plus(Box::new(l), Box::new(r))
    }

    pub fn bang(index: impl Into<String>, body: Formula) -> Self {
        Formula::Bang(SubexpIndex::new(index), Box::new(body))
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Unit => {}
            Formula::Product(l, r)
            | Formula::LDiv(l, r)
            | Formula::RDiv(l, r)
            | Formula::With(l, r)
            | Formula::Plus(l, r) => {
                l.atoms(out);
                r.atoms(out);
            }
            Formula::Bang(_, b) => b.atoms(out),
        }
    }

    /// Subexponential indices occurring in the formula.
    pub fn indices(&self, out: &mut BTreeSet<SubexpIndex>) {
        match self {
            Formula::Atom(_) | Formula::Unit => {}
            Formula::Product(l, r)
            | Formula::LDiv(l, r)
            | Formula::RDiv(l, r)
            | Formula::With(l, r)
            | Formula::Plus(l, r) => {
                l.indices(out);
                r.indices(out);
            }
            Formula::Bang(s, b) => {
                out.insert(s.clone());
                b.indices(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 1,
            Formula::Product(l, r)
            | Formula::LDiv(l, r)
            | Formula::RDiv(l, r)
            | Formula::With(l, r)
            | Formula::Plus(l, r) => 1 + l.size() + r.size(),
            Formula::Bang(_, b) => 1 + b.size(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Plus(..) => 1,
            Formula::With(..) => 2,
            Formula::LDiv(..) | Formula::RDiv(..) => 3,
            Formula::Product(..) => 4,
            Formula::Atom(_) | Formula::Unit | Formula::Bang(..) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let paren = self.level() < min_level;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => f.write_str(a)?,
            Formula::Unit => f.write_str("1")?,
            Formula::Plus(l, r) => {
                l.fmt_at(f, 1)?;
                f.write_str(" | ")?;
                r.fmt_at(f, 2)?;
            }
            Formula::With(l, r) => {
                l.fmt_at(f, 2)?;
                f.write_str(" & ")?;
                r.fmt_at(f, 3)?;
            }
            Formula::LDiv(l, r) => {
                l.fmt_at(f, 4)?;
                f.write_str("\\")?;
                r.fmt_at(f, 4)?;
            }
            Formula::RDiv(l, r) => {
                l.fmt_at(f, 4)?;
                f.write_str("/")?;
                r.fmt_at(f, 4)?;
            }
            Formula::Product(l, r) => {
                l.fmt_at(f, 4)?;
                f.write_str("*")?;
                r.fmt_at(f, 5)?;
            }
            Formula::Bang(s, b) => {
                write!(f, "!{{{}}}", s)?;
                b.fmt_at(f, 5)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// `antecedent -> succedent`; the antecedent order is significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in &self.antecedent {
            a.atoms(&mut out);
        }
        self.succedent.atoms(&mut out);
        out
    }

    pub fn indices(&self) -> BTreeSet<SubexpIndex> {
        let mut out = BTreeSet::new();
        for a in &self.antecedent {
            a.indices(&mut out);
        }
        self.succedent.indices(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", a)?;
        }
        if self.antecedent.is_empty() {
            write!(f, "-> {}", self.succedent)
        } else {
            write!(f, " -> {}", self.succedent)
        }
    }
}

/// True if `s` matches `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
