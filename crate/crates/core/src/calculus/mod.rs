//! Sequent calculus with subexponentials: rule table, derivation checking,
//! bounded cut-free backward proof search and cut replay.

mod check;
mod rules;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use thiserror::Error;

use crate::syntax::{Sequent, SubexpIndex};

pub use check::{check_derivation, CheckError, Violation};
pub use rules::{applicable_rules, RuleInstance};
pub use search::{prove, replay_without_cut, ProofResult, SearchBudget, SearchStats};

/// Which Lambek calculus the rules are drawn from.
///
/// `L` forbids empty antecedents anywhere, `Lstar` allows them, `L1` adds the
/// unit rules. The additive and modal rules are available in all three.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    L,
    Lstar,
    #[default]
    L1,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::L => "L",
            Mode::Lstar => "Lstar",
            Mode::L1 => "L1",
        })
    }
}

impl FromStr for Mode {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Mode::L),
            "Lstar" | "L*" => Ok(Mode::Lstar),
            "L1" => Ok(Mode::L1),
            _ => Err(UnknownName(String::from(s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown name `{0}`")]
pub struct UnknownName(pub String);

/// Inference rules. The modal structural rules and promotion carry the
/// subexponential index they act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Ax,
    LDivL,
    LDivR,
    RDivL,
    RDivR,
    ProdL,
    ProdR,
    UnitL,
    UnitR,
    WithL1,
    WithL2,
    WithR,
    PlusL,
    PlusR1,
    PlusR2,
    BangL,
    BangR,
    NContr1,
    NContr2,
    Ex1,
    Ex2,
    WeakBang,
    Cut,
}

impl RuleId {
    pub const ALL: [RuleId; 23] = [
        RuleId::Ax,
        RuleId::LDivL,
        RuleId::LDivR,
        RuleId::RDivL,
        RuleId::RDivR,
        RuleId::ProdL,
        RuleId::ProdR,
        RuleId::UnitL,
        RuleId::UnitR,
        RuleId::WithL1,
        RuleId::WithL2,
        RuleId::WithR,
        RuleId::PlusL,
        RuleId::PlusR1,
        RuleId::PlusR2,
        RuleId::BangL,
        RuleId::BangR,
        RuleId::NContr1,
        RuleId::NContr2,
        RuleId::Ex1,
        RuleId::Ex2,
        RuleId::WeakBang,
        RuleId::Cut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Ax => "Ax",
            RuleId::LDivL => "LDivL",
            RuleId::LDivR => "LDivR",
            RuleId::RDivL => "RDivL",
            RuleId::RDivR => "RDivR",
            RuleId::ProdL => "ProdL",
            RuleId::ProdR => "ProdR",
            RuleId::UnitL => "UnitL",
            RuleId::UnitR => "UnitR",
            RuleId::WithL1 => "WithL1",
            RuleId::WithL2 => "WithL2",
            RuleId::WithR => "WithR",
            RuleId::PlusL => "PlusL",
            RuleId::PlusR1 => "PlusR1",
            RuleId::PlusR2 => "PlusR2",
            RuleId::BangL => "BangL",
            RuleId::BangR => "BangR",
            RuleId::NContr1 => "NContr1",
            RuleId::NContr2 => "NContr2",
            RuleId::Ex1 => "Ex1",
            RuleId::Ex2 => "Ex2",
            RuleId::WeakBang => "WeakBang",
            RuleId::Cut => "Cut",
        }
    }

    /// Rules whose instances name a subexponential index.
    pub fn carries_index(self) -> bool {
        matches!(
            self,
            RuleId::BangR
                | RuleId::NContr1
                | RuleId::NContr2
                | RuleId::Ex1
                | RuleId::Ex2
                | RuleId::WeakBang
        )
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::Ax | RuleId::UnitR => 0,
            RuleId::LDivL
            | RuleId::RDivL
            | RuleId::ProdR
            | RuleId::WithR
            | RuleId::PlusL
            | RuleId::Cut => 2,
            _ => 1,
        }
    }

    pub fn is_contraction(self) -> bool {
        matches!(self, RuleId::NContr1 | RuleId::NContr2)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownName(String::from(s)))
    }
}

/// A derivation tree. Premises are ordered as in the rule figures: for the
/// division left rules the minor premise (`Γ -> A`) comes first, for cut
/// the premise `Γ -> A` comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub index: Option<SubexpIndex>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: RuleId, conclusion: Sequent, premises: Vec<Derivation>) -> Self {
        Derivation {
            conclusion,
            rule,
            index: None,
            premises,
        }
    }

    pub fn with_index(
        rule: RuleId,
        index: impl Into<String>,
        conclusion: Sequent,
        premises: Vec<Derivation>,
    ) -> Self {
        Derivation {
            conclusion,
            rule,
            index: Some(SubexpIndex::new(index)),
            premises,
        }
    }

    pub fn axiom(formula: crate::syntax::Formula) -> Self {
        Derivation::new(
            RuleId::Ax,
            Sequent::new(alloc::vec![formula.clone()], formula),
            Vec::new(),
        )
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    pub fn uses_rule(&self, rule: RuleId) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses_rule(rule))
    }

    pub fn is_cut_free(&self) -> bool {
        !self.uses_rule(RuleId::Cut)
    }

    /// Every node's conclusion, preorder.
    pub fn sequents(&self) -> Vec<&Sequent> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(d) = stack.pop() {
            out.push(&d.conclusion);
            stack.extend(d.premises.iter().rev());
        }
        out
    }

    fn write_tree(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        for _ in 0..depth {
            f.write_str("  ")?;
        }
        f.write_str(self.rule.name())?;
        if let Some(ix) = &self.index {
            write!(f, " {}", ix)?;
        }
        writeln!(f, " :: {}", self.conclusion)?;
        for p in &self.premises {
            p.write_tree(f, depth + 1)?;
        }
        Ok(())
    }
}

/// Indented tree, one node per line: `rule [index] :: sequent`.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("unknown subexponential index `{0}`")]
    UnknownIndex(SubexpIndex),
    #[error("invalid search budget: all limits must be positive")]
    InvalidBudget,
    #[error("input derivation is invalid: {0:?}")]
    InvalidDerivation(Vec<CheckError>),
}
