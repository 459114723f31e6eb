//! Non-commutative linear logic with subexponential modalities.
//!
//! This crate is the allocation-only core: formula syntax, the sequent
//! calculus with its derivation checker and bounded backward proof search,
//! finite quantales with quantic conuclei, the algebraic semantics with
//! exhaustive model enumeration, the relational representation of a finite
//! unital quantale, and a small categorial-grammar front end.
//!
//! File formats, the command line and parallel drivers live in the `smalc`
//! crate.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod grammar;
pub mod quantale;
pub mod representation;
pub mod semantics;
pub mod syntax;

pub use calculus::{
    applicable_rules, check_derivation, prove, replay_without_cut, Derivation, Mode, ProofResult,
    RuleId, SearchBudget, SearchStats,
};
pub use quantale::{ConucleusMap, Elem, ElemSet, FiniteQuantale, Subquantale};
pub use syntax::{
    parse_formula, parse_sequent, validate_signature, Formula, Sequent, Signature, SignatureSpec,
    SubexpIndex,
};
