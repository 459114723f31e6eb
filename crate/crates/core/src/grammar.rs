//! Categorial grammar: a sentence parses when the sequent of its word types
//! derives the target type.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use crate::calculus::{prove, CalculusError, Derivation, Mode, ProofResult, SearchBudget, SearchStats};
use crate::syntax::{Formula, Sequent, Signature, SubexpIndex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("unknown subexponential index `{0}`")]
    UnknownIndex(SubexpIndex),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<Formula>>,
    target: Formula,
    signature: Signature,
}

impl Lexicon {
    /// An empty lexicon with target `s`.
    pub fn new(signature: Signature) -> Self {
        Lexicon {
            entries: BTreeMap::new(),
            target: Formula::atom("s"),
            signature,
        }
    }

    fn check_indices(&self, f: &Formula) -> Result<(), GrammarError> {
        let mut ix = BTreeSet::new();
        f.indices(&mut ix);
        match ix.into_iter().find(|s| !self.signature.contains(s)) {
            Some(s) => Err(GrammarError::UnknownIndex(s)),
            None => Ok(()),
        }
    }

    pub fn set_target(&mut self, target: Formula) -> Result<(), GrammarError> {
        self.check_indices(&target)?;
        self.target = target;
        Ok(())
    }

    /// Adds a type for a word; repeated words become ambiguous.
    pub fn add(&mut self, word: impl Into<String>, ty: Formula) -> Result<(), GrammarError> {
        self.check_indices(&ty)?;
        self.entries.entry(word.into()).or_default().push(ty);
        Ok(())
    }

    pub fn types(&self, word: &str) -> Option<&[Formula]> {
        self.entries.get(word).map(|v| v.as_slice())
    }

    pub fn target(&self) -> &Formula {
        &self.target
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn entries(&self) -> &BTreeMap<String, Vec<Formula>> {
        &self.entries
    }

    /// The same lexicon over another signature, unchecked against it.
    pub fn with_signature(&self, signature: Signature) -> Self {
        Lexicon {
            signature,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseOutcome {
    Proved {
        assignment: Vec<Formula>,
        derivation: Derivation,
    },
    /// No assignment proved; `exhausted` when every attempt ran to completion.
    NotProved {
        exhausted: bool,
        assignments: usize,
        stats: Vec<SearchStats>,
    },
}

impl ParseOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ParseOutcome::Proved { .. })
    }
}

/// Tries each choice of one type per word, in lexicon order with the last
/// word varying fastest, and returns the first proved assignment.
pub fn parse_sentence(
    words: &[&str],
    lex: &Lexicon,
    mode: Mode,
    budget: SearchBudget,
) -> Result<ParseOutcome, GrammarError> {
    let choices: Vec<&[Formula]> = words
        .iter()
        .map(|w| lex.types(w).ok_or_else(|| GrammarError::UnknownWord(String::from(*w))))
        .collect::<Result<_, _>>()?;
    let mut pick = alloc::vec![0usize; words.len()];
    let mut exhausted = true;
    let mut stats = Vec::new();
    loop {
        let assignment: Vec<Formula> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let goal = Sequent::new(assignment.clone(), lex.target.clone());
        match prove(&goal, &lex.signature, mode, budget)? {
            ProofResult::Proved(derivation) => {
                return Ok(ParseOutcome::Proved {
                    assignment,
                    derivation,
                })
            }
            ProofResult::NotProvedExhausted(s) => stats.push(s),
            ProofResult::NotProvedBudget(s) => {
                exhausted = false;
                stats.push(s);
            }
        }
        // odometer
        let mut k = words.len();
        loop {
            if k == 0 {
                return Ok(ParseOutcome::NotProved {
                    exhausted,
                    assignments: stats.len(),
                    stats,
                });
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}
