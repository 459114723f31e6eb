//! Bounded cut-free backward proof search.
//!
//! Depth-first search with a branch-local repeated-sequent check, run under
//! iterative deepening on (contraction bound, depth bound). Each iteration
//! gets a fresh node quota, so raising any budget field only adds
//! iterations after the ones that ran before. Two caches are shared across
//! iterations: proved sequents, and sequents whose subtree was explored to
//! the end without touching any limit or the loop check (those are
//! unprovable outright).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::vec::Vec;

use super::rules::{instances, Arena, ISeq, Node};
use super::{check_derivation, CalculusError, Derivation, Mode, RuleId};
use crate::syntax::{Sequent, Signature};

/// Termination control for [`prove`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_depth: u32,
    pub max_contractions_per_branch: u32,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 40,
            max_contractions_per_branch: 3,
            max_nodes: 1_000_000,
        }
    }
}

impl SearchBudget {
    pub fn is_valid(&self) -> bool {
        self.max_depth > 0 && self.max_contractions_per_branch > 0 && self.max_nodes > 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Goals expanded over all iterations.
    pub nodes: u64,
    pub iterations: u32,
    /// Bounds of the last iteration run.
    pub depth_bound: u32,
    pub contraction_bound: u32,
    pub hit_depth: bool,
    pub hit_contractions: bool,
    pub hit_nodes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofResult {
    Proved(Derivation),
    /// The search space was explored completely; no cut-free proof exists.
    NotProvedExhausted(SearchStats),
    /// Some limit was hit before a proof was found.
    NotProvedBudget(SearchStats),
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved(_))
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            ProofResult::Proved(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Cuts {
    depth: bool,
    contr: bool,
    nodes: bool,
    looped: bool,
}

impl Cuts {
    fn clean(self) -> bool {
        !(self.depth || self.contr || self.nodes || self.looped)
    }

    fn union(&mut self, o: Cuts) {
        self.depth |= o.depth;
        self.contr |= o.contr;
        self.nodes |= o.nodes;
        self.looped |= o.looped;
    }
}

struct PNode {
    rule: RuleId,
    index: Option<u32>,
    seq: ISeq,
    premises: Vec<Rc<PNode>>,
    height: u32,
}

enum Outcome {
    Proved(Rc<PNode>),
    Failed(Cuts),
}

struct Engine<'a> {
    sig: &'a Signature,
    mode: Mode,
    arena: Arena,
    proved: BTreeMap<ISeq, Rc<PNode>>,
    refuted: BTreeSet<ISeq>,
    nodes: u64,
    quota: u64,
    total_nodes: u64,
}

impl Engine<'_> {
    fn search(&mut self, goal: &ISeq, depth: u32, contr: u32, ancestors: &mut Vec<ISeq>) -> Outcome {
        if let Some(p) = self.proved.get(goal) {
            if p.height <= depth {
                return Outcome::Proved(p.clone());
            }
        }
        if self.refuted.contains(goal) || (self.mode == Mode::L && goal.ant.is_empty()) {
            return Outcome::Failed(Cuts::default());
        }
        if ancestors.contains(goal) {
            return Outcome::Failed(Cuts {
                looped: true,
                ..Cuts::default()
            });
        }
        if self.nodes >= self.quota {
            return Outcome::Failed(Cuts {
                nodes: true,
                ..Cuts::default()
            });
        }
        self.nodes += 1;
        self.total_nodes += 1;
        if depth == 0 {
            return Outcome::Failed(Cuts {
                depth: true,
                ..Cuts::default()
            });
        }

        let candidates = instances(&self.arena, goal, self.sig, self.mode);
        let mut cuts = Cuts::default();
        let mut tried: BTreeSet<Vec<ISeq>> = BTreeSet::new();
        ancestors.push(goal.clone());
        for inst in candidates {
            let contracting = inst.rule.is_contraction();
            if contracting && contr == 0 {
                cuts.contr = true;
                continue;
            }
            if !tried.insert(inst.premises.clone()) {
                continue;
            }
            let next_contr = if contracting { contr - 1 } else { contr };
            let mut subs = Vec::with_capacity(inst.premises.len());
            let mut ok = true;
            for p in &inst.premises {
                match self.search(p, depth - 1, next_contr, ancestors) {
                    Outcome::Proved(d) => subs.push(d),
                    Outcome::Failed(c) => {
                        cuts.union(c);
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                ancestors.pop();
                let height = 1 + subs.iter().map(|s| s.height).max().unwrap_or(0);
                let node = Rc::new(PNode {
                    rule: inst.rule,
                    index: inst.index,
                    seq: goal.clone(),
                    premises: subs,
                    height,
                });
                self.proved.insert(goal.clone(), node.clone());
                return Outcome::Proved(node);
            }
        }
        ancestors.pop();
        if cuts.clean() {
            self.refuted.insert(goal.clone());
        }
        Outcome::Failed(cuts)
    }

    fn derivation(&self, p: &PNode) -> Derivation {
        Derivation {
            conclusion: self.arena.sequent(&p.seq),
            rule: p.rule,
            index: p.index.map(|s| self.arena.index_name(s).clone()),
            premises: p.premises.iter().map(|q| self.derivation(q)).collect(),
        }
    }
}

fn has_contractible_bang(arena: &Arena, goal: &ISeq, sig: &Signature) -> bool {
    fn walk(arena: &Arena, f: u32, sig: &Signature) -> bool {
        match arena.node(f) {
            Node::Atom(_) | Node::Unit => false,
            Node::Prod(l, r) | Node::LDiv(l, r) | Node::RDiv(l, r) | Node::With(l, r) | Node::Plus(l, r) => {
                walk(arena, l, sig) || walk(arena, r, sig)
            }
            Node::Bang(slot, b) => arena.index_id(slot).is_some_and(|s| sig.contraction(s)) || walk(arena, b, sig),
        }
    }
    goal.ant.iter().chain(core::iter::once(&goal.succ)).any(|&f| walk(arena, f, sig))
}

/// Searches for a cut-free derivation of `goal`.
///
/// Deterministic for identical inputs. A `Proved` derivation always passes
/// [`check_derivation`]. `NotProvedExhausted` is returned only when an
/// iteration finished without hitting any limit.
pub fn prove(goal: &Sequent, sig: &Signature, mode: Mode, budget: SearchBudget) -> Result<ProofResult, CalculusError> {
    if !budget.is_valid() {
        return Err(CalculusError::InvalidBudget);
    }
    let mut arena = Arena::default();
    let root = arena.intern_seq(goal, sig);
    if let Some(ix) = arena.unknown_index() {
        return Err(CalculusError::UnknownIndex(ix.clone()));
    }
    let max_contr = if has_contractible_bang(&arena, &root, sig) {
        budget.max_contractions_per_branch
    } else {
        0
    };
    let mut engine = Engine {
        sig,
        mode,
        arena,
        proved: BTreeMap::new(),
        refuted: BTreeSet::new(),
        nodes: 0,
        quota: budget.max_nodes,
        total_nodes: 0,
    };
    let mut stats = SearchStats::default();
    for c in 0..=max_contr {
        let mut contr_cut = false;
        for d in 1..=budget.max_depth {
            engine.nodes = 0;
            stats.iterations += 1;
            stats.depth_bound = d;
            stats.contraction_bound = c;
            let outcome = engine.search(&root, d, c, &mut Vec::new());
            stats.nodes = engine.total_nodes;
            match outcome {
                Outcome::Proved(p) => {
                    let derivation = engine.derivation(&p);
                    debug_assert!(check_derivation(&derivation, sig, mode).is_ok());
                    return Ok(ProofResult::Proved(derivation));
                }
                Outcome::Failed(cuts) => {
                    stats.hit_depth |= cuts.depth;
                    stats.hit_contractions |= cuts.contr;
                    stats.hit_nodes |= cuts.nodes;
                    if !(cuts.depth || cuts.contr || cuts.nodes) {
                        return Ok(ProofResult::NotProvedExhausted(stats));
                    }
                    contr_cut = cuts.contr;
                    if !cuts.depth {
                        break;
                    }
                }
            }
        }
        if !contr_cut {
            break;
        }
    }
    Ok(ProofResult::NotProvedBudget(stats))
}

/// Checks `d` (which may use cut) and then searches for a cut-free proof of
/// its conclusion. This is an empirical admissibility test, not a
/// cut-elimination procedure.
pub fn replay_without_cut(
    d: &Derivation,
    sig: &Signature,
    mode: Mode,
    budget: SearchBudget,
) -> Result<ProofResult, CalculusError> {
    check_derivation(d, sig, mode).map_err(CalculusError::InvalidDerivation)?;
    prove(&d.conclusion, sig, mode, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, validate_signature, SignatureSpec};
    use alloc::string::ToString;
    use alloc::vec;

    fn run(s: &str, sig: &Signature, mode: Mode) -> ProofResult {
        let r = prove(&parse_sequent(s).unwrap(), sig, mode, SearchBudget::default()).unwrap();
        if let ProofResult::Proved(d) = &r {
            assert_eq!(check_derivation(d, sig, mode), Ok(()), "{}", d);
            assert!(d.is_cut_free());
        }
        r
    }

    fn sig_one(w: bool, c: bool, e: bool) -> Signature {
        let s = || vec!["s".to_string()];
        validate_signature(&SignatureSpec {
            indices: s(),
            order: vec![],
            weakening: if w { s() } else { vec![] },
            contraction: if c { s() } else { vec![] },
            exchange: if e { s() } else { vec![] },
        })
        .unwrap()
    }

    #[test]
    fn distributivity_items() {
        let sig = Signature::empty();
        assert!(run("(a&b)|(a&c) -> a&(b|c)", &sig, Mode::L).is_proved());
        assert!(run("a|(b&c) -> (a|b)&(a|c)", &sig, Mode::L).is_proved());
        assert!(matches!(
            run("(a|b)&(a|c) -> a|(b&c)", &sig, Mode::L1),
            ProofResult::NotProvedExhausted(_)
        ));
        assert!(matches!(
            run("a&(b|c) -> (a&b)|(a&c)", &sig, Mode::L1),
            ProofResult::NotProvedExhausted(_)
        ));
    }

    #[test]
    fn dereliction_and_exchange() {
        assert!(run("!{s}a -> a", &sig_one(false, false, false), Mode::L).is_proved());
        assert!(run("!{s}a, b -> b * !{s}a", &sig_one(true, true, true), Mode::L1).is_proved());
        assert!(!run("!{s}a, b -> b * !{s}a", &sig_one(false, false, false), Mode::L1).is_proved());
    }

    #[test]
    fn contraction_needs_budget_and_c() {
        let s = "!{s}a -> a * a";
        assert!(run(s, &sig_one(false, true, false), Mode::L1).is_proved());
        assert!(matches!(
            run(s, &sig_one(false, false, false), Mode::L1),
            ProofResult::NotProvedExhausted(_)
        ));
        // unprovable with contraction available: exhausts the contraction bound
        assert!(matches!(
            run("!{s}a -> b", &sig_one(false, true, false), Mode::L1),
            ProofResult::NotProvedBudget(_)
        ));
    }

    #[test]
    fn unit_and_empty_antecedents() {
        let sig = Signature::empty();
        assert!(run("-> 1", &sig, Mode::L1).is_proved());
        assert!(!run("-> 1", &sig, Mode::Lstar).is_proved());
        assert!(run("-> a\\a", &sig, Mode::Lstar).is_proved());
        assert!(!run("-> a\\a", &sig, Mode::L).is_proved());
        assert!(run("1, a -> a", &sig, Mode::L1).is_proved());
    }

    #[test]
    fn bad_inputs() {
        let g = parse_sequent("!{zz}a -> a").unwrap();
        assert!(matches!(
            prove(&g, &Signature::empty(), Mode::L1, SearchBudget::default()),
            Err(CalculusError::UnknownIndex(_))
        ));
        let bad = SearchBudget {
            max_depth: 0,
            ..SearchBudget::default()
        };
        assert_eq!(
            prove(&parse_sequent("a -> a").unwrap(), &Signature::empty(), Mode::L1, bad),
            Err(CalculusError::InvalidBudget)
        );
    }
}
