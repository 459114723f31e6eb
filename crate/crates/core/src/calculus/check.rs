//! Node-by-node derivation checking.
//!
//! The checker works forwards: for each node it searches for a principal
//! position (and split point) that makes the premises and the conclusion an
//! instance of the named rule. It shares no code with the backward rule
//! generator used by proof search.

use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use super::{Derivation, Mode, RuleId};
use crate::syntax::{Formula, Sequent, SetName, Signature, SubexpIndex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("expected {expected} premises, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("conclusion and premises do not instantiate the rule")]
    Shape,
    #[error("empty antecedent is not allowed in mode L")]
    EmptyAntecedent,
    #[error("unit rules are only available in mode L1")]
    UnitOutsideL1,
    #[error("rule needs a subexponential index")]
    MissingIndex,
    #[error("rule takes no subexponential index")]
    UnexpectedIndex,
    #[error("unknown subexponential index `{0}`")]
    UnknownIndex(SubexpIndex),
    #[error("promotion side condition: every antecedent formula must be !t B with {0} ⪯ t")]
    Promotion(SubexpIndex),
    #[error("index {index} is not in {set}")]
    NotInSet { index: SubexpIndex, set: SetName },
}

/// A failed node: `path` lists premise positions from the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: RuleId,
    pub violation: Violation,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("node ")?;
        if self.path.is_empty() {
            f.write_str("root")?;
        } else {
            for (i, p) in self.path.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{}", p)?;
            }
        }
        write!(f, " ({}): {}", self.rule, self.violation)
    }
}

/// Checks every node of `d`. Returns all violations found.
pub fn check_derivation(d: &Derivation, sig: &Signature, mode: Mode) -> Result<(), Vec<CheckError>> {
    let mut errors = Vec::new();
    let mut path = Vec::new();
    walk(d, sig, mode, &mut path, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn walk(d: &Derivation, sig: &Signature, mode: Mode, path: &mut Vec<usize>, errors: &mut Vec<CheckError>) {
    if let Err(violation) = check_node(d, sig, mode) {
        errors.push(CheckError {
            path: path.clone(),
            rule: d.rule,
            violation,
        });
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        walk(p, sig, mode, path, errors);
        path.pop();
    }
}

fn check_node(d: &Derivation, sig: &Signature, mode: Mode) -> Result<(), Violation> {
    if let Some(ix) = d.conclusion.indices().into_iter().find(|ix| !sig.contains(ix)) {
        return Err(Violation::UnknownIndex(ix));
    }
    if mode == Mode::L && d.conclusion.antecedent.is_empty() {
        return Err(Violation::EmptyAntecedent);
    }
    if matches!(d.rule, RuleId::UnitL | RuleId::UnitR) && mode != Mode::L1 {
        return Err(Violation::UnitOutsideL1);
    }
    if d.premises.len() != d.rule.arity() {
        return Err(Violation::Arity {
            expected: d.rule.arity(),
            found: d.premises.len(),
        });
    }
    let index = match (&d.index, d.rule.carries_index()) {
        (Some(ix), true) => match sig.lookup(ix.as_str()) {
            Some(id) => Some((ix, id)),
            None => return Err(Violation::UnknownIndex(ix.clone())),
        },
        (None, true) => return Err(Violation::MissingIndex),
        (Some(_), false) => return Err(Violation::UnexpectedIndex),
        (None, false) => None,
    };

    let g = &d.conclusion.antecedent;
    let c = &d.conclusion.succedent;
    let p: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    let shape = |ok: bool| if ok { Ok(()) } else { Err(Violation::Shape) };

    match d.rule {
        RuleId::Ax => shape(g.len() == 1 && &g[0] == c),
        RuleId::UnitR => shape(g.is_empty() && *c == Formula::Unit),
        RuleId::LDivR => match c {
            Formula::LDiv(a, b) => {
                shape(p[0].succedent == **b && p[0].antecedent.first() == Some(a) && p[0].antecedent[1..] == g[..])
            }
            _ => Err(Violation::Shape),
        },
        RuleId::RDivR => match c {
            Formula::RDiv(b, a) => {
                let ant = &p[0].antecedent;
                shape(p[0].succedent == **b && ant.last() == Some(a) && ant[..ant.len() - 1] == g[..])
            }
            _ => Err(Violation::Shape),
        },
        RuleId::PlusR1 | RuleId::PlusR2 => match c {
            Formula::Plus(a1, a2) => {
                let want = if d.rule == RuleId::PlusR1 { a1 } else { a2 };
                shape(p[0].succedent == **want && p[0].antecedent == *g)
            }
            _ => Err(Violation::Shape),
        },
        RuleId::WithR => match c {
            Formula::With(a, b) => shape(
                p[0].antecedent == *g && p[1].antecedent == *g && p[0].succedent == **a && p[1].succedent == **b,
            ),
            _ => Err(Violation::Shape),
        },
        RuleId::ProdR => match c {
            Formula::Product(a, b) => {
                let (l, r) = (&p[0].antecedent, &p[1].antecedent);
                shape(
                    p[0].succedent == **a
                        && p[1].succedent == **b
                        && l.len() + r.len() == g.len()
                        && g[..l.len()] == l[..]
                        && g[l.len()..] == r[..],
                )
            }
            _ => Err(Violation::Shape),
        },
        RuleId::BangR => {
            let (ix, id) = index.unwrap();
            let body = match c {
                Formula::Bang(s, body) if s == ix => body,
                _ => return Err(Violation::Shape),
            };
            shape(p[0].succedent == **body && p[0].antecedent == *g)?;
            let dominated = g.iter().all(|f| match f {
                Formula::Bang(t, _) => sig.lookup(t.as_str()).is_some_and(|t| sig.leq(id, t)),
                _ => false,
            });
            if dominated {
                Ok(())
            } else {
                Err(Violation::Promotion(ix.clone()))
            }
        }
        RuleId::ProdL => shape(same_succ(&p, c) && (0..g.len()).any(|i| match &g[i] {
            Formula::Product(a, b) => replaced(g, i, &[a, b], &p[0].antecedent),
            _ => false,
        })),
        RuleId::UnitL => shape(
            same_succ(&p, c) && (0..g.len()).any(|i| g[i] == Formula::Unit && replaced(g, i, &[], &p[0].antecedent)),
        ),
        RuleId::WithL1 | RuleId::WithL2 => shape(same_succ(&p, c) && (0..g.len()).any(|i| match &g[i] {
            Formula::With(a1, a2) => {
                let want = if d.rule == RuleId::WithL1 { a1 } else { a2 };
                replaced(g, i, &[want], &p[0].antecedent)
            }
            _ => false,
        })),
        RuleId::BangL => shape(same_succ(&p, c) && (0..g.len()).any(|i| match &g[i] {
            Formula::Bang(_, a) => replaced(g, i, &[a], &p[0].antecedent),
            _ => false,
        })),
        RuleId::PlusL => shape(same_succ(&p, c) && (0..g.len()).any(|i| match &g[i] {
            Formula::Plus(a, b) => replaced(g, i, &[a], &p[0].antecedent) && replaced(g, i, &[b], &p[1].antecedent),
            _ => false,
        })),
        RuleId::LDivL => shape(p[1].succedent == *c && (0..g.len()).any(|i| match &g[i] {
            Formula::LDiv(a, b) => {
                let gamma = &p[0].antecedent;
                p[0].succedent == **a
                    && gamma.len() <= i
                    && g[i - gamma.len()..i] == gamma[..]
                    && spliced(&g[..i - gamma.len()], b, &g[i + 1..], &p[1].antecedent)
            }
            _ => false,
        })),
        RuleId::RDivL => shape(p[1].succedent == *c && (0..g.len()).any(|i| match &g[i] {
            Formula::RDiv(b, a) => {
                let gamma = &p[0].antecedent;
                let end = i + 1 + gamma.len();
                p[0].succedent == **a
                    && end <= g.len()
                    && g[i + 1..end] == gamma[..]
                    && spliced(&g[..i], b, &g[end..], &p[1].antecedent)
            }
            _ => false,
        })),
        RuleId::Cut => {
            let a = &p[0].succedent;
            let gamma = &p[0].antecedent;
            let major = &p[1].antecedent;
            shape(
                p[1].succedent == *c
                    && major.len() + gamma.len() == g.len() + 1
                    && (0..major.len()).any(|r| {
                        major[r] == *a
                            && g[..r] == major[..r]
                            && g[r..r + gamma.len()] == gamma[..]
                            && g[r + gamma.len()..] == major[r + 1..]
                    }),
            )
        }
        RuleId::WeakBang | RuleId::NContr1 | RuleId::NContr2 | RuleId::Ex1 | RuleId::Ex2 => {
            let (ix, id) = index.unwrap();
            let ant = &p[0].antecedent;
            let principal = |f: &Formula| matches!(f, Formula::Bang(s, _) if s == ix);
            let ok = same_succ(&p, c)
                && match d.rule {
                    // Γ, !A, Δ -> B  from  Γ, Δ -> B
                    RuleId::WeakBang => (0..g.len()).any(|i| principal(&g[i]) && replaced(g, i, &[], ant)),
                    // Γ, !A, Δ, Θ  from  Γ, !A, Δ, !A, Θ: copy inserted right of i
                    RuleId::NContr1 => (0..g.len())
                        .any(|i| principal(&g[i]) && (i + 1..=g.len()).any(|q| inserted(g, q, &g[i], ant))),
                    // Γ, Δ, !A, Θ  from  Γ, !A, Δ, !A, Θ: copy inserted left of i
                    RuleId::NContr2 => {
                        (0..g.len()).any(|i| principal(&g[i]) && (0..=i).any(|q| inserted(g, q, &g[i], ant)))
                    }
                    // Γ, !A, Δ, Θ  from  Γ, Δ, !A, Θ: moved right in the premise
                    RuleId::Ex1 => {
                        (0..g.len()).any(|i| principal(&g[i]) && (i..g.len()).any(|q| moved(g, i, q, ant)))
                    }
                    // Γ, Δ, !A, Θ  from  Γ, !A, Δ, Θ: moved left in the premise
                    _ => (0..g.len()).any(|i| principal(&g[i]) && (0..=i).any(|q| moved(g, i, q, ant))),
                };
            if !ok {
                return Err(Violation::Shape);
            }
            let set = match d.rule {
                RuleId::WeakBang => SetName::W,
                RuleId::NContr1 | RuleId::NContr2 => SetName::C,
                _ => SetName::E,
            };
            if sig.in_set(set, id) {
                Ok(())
            } else {
                Err(Violation::NotInSet { index: ix.clone(), set })
            }
        }
    }
}

fn same_succ(p: &[&Sequent], c: &Formula) -> bool {
    p.iter().all(|s| s.succedent == *c)
}

/// `ant` is `g` with position `i` replaced by `with`.
fn replaced(g: &[Formula], i: usize, with: &[&Formula], ant: &[Formula]) -> bool {
    ant.len() + 1 == g.len() + with.len()
        && ant[..i] == g[..i]
        && ant[i..i + with.len()].iter().zip(with).all(|(x, y)| x == *y)
        && ant[i + with.len()..] == g[i + 1..]
}

/// `ant` is `left, mid, right`.
fn spliced(left: &[Formula], mid: &Formula, right: &[Formula], ant: &[Formula]) -> bool {
    ant.len() == left.len() + 1 + right.len()
        && ant[..left.len()] == *left
        && ant[left.len()] == *mid
        && ant[left.len() + 1..] == *right
}

/// `ant` is `g` with `f` inserted at position `q`.
fn inserted(g: &[Formula], q: usize, f: &Formula, ant: &[Formula]) -> bool {
    ant.len() == g.len() + 1 && ant[..q] == g[..q] && ant[q] == *f && ant[q + 1..] == g[q..]
}

/// `ant` is `g` with the element at `from` moved to position `to`.
fn moved(g: &[Formula], from: usize, to: usize, ant: &[Formula]) -> bool {
    if ant.len() != g.len() {
        return false;
    }
    let mut v: Vec<&Formula> = g.iter().collect();
    let x = v.remove(from);
    v.insert(to, x);
    v.iter().zip(ant).all(|(a, b)| *a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, validate_signature, SignatureSpec};
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn ax(s: &str) -> Derivation {
        Derivation::axiom(crate::syntax::parse_formula(s).unwrap())
    }

    fn sig(indices: &[&str], order: &[(&str, &str)], w: &[&str], c: &[&str], e: &[&str]) -> Signature {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<String>>();
        validate_signature(&SignatureSpec {
            indices: v(indices),
            order: order.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            weakening: v(w),
            contraction: v(c),
            exchange: v(e),
        })
        .unwrap()
    }

    #[test]
    fn reduction_rule() {
        let d = Derivation::new(RuleId::LDivL, seq("a, a\\b -> b"), vec![ax("a"), ax("b")]);
        assert_eq!(check_derivation(&d, &Signature::empty(), Mode::L), Ok(()));
        // swapped premises are not an instance
        let bad = Derivation::new(RuleId::LDivL, seq("a, a\\b -> b"), vec![ax("b"), ax("a")]);
        let errs = check_derivation(&bad, &Signature::empty(), Mode::L).unwrap_err();
        assert_eq!(errs[0].violation, Violation::Shape);
        assert!(errs[0].path.is_empty());
    }

    #[test]
    fn promotion_side_condition() {
        let premise = Derivation::new(RuleId::BangL, seq("!{s1}a -> a"), vec![ax("a")]);
        let d = Derivation::with_index(RuleId::BangR, "s", seq("!{s1}a -> !{s}a"), vec![premise]);
        let up = sig(&["s", "s1"], &[("s", "s1")], &[], &[], &[]);
        assert_eq!(check_derivation(&d, &up, Mode::L1), Ok(()));
        let down = sig(&["s", "s1"], &[("s1", "s")], &[], &[], &[]);
        let errs = check_derivation(&d, &down, Mode::L1).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].violation, Violation::Promotion(SubexpIndex::new("s")));
        assert!(errs[0].to_string().contains("promotion side condition"));
    }

    #[test]
    fn derived_exchange() {
        // Γ = b, Δ = c, Θ = empty: from b, !s a, c -> d infer b, c, !s a -> d
        let s = sig(&["s"], &[], &["s"], &["s"], &["s"]);
        let top = Derivation::new(RuleId::Ax, seq("d -> d"), vec![]);
        // the top premise is arbitrary here; only the two structural steps matter
        let premise = Derivation {
            conclusion: seq("b, !{s}a, c -> d"),
            ..top
        };
        let weak = Derivation::with_index(RuleId::WeakBang, "s", seq("b, !{s}a, c, !{s}a -> d"), vec![premise]);
        let contr = Derivation::with_index(RuleId::NContr2, "s", seq("b, c, !{s}a -> d"), vec![weak]);
        let errs = check_derivation(&contr, &s, Mode::L1).unwrap_err();
        // only the placeholder leaf is wrong
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].path, vec![0, 0]);

        let no_w = sig(&["s"], &[], &[], &["s"], &["s"]);
        let errs = check_derivation(&contr, &no_w, Mode::L1).unwrap_err();
        assert!(errs.iter().any(|e| e.violation
            == Violation::NotInSet {
                index: SubexpIndex::new("s"),
                set: SetName::W
            }));
    }

    #[test]
    fn unit_rules_need_l1() {
        let d = Derivation::new(RuleId::UnitR, seq("-> 1"), vec![]);
        assert_eq!(check_derivation(&d, &Signature::empty(), Mode::L1), Ok(()));
        assert_eq!(
            check_derivation(&d, &Signature::empty(), Mode::Lstar).unwrap_err()[0].violation,
            Violation::UnitOutsideL1
        );
        assert_eq!(
            check_derivation(&d, &Signature::empty(), Mode::L).unwrap_err()[0].violation,
            Violation::EmptyAntecedent
        );
    }

    #[test]
    fn right_division_needs_nonempty_in_l() {
        // -> a\a from a -> a
        let d = Derivation::new(RuleId::LDivR, seq("-> a\\a"), vec![ax("a")]);
        assert_eq!(check_derivation(&d, &Signature::empty(), Mode::Lstar), Ok(()));
        assert!(check_derivation(&d, &Signature::empty(), Mode::L).is_err());
    }

    #[test]
    fn cut_figure() {
        let left = Derivation::new(RuleId::LDivL, seq("a, a\\b -> b"), vec![ax("a"), ax("b")]);
        let right = Derivation::new(RuleId::LDivL, seq("b, b\\c -> c"), vec![ax("b"), ax("c")]);
        let d = Derivation::new(RuleId::Cut, seq("a, a\\b, b\\c -> c"), vec![left.clone(), right.clone()]);
        assert_eq!(check_derivation(&d, &Signature::empty(), Mode::L), Ok(()));
        let bad = Derivation::new(RuleId::Cut, seq("a\\b, a, b\\c -> c"), vec![left, right]);
        assert!(check_derivation(&bad, &Signature::empty(), Mode::L).is_err());
    }

    #[test]
    fn index_bookkeeping() {
        let s = sig(&["s"], &[], &["s"], &[], &[]);
        let d = Derivation::new(RuleId::WeakBang, seq("!{s}a, b -> b"), vec![ax("b")]);
        assert_eq!(check_derivation(&d, &s, Mode::L1).unwrap_err()[0].violation, Violation::MissingIndex);
        let d = Derivation::with_index(RuleId::WeakBang, "s", seq("!{t}a, b -> b"), vec![ax("b")]);
        assert!(matches!(
            check_derivation(&d, &s, Mode::L1).unwrap_err()[0].violation,
            Violation::UnknownIndex(_)
        ));
    }
}
