//! Backward reading of the rule table over hash-consed formulas.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Mode, RuleId};
use crate::syntax::{Formula, Sequent, Signature, SubexpIndex};

pub(crate) type FId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Node {
    Atom(u32),
    Unit,
    Prod(FId, FId),
    LDiv(FId, FId),
    RDiv(FId, FId),
    With(FId, FId),
    Plus(FId, FId),
    /// Index slot in the arena's index table.
    Bang(u32, FId),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct ISeq {
    pub ant: Vec<FId>,
    pub succ: FId,
}

#[derive(Clone, Debug)]
pub(crate) struct IInst {
    pub rule: RuleId,
    /// Index slot for rules that carry one.
    pub index: Option<u32>,
    pub premises: Vec<ISeq>,
}

/// Hash-consing table for formulas. Index slots remember the signature id
/// of each subexponential name (`None` when the name is not declared).
#[derive(Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    table: BTreeMap<Node, FId>,
    atoms: Vec<String>,
    indices: Vec<(SubexpIndex, Option<usize>)>,
}

impl Arena {
    pub fn node(&self, f: FId) -> Node {
        self.nodes[f as usize]
    }

    fn mk(&mut self, n: Node) -> FId {
        if let Some(&id) = self.table.get(&n) {
            return id;
        }
        let id = self.nodes.len() as FId;
        self.nodes.push(n);
        self.table.insert(n, id);
        id
    }

    pub fn intern(&mut self, f: &Formula, sig: &Signature) -> FId {
        let n = match f {
            Formula::Atom(a) => {
                let slot = match self.atoms.iter().position(|x| x == a) {
                    Some(i) => i,
                    None => {
                        self.atoms.push(a.clone());
                        self.atoms.len() - 1
                    }
                };
                Node::Atom(slot as u32)
            }
            Formula::Unit => Node::Unit,
            Formula::Product(l, r) => Node::Prod(self.intern(l, sig), self.intern(r, sig)),
            Formula::LDiv(l, r) => Node::LDiv(self.intern(l, sig), self.intern(r, sig)),
            Formula::RDiv(l, r) => Node::RDiv(self.intern(l, sig), self.intern(r, sig)),
            Formula::With(l, r) => Node::With(self.intern(l, sig), self.intern(r, sig)),
            Formula::Plus(l, r) => Node::Plus(self.intern(l, sig), self.intern(r, sig)),
            Formula::Bang(s, b) => {
                let slot = match self.indices.iter().position(|(x, _)| x == s) {
                    Some(i) => i,
                    None => {
                        self.indices.push((s.clone(), sig.lookup(s.as_str())));
                        self.indices.len() - 1
                    }
                };
                let body = self.intern(b, sig);
                Node::Bang(slot as u32, body)
            }
        };
        self.mk(n)
    }

    pub fn intern_seq(&mut self, s: &Sequent, sig: &Signature) -> ISeq {
        ISeq {
            ant: s.antecedent.iter().map(|f| self.intern(f, sig)).collect(),
            succ: self.intern(&s.succedent, sig),
        }
    }

    pub fn formula(&self, f: FId) -> Formula {
        match self.node(f) {
            Node::Atom(a) => Formula::Atom(self.atoms[a as usize].clone()),
            Node::Unit => Formula::Unit,
            Node::Prod(l, r) => Formula::product(self.formula(l), self.formula(r)),
            Node::LDiv(l, r) => Formula::ldiv(self.formula(l), self.formula(r)),
            Node::RDiv(l, r) => Formula::rdiv(self.formula(l), self.formula(r)),
            Node::With(l, r) => Formula::with(self.formula(l), self.formula(r)),
            Node::Plus(l, r) => Formula::plus(self.formula(l), self.formula(r)),
            Node::Bang(s, b) => Formula::Bang(self.index_name(s).clone(), alloc::boxed::Box::new(self.formula(b))),
        }
    }

    pub fn sequent(&self, s: &ISeq) -> Sequent {
        Sequent::new(s.ant.iter().map(|&f| self.formula(f)).collect(), self.formula(s.succ))
    }

    pub fn index_name(&self, slot: u32) -> &SubexpIndex {
        &self.indices[slot as usize].0
    }

    pub fn index_id(&self, slot: u32) -> Option<usize> {
        self.indices[slot as usize].1
    }

    pub fn unknown_index(&self) -> Option<&SubexpIndex> {
        self.indices.iter().find(|(_, id)| id.is_none()).map(|(s, _)| s)
    }

    /// Signature id of `f` when it is a `!s` formula with a declared index.
    fn bang_id(&self, f: FId) -> Option<(u32, usize)> {
        match self.node(f) {
            Node::Bang(slot, _) => self.index_id(slot).map(|id| (slot, id)),
            _ => None,
        }
    }
}

fn with_replaced(ant: &[FId], i: usize, with: &[FId]) -> Vec<FId> {
    let mut v = Vec::with_capacity(ant.len() + with.len());
    v.extend_from_slice(&ant[..i]);
    v.extend_from_slice(with);
    v.extend_from_slice(&ant[i + 1..]);
    v
}

/// All cut-free backward instances for `goal`, in search order: axioms,
/// unary right rules, unary left rules, modal structural rules, binary
/// rules. Positions and split points run left to right.
///
/// Exchange instances that would leave the sequent unchanged are omitted.
/// In mode `L` instances with an empty-antecedent premise are dropped.
pub(crate) fn instances(arena: &Arena, goal: &ISeq, sig: &Signature, mode: Mode) -> Vec<IInst> {
    let mut out = Vec::new();
    let g = &goal.ant;
    let c = goal.succ;
    let n = g.len();
    let unit = |rule, premises| IInst {
        rule,
        index: None,
        premises,
    };
    let seq = |ant: Vec<FId>, succ: FId| ISeq { ant, succ };

    // axioms
    if n == 1 && g[0] == c {
        out.push(unit(RuleId::Ax, Vec::new()));
    }
    if mode == Mode::L1 && n == 0 && arena.node(c) == Node::Unit {
        out.push(unit(RuleId::UnitR, Vec::new()));
    }

    // unary right rules
    match arena.node(c) {
        Node::LDiv(a, b) => {
            let mut ant = Vec::with_capacity(n + 1);
            ant.push(a);
            ant.extend_from_slice(g);
            out.push(unit(RuleId::LDivR, alloc::vec![seq(ant, b)]));
        }
        Node::RDiv(b, a) => {
            let mut ant = g.clone();
            ant.push(a);
            out.push(unit(RuleId::RDivR, alloc::vec![seq(ant, b)]));
        }
        Node::Plus(a1, a2) => {
            out.push(unit(RuleId::PlusR1, alloc::vec![seq(g.clone(), a1)]));
            out.push(unit(RuleId::PlusR2, alloc::vec![seq(g.clone(), a2)]));
        }
        Node::Bang(slot, body) => {
            if let Some(s) = arena.index_id(slot) {
                let promotable = g.iter().all(|&f| arena.bang_id(f).is_some_and(|(_, t)| sig.leq(s, t)));
                if promotable {
                    out.push(IInst {
                        rule: RuleId::BangR,
                        index: Some(slot),
                        premises: alloc::vec![seq(g.clone(), body)],
                    });
                }
            }
        }
        _ => {}
    }

    // unary left rules
    for i in 0..n {
        match arena.node(g[i]) {
            Node::Prod(a, b) => out.push(unit(RuleId::ProdL, alloc::vec![seq(with_replaced(g, i, &[a, b]), c)])),
            Node::Unit if mode == Mode::L1 => {
                out.push(unit(RuleId::UnitL, alloc::vec![seq(with_replaced(g, i, &[]), c)]))
            }
            Node::With(a1, a2) => {
                out.push(unit(RuleId::WithL1, alloc::vec![seq(with_replaced(g, i, &[a1]), c)]));
                out.push(unit(RuleId::WithL2, alloc::vec![seq(with_replaced(g, i, &[a2]), c)]));
            }
            Node::Bang(_, a) => out.push(unit(RuleId::BangL, alloc::vec![seq(with_replaced(g, i, &[a]), c)])),
            _ => {}
        }
    }

    // modal structural rules
    for i in 0..n {
        let Some((slot, s)) = arena.bang_id(g[i]) else {
            continue;
        };
        let modal = |rule, ant: Vec<FId>| IInst {
            rule,
            index: Some(slot),
            premises: alloc::vec![ISeq { ant, succ: c }],
        };
        if sig.weakening(s) {
            out.push(modal(RuleId::WeakBang, with_replaced(g, i, &[])));
        }
        if sig.contraction(s) {
            for q in i + 1..=n {
                let mut ant = g.clone();
                ant.insert(q, g[i]);
                out.push(modal(RuleId::NContr1, ant));
            }
            for q in 0..=i {
                let mut ant = g.clone();
                ant.insert(q, g[i]);
                out.push(modal(RuleId::NContr2, ant));
            }
        }
        if sig.exchange(s) {
            for q in i + 1..n {
                let mut ant = g.clone();
                let x = ant.remove(i);
                ant.insert(q, x);
                out.push(modal(RuleId::Ex1, ant));
            }
            for q in 0..i {
                let mut ant = g.clone();
                let x = ant.remove(i);
                ant.insert(q, x);
                out.push(modal(RuleId::Ex2, ant));
            }
        }
    }

    // binary rules
    match arena.node(c) {
        Node::Prod(a, b) => {
            for k in 0..=n {
                out.push(unit(
                    RuleId::ProdR,
                    alloc::vec![seq(g[..k].to_vec(), a), seq(g[k..].to_vec(), b)],
                ));
            }
        }
        Node::With(a, b) => out.push(unit(RuleId::WithR, alloc::vec![seq(g.clone(), a), seq(g.clone(), b)])),
        _ => {}
    }
    for i in 0..n {
        match arena.node(g[i]) {
            Node::Plus(a, b) => out.push(unit(
                RuleId::PlusL,
                alloc::vec![seq(with_replaced(g, i, &[a]), c), seq(with_replaced(g, i, &[b]), c)],
            )),
            Node::LDiv(a, b) => {
                // Δ, Γ, A\B, Θ with Γ = g[k..i]
                for k in (0..=i).rev() {
                    let mut major = g[..k].to_vec();
                    major.push(b);
                    major.extend_from_slice(&g[i + 1..]);
                    out.push(unit(RuleId::LDivL, alloc::vec![seq(g[k..i].to_vec(), a), seq(major, c)]));
                }
            }
            Node::RDiv(b, a) => {
                // Δ, B/A, Γ, Θ with Γ = g[i+1..k]
                for k in i + 1..=n {
                    let mut major = g[..i].to_vec();
                    major.push(b);
                    major.extend_from_slice(&g[k..]);
                    out.push(unit(RuleId::RDivL, alloc::vec![seq(g[i + 1..k].to_vec(), a), seq(major, c)]));
                }
            }
            _ => {}
        }
    }

    if mode == Mode::L {
        out.retain(|inst| inst.premises.iter().all(|p| !p.ant.is_empty()));
    }
    out
}

/// One backward rule instance at the public formula level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub index: Option<SubexpIndex>,
    pub premises: Vec<Sequent>,
}

/// Every cut-free backward instance applicable to `goal`. Cut is never
/// produced.
pub fn applicable_rules(goal: &Sequent, sig: &Signature, mode: Mode) -> Vec<RuleInstance> {
    let mut arena = Arena::default();
    let g = arena.intern_seq(goal, sig);
    if mode == Mode::L && g.ant.is_empty() {
        return Vec::new();
    }
    instances(&arena, &g, sig, mode)
        .into_iter()
        .map(|inst| RuleInstance {
            rule: inst.rule,
            index: inst.index.map(|s| arena.index_name(s).clone()),
            premises: inst.premises.iter().map(|p| arena.sequent(p)).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, validate_signature, SignatureSpec};
    use alloc::string::ToString;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn axiom_instance() {
        let r = applicable_rules(&seq("a -> a"), &Signature::empty(), Mode::L);
        assert_eq!(r[0].rule, RuleId::Ax);
        assert!(r[0].premises.is_empty());
    }

    #[test]
    fn product_splits() {
        let r = applicable_rules(&seq("a, b -> a*b"), &Signature::empty(), Mode::L1);
        let splits: Vec<_> = r.iter().filter(|i| i.rule == RuleId::ProdR).collect();
        assert_eq!(splits.len(), 3);
        assert!(splits.iter().any(|i| i.premises == [seq("a -> a"), seq("b -> b")]));
        // mode L drops the splits with an empty side
        let r = applicable_rules(&seq("a, b -> a*b"), &Signature::empty(), Mode::L);
        assert_eq!(r.iter().filter(|i| i.rule == RuleId::ProdR).count(), 1);
    }

    #[test]
    fn exchange_instances() {
        let sig = validate_signature(&SignatureSpec {
            indices: alloc::vec!["s".to_string()],
            exchange: alloc::vec!["s".to_string()],
            ..Default::default()
        })
        .unwrap();
        let r = applicable_rules(&seq("!{s}a, d -> d * !{s}a"), &sig, Mode::L1);
        let ex: Vec<_> = r.iter().filter(|i| i.rule == RuleId::Ex1).collect();
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].premises, [seq("d, !{s}a -> d * !{s}a")]);
        assert_eq!(ex[0].index, Some(SubexpIndex::new("s")));
        assert!(!r.iter().any(|i| i.rule == RuleId::Cut));
    }

    #[test]
    fn rule_order() {
        let r = applicable_rules(&seq("a*b, c|d -> (a*b)&e"), &Signature::empty(), Mode::L1);
        let rules: Vec<RuleId> = r.iter().map(|i| i.rule).collect();
        assert_eq!(rules, [RuleId::ProdL, RuleId::WithR, RuleId::PlusL]);
    }
}
