//! Exhaustive checkers for the algebraic facts about finite quantales and
//! their conuclei. Each returns the first counterexample found.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{
    all_conuclei, all_subquantales, classify_conucleus, conucleus_from_subquantale, conucleus_leq,
    open_elements, ConucleusMap, ElemSet, Filter, FiniteQuantale, QuantaleHom, Subquantale,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fact {
    /// An ssi element below the unit is central.
    SsiBelowUnitCentral,
    /// The ssi elements form a subquantale.
    SsiSubquantale,
    /// The elements below the unit form a subquantale.
    UnitDownsetSubquantale,
    /// The centre is a subquantale.
    CentreSubquantale,
    /// `I1 a1 · I2 a2 <= I(I1 a1 · I2 a2)` when `I1, I2 <= I`.
    ManyConuclei,
    /// `I a = ⋁{q ∈ Q_I | q <= a}`.
    Unfold,
    /// A subquantale induces a conucleus whose open elements are the subquantale.
    SubquantaleConucleus,
    /// `S1 ⊆ S2` implies `I_S1 <= I_S2`.
    SubquantaleOrder,
    /// Unital, central and ssi classifications transfer downward.
    DownwardTransfer,
    /// Homomorphic images of subquantales are subquantales.
    HomImage,
    /// Filtered subquantale conuclei carry the filtered properties.
    FilteredConucleus,
    /// Unital and ssi conuclei are central.
    UnitalSsiCentral,
}

impl Fact {
    pub const ALL: [Fact; 12] = [
        Fact::SsiBelowUnitCentral,
        Fact::SsiSubquantale,
        Fact::UnitDownsetSubquantale,
        Fact::CentreSubquantale,
        Fact::ManyConuclei,
        Fact::Unfold,
        Fact::SubquantaleConucleus,
        Fact::SubquantaleOrder,
        Fact::DownwardTransfer,
        Fact::HomImage,
        Fact::FilteredConucleus,
        Fact::UnitalSsiCentral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fact::SsiBelowUnitCentral => "ssi-below-unit-central",
            Fact::SsiSubquantale => "ssi-subquantale",
            Fact::UnitDownsetSubquantale => "unit-downset-subquantale",
            Fact::CentreSubquantale => "centre-subquantale",
            Fact::ManyConuclei => "many-conuclei",
            Fact::Unfold => "unfold",
            Fact::SubquantaleConucleus => "subquantale-conucleus",
            Fact::SubquantaleOrder => "subquantale-order",
            Fact::DownwardTransfer => "downward-transfer",
            Fact::HomImage => "hom-image",
            Fact::FilteredConucleus => "filtered-conucleus",
            Fact::UnitalSsiCentral => "unital-ssi-central",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub fact: Fact,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.fact.name(), self.detail)
    }
}

type Check = Result<(), Counterexample>;

fn fail(fact: Fact, detail: String) -> Check {
    Err(Counterexample { fact, detail })
}

fn closed(q: &Arc<FiniteQuantale>, set: ElemSet, fact: Fact) -> Check {
    match Subquantale::new(q.clone(), set) {
        Ok(_) => Ok(()),
        Err(e) => fail(fact, format!("{} is not a subquantale: {}", set, e)),
    }
}

pub fn ssi_below_unit_central(q: &FiniteQuantale) -> Check {
    let Some(e) = q.unit() else { return Ok(()) };
    for a in q.elements().filter(|&a| q.is_ssi(a) && q.leq(a, e)) {
        if !q.is_central(a) {
            return fail(Fact::SsiBelowUnitCentral, format!("element {}", a));
        }
    }
    Ok(())
}

pub fn ssi_subquantale(q: &Arc<FiniteQuantale>) -> Check {
    closed(q, q.elements().filter(|&a| q.is_ssi(a)).collect(), Fact::SsiSubquantale)
}

pub fn unit_downset_subquantale(q: &Arc<FiniteQuantale>) -> Check {
    let Some(e) = q.unit() else { return Ok(()) };
    closed(q, q.elements().filter(|&a| q.leq(a, e)).collect(), Fact::UnitDownsetSubquantale)
}

pub fn centre_subquantale(q: &Arc<FiniteQuantale>) -> Check {
    closed(q, q.elements().filter(|&a| q.is_central(a)).collect(), Fact::CentreSubquantale)
}

/// Vacuous unless `i1 <= i` and `i2 <= i`.
pub fn many_conuclei(i: &ConucleusMap, i1: &ConucleusMap, i2: &ConucleusMap) -> Check {
    if conucleus_leq(i1, i) != Ok(true) || conucleus_leq(i2, i) != Ok(true) {
        return Ok(());
    }
    let q = i.parent();
    for a1 in q.elements() {
        for a2 in q.elements() {
            let p = q.mult(i1.apply(a1), i2.apply(a2));
            if !q.leq(p, i.apply(p)) {
                return fail(Fact::ManyConuclei, format!("a1={} a2={}", a1, a2));
            }
        }
    }
    Ok(())
}

pub fn unfold(i: &ConucleusMap) -> Check {
    open_elements(i)
        .map(|_| ())
        .or_else(|e| fail(Fact::Unfold, format!("{}", e)))
}

pub fn subquantale_conucleus(s: &Subquantale) -> Check {
    match conucleus_from_subquantale(s, Filter::NONE) {
        Err(e) => fail(Fact::SubquantaleConucleus, format!("{}: {}", s.members(), e)),
        Ok(i) if i.fixpoints() != s.members() => fail(
            Fact::SubquantaleConucleus,
            format!("{}: open elements {}", s.members(), i.fixpoints()),
        ),
        Ok(_) => Ok(()),
    }
}

/// Vacuous unless `s1 ⊆ s2`.
pub fn subquantale_order(s1: &Subquantale, s2: &Subquantale) -> Check {
    if !s1.members().is_subset(s2.members()) {
        return Ok(());
    }
    let f = |s: &Subquantale| conucleus_from_subquantale(s, Filter::NONE);
    match (f(s1), f(s2)) {
        (Ok(i1), Ok(i2)) if conucleus_leq(&i1, &i2) == Ok(true) => Ok(()),
        _ => fail(Fact::SubquantaleOrder, format!("{} ⊆ {}", s1.members(), s2.members())),
    }
}

/// Vacuous unless `i1 <= i2`.
pub fn downward_transfer(i1: &ConucleusMap, i2: &ConucleusMap) -> Check {
    if conucleus_leq(i1, i2) != Ok(true) {
        return Ok(());
    }
    let (c1, c2) = (classify_conucleus(i1), classify_conucleus(i2));
    if (c2.unital && !c1.unital) || (c2.central && !c1.central) || (c2.ssi && !c1.ssi) {
        return fail(Fact::DownwardTransfer, format!("I1={} I2={}", i1, i2));
    }
    Ok(())
}

pub fn hom_image(f: &QuantaleHom, s: &Subquantale) -> Check {
    match f.image(s) {
        Ok(Ok(_)) => Ok(()),
        Ok(Err(e)) => fail(Fact::HomImage, format!("image of {}: {}", s.members(), e)),
        Err(e) => fail(Fact::HomImage, format!("{}", e)),
    }
}

/// Every filter combination that makes sense on the parent.
pub fn filters(q: &FiniteQuantale) -> Vec<Filter> {
    let mut out = Vec::new();
    for bits in 0..8u8 {
        let f = Filter {
            unital: bits & 1 != 0,
            central: bits & 2 != 0,
            ssi: bits & 4 != 0,
        };
        if !f.unital || q.is_unital() {
            out.push(f);
        }
    }
    out
}

pub fn filtered_conucleus(s: &Subquantale, filter: Filter) -> Check {
    let i = match conucleus_from_subquantale(s, filter) {
        Ok(i) => i,
        Err(e) => return fail(Fact::FilteredConucleus, format!("{} {:?}: {}", s.members(), filter, e)),
    };
    let c = classify_conucleus(&i);
    if (filter.unital && !c.unital) || (filter.central && !c.central) || (filter.ssi && !c.ssi) {
        return fail(Fact::FilteredConucleus, format!("{} {:?}: got {:?}", s.members(), filter, c));
    }
    Ok(())
}

pub fn unital_ssi_central(i: &ConucleusMap) -> Check {
    let c = classify_conucleus(i);
    if c.unital && c.ssi && !c.central {
        return fail(Fact::UnitalSsiCentral, format!("I={}", i));
    }
    Ok(())
}

/// Runs every per-quantale fact over all subquantales and all conuclei of
/// `q`. Homomorphism images are checked separately since they need a second
/// quantale.
pub fn check_quantale(q: &Arc<FiniteQuantale>) -> Vec<Counterexample> {
    let mut out = Vec::new();
    let mut push = |c: Check| {
        if let Err(e) = c {
            out.push(e);
        }
    };
    push(ssi_below_unit_central(q));
    push(ssi_subquantale(q));
    push(unit_downset_subquantale(q));
    push(centre_subquantale(q));
    let subs = all_subquantales(q);
    for s in &subs {
        push(subquantale_conucleus(s));
        for f in filters(q) {
            push(filtered_conucleus(s, f));
        }
        for t in &subs {
            push(subquantale_order(s, t));
        }
    }
    let cons = all_conuclei(q);
    for i in &cons {
        push(unfold(i));
        push(unital_ssi_central(i));
        for j in &cons {
            push(downward_transfer(i, j));
        }
    }
    for i in &cons {
        let below: Vec<&ConucleusMap> = cons.iter().filter(|j| conucleus_leq(j, i) == Ok(true)).collect();
        for i1 in &below {
            for i2 in &below {
                push(many_conuclei(i, i1, i2));
            }
        }
    }
    out
}
