//! Interpretation of formulas in finite quantales, model enumeration,
//! countermodel search and soundness sweeps.

mod countermodel;
mod enumerate;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use thiserror::Error;

use crate::quantale::{
    classify_conucleus, conucleus_from_subquantale, conucleus_leq, open_elements, ConucleusError,
    ConucleusMap, Elem, Filter, FiniteQuantale, Subquantale,
};
use crate::syntax::{Formula, Sequent, Signature, SubexpIndex};

pub use countermodel::{
    all_interpretations, family_members, find_countermodel, find_countermodel_in, sigma_assignments,
    soundness_sweep, valuations, Countermodel, CountermodelBudget, CountermodelOutcome,
    QuantaleSearch, SweepError, SweepReport, SweepViolation,
};
pub use enumerate::{
    enumerate_lattices, enumerate_quantales, lattice_automorphisms, quantales_on, FiniteLattice,
    MAX_LATTICE,
};

/// Atom name to element.
pub type Valuation = BTreeMap<String, Elem>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("quantale is not unital")]
    NonUnital,
    #[error("expected {expected} subquantales or conuclei, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("assignment for `{0}` lives on a different quantale")]
    ForeignQuantale(SubexpIndex),
    #[error("not contravariant: {0} ⪯ {1} but the assignment of {1} is not below that of {0}")]
    NotContravariant(SubexpIndex, SubexpIndex),
    #[error("the unit is not open for `{0}`")]
    UnitNotOpen(SubexpIndex),
    #[error("conucleus for `{0}`: {1}")]
    Conucleus(SubexpIndex, ConucleusError),
    #[error("`{0}` is in {1} but its conucleus is not {2}")]
    Property(SubexpIndex, char, &'static str),
    #[error("atom `{0}` has no value")]
    MissingAtom(String),
    #[error("unknown subexponential index `{0}`")]
    UnknownIndex(SubexpIndex),
}

/// A signature together with one conucleus per index, all over one unital
/// quantale.
///
/// Invariants, checked on construction: contravariance (`s ⪯ t` implies
/// `σ(t) <= σ(s)`), membership in W, E, C forces unital, central, ssi
/// conuclei, and W ∩ C forces central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubexpInterpretation {
    quantale: Arc<FiniteQuantale>,
    signature: Signature,
    sigma: Vec<ConucleusMap>,
    provenance: Vec<Subquantale>,
}

/// Filter for an index: unital for W, central for E, ssi for C.
pub fn index_filter(sig: &Signature, s: usize) -> Filter {
    Filter {
        unital: sig.weakening(s),
        central: sig.exchange(s),
        ssi: sig.contraction(s),
    }
}

impl SubexpInterpretation {
    /// The interpretation of the empty signature.
    pub fn trivial(q: Arc<FiniteQuantale>) -> Result<Self, SemanticsError> {
        build_sigma(&q, &Signature::empty(), &[])
    }

    pub fn quantale(&self) -> &Arc<FiniteQuantale> {
        &self.quantale
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn sigma(&self, s: usize) -> &ConucleusMap {
        &self.sigma[s]
    }

    pub fn conuclei(&self) -> &[ConucleusMap] {
        &self.sigma
    }

    pub fn provenance(&self, s: usize) -> &Subquantale {
        &self.provenance[s]
    }

    /// Every conucleus fixes the unit.
    pub fn preserves_unit(&self) -> bool {
        self.sigma.iter().all(|i| i.preserves_unit())
    }

    fn check(&self, require_unit: bool) -> Result<(), SemanticsError> {
        let sig = &self.signature;
        let q = &self.quantale;
        let e = q.unit().ok_or(SemanticsError::NonUnital)?;
        for s in 0..sig.len() {
            let name = || sig.name(s).clone();
            let i = &self.sigma[s];
            if require_unit && i.apply(e) != e {
                return Err(SemanticsError::UnitNotOpen(name()));
            }
            for t in 0..sig.len() {
                if sig.leq(s, t) && conucleus_leq(&self.sigma[t], i) != Ok(true) {
                    return Err(SemanticsError::NotContravariant(name(), sig.name(t).clone()));
                }
            }
            let c = classify_conucleus(i);
            if sig.weakening(s) && !c.unital {
                return Err(SemanticsError::Property(name(), 'W', "unital"));
            }
            if sig.exchange(s) && !c.central {
                return Err(SemanticsError::Property(name(), 'E', "central"));
            }
            if sig.contraction(s) && !c.ssi {
                return Err(SemanticsError::Property(name(), 'C', "strongly square increasing"));
            }
            if sig.weakening(s) && sig.contraction(s) && !c.central {
                return Err(SemanticsError::Property(name(), 'W', "central (with C)"));
            }
        }
        Ok(())
    }
}

/// Builds `σ(s)` from the subquantale `subs[s]`, filtered by the membership of
/// `s` in W, E, C, and verifies the interpretation invariants.
///
/// Every `subs[s]` must contain the unit; otherwise a proof of `→ A` would
/// not transfer to `→ !{s}A`.
pub fn build_sigma(
    q: &Arc<FiniteQuantale>,
    sig: &Signature,
    subs: &[Subquantale],
) -> Result<SubexpInterpretation, SemanticsError> {
    let e = q.unit().ok_or(SemanticsError::NonUnital)?;
    if subs.len() != sig.len() {
        return Err(SemanticsError::Arity {
            expected: sig.len(),
            found: subs.len(),
        });
    }
    for (s, sub) in subs.iter().enumerate() {
        if sub.parent() != q {
            return Err(SemanticsError::ForeignQuantale(sig.name(s).clone()));
        }
        if !sub.contains(e) {
            return Err(SemanticsError::UnitNotOpen(sig.name(s).clone()));
        }
    }
    for s in 0..sig.len() {
        for t in 0..sig.len() {
            if sig.leq(s, t) && !subs[t].members().is_subset(subs[s].members()) {
                return Err(SemanticsError::NotContravariant(
                    sig.name(s).clone(),
                    sig.name(t).clone(),
                ));
            }
        }
    }
    let sigma = subs
        .iter()
        .enumerate()
        .map(|(s, sub)| {
            conucleus_from_subquantale(sub, index_filter(sig, s))
                .map_err(|err| SemanticsError::Conucleus(sig.name(s).clone(), err))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = SubexpInterpretation {
        quantale: q.clone(),
        signature: sig.clone(),
        sigma,
        provenance: subs.to_vec(),
    };
    out.check(true)?;
    Ok(out)
}

/// Takes the conuclei as given, e.g. from a witness file, and verifies the
/// interpretation invariants. Provenance is the open-element subquantale.
///
/// Unlike [`build_sigma`], conuclei that move the unit are accepted; such
/// models need not validate promotion with an empty antecedent.
pub fn from_assignment(
    q: &Arc<FiniteQuantale>,
    sig: &Signature,
    conuclei: Vec<ConucleusMap>,
) -> Result<SubexpInterpretation, SemanticsError> {
    if !q.is_unital() {
        return Err(SemanticsError::NonUnital);
    }
    if conuclei.len() != sig.len() {
        return Err(SemanticsError::Arity {
            expected: sig.len(),
            found: conuclei.len(),
        });
    }
    let mut provenance = Vec::with_capacity(conuclei.len());
    for (s, i) in conuclei.iter().enumerate() {
        if i.parent() != q {
            return Err(SemanticsError::ForeignQuantale(sig.name(s).clone()));
        }
        provenance.push(open_elements(i).map_err(|e| SemanticsError::Conucleus(sig.name(s).clone(), e))?);
    }
    let out = SubexpInterpretation {
        quantale: q.clone(),
        signature: sig.clone(),
        sigma: conuclei,
        provenance,
    };
    out.check(false)?;
    Ok(out)
}

/// The value of a formula.
pub fn interpret(
    sigma: &SubexpInterpretation,
    f: &Valuation,
    a: &Formula,
) -> Result<Elem, SemanticsError> {
    let q = &sigma.quantale;
    let go = |b: &Formula| interpret(sigma, f, b);
    Ok(match a {
        Formula::Atom(x) => *f.get(x).ok_or_else(|| SemanticsError::MissingAtom(x.clone()))?,
        Formula::Unit => q.unit().ok_or(SemanticsError::NonUnital)?,
        Formula::Product(l, r) => q.mult(go(l)?, go(r)?),
        Formula::LDiv(l, r) => q.residual_left(go(l)?, go(r)?),
        Formula::RDiv(l, r) => q.residual_right(go(l)?, go(r)?),
        Formula::With(l, r) => q.meet(go(l)?, go(r)?),
        Formula::Plus(l, r) => q.join(go(l)?, go(r)?),
        Formula::Bang(s, body) => {
            let id = sigma
                .signature
                .lookup(s.as_str())
                .ok_or_else(|| SemanticsError::UnknownIndex(s.clone()))?;
            sigma.sigma[id].apply(go(body)?)
        }
    })
}

/// The product of the antecedent values (the unit when empty) is below the
/// succedent value.
pub fn holds(sigma: &SubexpInterpretation, f: &Valuation, seq: &Sequent) -> Result<bool, SemanticsError> {
    let q = &sigma.quantale;
    let mut lhs = q.unit().ok_or(SemanticsError::NonUnital)?;
    for a in &seq.antecedent {
        lhs = q.mult(lhs, interpret(sigma, f, a)?);
    }
    Ok(q.leq(lhs, interpret(sigma, f, &seq.succedent)?))
}
