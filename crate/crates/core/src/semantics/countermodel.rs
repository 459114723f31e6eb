use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{build_sigma, enumerate_quantales, holds, SemanticsError, SubexpInterpretation, Valuation};
use crate::calculus::{check_derivation, CheckError, Derivation, Mode};
use crate::quantale::{all_subquantales, ElemSet, FiniteQuantale, Subquantale};
use crate::syntax::{Sequent, Signature};

/// Every valuation of `atoms` into `0..n`, lexicographic with the first atom
/// most significant.
pub fn valuations(atoms: &BTreeSet<String>, n: usize) -> Vec<Valuation> {
    let names: Vec<&String> = atoms.iter().collect();
    let k = names.len();
    let mut out = Vec::new();
    let mut digits = vec![0; k];
    loop {
        out.push(names.iter().zip(&digits).map(|(x, &v)| ((*x).clone(), v)).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Every interpretation of `sig` over `q` built from contravariant families
/// of subquantales containing the unit. Only the indices in `relevant` vary;
/// every other index `t` gets the intersection of the choices for relevant
/// `s ⪯ t` (the whole carrier when there is none), which keeps the family
/// contravariant without changing any relevant value.
///
/// Order: lexicographic in the relevant indices (declaration order), each
/// ranging over subquantales in lectic order.
pub fn sigma_assignments(
    q: &Arc<FiniteQuantale>,
    sig: &Signature,
    relevant: &BTreeSet<usize>,
) -> Vec<SubexpInterpretation> {
    let Some(e) = q.unit() else { return Vec::new() };
    let subs: Vec<Subquantale> = all_subquantales(q).into_iter().filter(|s| s.contains(e)).collect();
    let rel: Vec<usize> = relevant.iter().copied().collect();
    let mut out = Vec::new();
    let mut choice: Vec<usize> = Vec::with_capacity(rel.len());
    fn rec(
        q: &Arc<FiniteQuantale>,
        sig: &Signature,
        rel: &[usize],
        subs: &[Subquantale],
        choice: &mut Vec<usize>,
        out: &mut Vec<SubexpInterpretation>,
    ) {
        let k = choice.len();
        if k == rel.len() {
            let family: Vec<Subquantale> = (0..sig.len())
                .map(|t| {
                    let members = rel
                        .iter()
                        .zip(choice.iter())
                        .filter(|(&s, _)| sig.leq(s, t))
                        .fold(q.carrier(), |acc, (_, &c)| acc.intersection(subs[c].members()));
                    Subquantale::new(q.clone(), members).expect("intersection of subquantales")
                })
                .collect();
            if let Ok(m) = build_sigma(q, sig, &family) {
                out.push(m);
            }
            return;
        }
        for c in 0..subs.len() {
            let s = rel[k];
            let ok = rel[..k].iter().zip(choice.iter()).all(|(&t, &d)| {
                (!sig.leq(t, s) || subs[c].members().is_subset(subs[d].members()))
                    && (!sig.leq(s, t) || subs[d].members().is_subset(subs[c].members()))
            });
            if ok {
                choice.push(c);
                rec(q, sig, rel, subs, choice, out);
                choice.pop();
            }
        }
    }
    rec(q, sig, &rel, &subs, &mut choice, &mut out);
    out
}

/// Every interpretation of the whole signature over `q`.
pub fn all_interpretations(q: &Arc<FiniteQuantale>, sig: &Signature) -> Vec<SubexpInterpretation> {
    sigma_assignments(q, sig, &(0..sig.len()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: SubexpInterpretation,
    pub valuation: Valuation,
}

/// Cap on the number of (model, valuation) evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountermodelBudget {
    pub max_checks: u64,
}

impl Default for CountermodelBudget {
    fn default() -> Self {
        CountermodelBudget {
            max_checks: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountermodelOutcome {
    Found { witness: Countermodel, checks: u64 },
    /// Every candidate up to the size bound satisfies the sequent.
    NoneFound { checks: u64 },
    /// The check budget ran out first.
    Budget { checks: u64 },
}

/// Result of searching a single quantale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleSearch {
    pub witness: Option<Countermodel>,
    /// Evaluations performed, up to and including the witness.
    pub checks: u64,
}

/// Searches one quantale: interpretations in [`sigma_assignments`] order,
/// then valuations in lexicographic order. Stops at `limit` checks.
pub fn find_countermodel_in(
    q: &Arc<FiniteQuantale>,
    seq: &Sequent,
    sig: &Signature,
    limit: u64,
) -> Result<QuantaleSearch, SemanticsError> {
    let mut relevant = BTreeSet::new();
    for s in seq.indices() {
        relevant.insert(sig.lookup(s.as_str()).ok_or(SemanticsError::UnknownIndex(s.clone()))?);
    }
    let vals = valuations(&seq.atoms(), q.size());
    let mut checks = 0;
    for m in sigma_assignments(q, sig, &relevant) {
        for f in &vals {
            if checks == limit {
                return Ok(QuantaleSearch { witness: None, checks });
            }
            checks += 1;
            if !holds(&m, f, seq)? {
                return Ok(QuantaleSearch {
                    witness: Some(Countermodel {
                        model: m,
                        valuation: f.clone(),
                    }),
                    checks,
                });
            }
        }
    }
    Ok(QuantaleSearch { witness: None, checks })
}

/// Scans unital quantales of at most `max_size` elements in enumeration
/// order and returns the first refuting (model, valuation).
pub fn find_countermodel(
    seq: &Sequent,
    sig: &Signature,
    max_size: usize,
    budget: CountermodelBudget,
) -> Result<CountermodelOutcome, SemanticsError> {
    let mut checks = 0;
    for q in enumerate_quantales(max_size, true) {
        let q = Arc::new(q);
        let r = find_countermodel_in(&q, seq, sig, budget.max_checks - checks)?;
        checks += r.checks;
        if let Some(witness) = r.witness {
            return Ok(CountermodelOutcome::Found { witness, checks });
        }
        if checks == budget.max_checks {
            return Ok(CountermodelOutcome::Budget { checks });
        }
    }
    Ok(CountermodelOutcome::NoneFound { checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepViolation {
    pub derivation: usize,
    pub model: usize,
    pub valuation: Valuation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checks: u64,
    pub violations: Vec<SweepViolation>,
}

/// Evaluates every derivation's conclusion in every model under every
/// valuation of its atoms. Derivations are checked first; any invalid one
/// rejects the whole corpus.
pub fn soundness_sweep(
    corpus: &[Derivation],
    sig: &Signature,
    mode: Mode,
    models: &[SubexpInterpretation],
) -> Result<SweepReport, SweepError> {
    for (i, d) in corpus.iter().enumerate() {
        check_derivation(d, sig, mode).map_err(|e| SweepError::InvalidDerivation(i, e))?;
    }
    let mut report = SweepReport::default();
    for (i, d) in corpus.iter().enumerate() {
        let seq = &d.conclusion;
        for (j, m) in models.iter().enumerate() {
            for f in valuations(&seq.atoms(), m.quantale().size()) {
                report.checks += 1;
                if !holds(m, &f, seq).map_err(SweepError::Semantics)? {
                    report.violations.push(SweepViolation {
                        derivation: i,
                        model: j,
                        valuation: f,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error("derivation {0} is invalid: {1:?}")]
    InvalidDerivation(usize, Vec<CheckError>),
    #[error(transparent)]
    Semantics(SemanticsError),
}

/// Elements of a subquantale family, for reports.
pub fn family_members(m: &SubexpInterpretation) -> Vec<ElemSet> {
    (0..m.signature().len()).map(|s| m.provenance(s).members()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    #[test]
    fn valuation_order() {
        let atoms: BTreeSet<String> = ["a", "b"].iter().map(|s| String::from(*s)).collect();
        let v = valuations(&atoms, 2);
        assert_eq!(v.len(), 4);
        assert_eq!(v[1]["a"], 0);
        assert_eq!(v[1]["b"], 1);
        assert_eq!(valuations(&BTreeSet::new(), 3).len(), 1);
    }

    #[test]
    fn identity_sequent_has_no_countermodel() {
        let seq = parse_sequent("a -> a").unwrap();
        let r = find_countermodel(&seq, &Signature::empty(), 3, CountermodelBudget::default()).unwrap();
        assert!(matches!(r, CountermodelOutcome::NoneFound { .. }));
    }

    #[test]
    fn commutativity_fails_in_small_model() {
        let seq = parse_sequent("a * b -> b * a").unwrap();
        let r = find_countermodel(&seq, &Signature::empty(), 4, CountermodelBudget::default()).unwrap();
        let CountermodelOutcome::Found { witness, .. } = r else { panic!("{:?}", r) };
        assert!(!holds(&witness.model, &witness.valuation, &seq).unwrap());
        assert!(!witness.model.quantale().is_commutative());
    }

    #[test]
    fn budget_stops_search() {
        let seq = parse_sequent("a -> a").unwrap();
        let r = find_countermodel(&seq, &Signature::empty(), 3, CountermodelBudget { max_checks: 2 }).unwrap();
        assert_eq!(r, CountermodelOutcome::Budget { checks: 2 });
    }
}
