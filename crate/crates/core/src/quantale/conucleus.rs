use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use super::sub::SubError;
use super::{Elem, ElemSet, FiniteQuantale, Subquantale};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConucleusError {
    #[error("table has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("I({0}) = {1} is not an element")]
    OutOfRange(Elem, Elem),
    #[error("not deflationary at {0}")]
    NotDeflationary(Elem),
    #[error("not idempotent at {0}")]
    NotIdempotent(Elem),
    #[error("not monotone at ({0},{1})")]
    NotMonotone(Elem, Elem),
    #[error("product axiom fails at ({0},{1})")]
    NotMultiplicative(Elem, Elem),
    #[error("unital filter on a non-unital quantale")]
    NonUnitalFilter,
    #[error("conuclei live on different quantales")]
    ParentMismatch,
    #[error("subquantale belongs to a different quantale")]
    ForeignSubquantale,
    #[error("open elements: {0}")]
    OpenElements(SubError),
    #[error("unfolding through open elements fails at {0}")]
    Unfold(Elem),
}

/// A quantic conucleus given by its table.
///
/// Construction checks the four axioms; `I ε = ε` is reported separately by
/// [`ConucleusMap::preserves_unit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConucleusMap {
    parent: Arc<FiniteQuantale>,
    table: Vec<Elem>,
}

impl ConucleusMap {
    pub fn new(parent: Arc<FiniteQuantale>, table: Vec<Elem>) -> Result<Self, ConucleusError> {
        let q = &parent;
        let n = q.size();
        if table.len() != n {
            return Err(ConucleusError::Length {
                expected: n,
                found: table.len(),
            });
        }
        for a in 0..n {
            if table[a] >= n {
                return Err(ConucleusError::OutOfRange(a, table[a]));
            }
        }
        for a in 0..n {
            let ia = table[a];
            if !q.leq(ia, a) {
                return Err(ConucleusError::NotDeflationary(a));
            }
            if table[ia] != ia {
                return Err(ConucleusError::NotIdempotent(a));
            }
        }
        for a in 0..n {
            for b in q.up_set(a) {
                if !q.leq(table[a], table[b]) {
                    return Err(ConucleusError::NotMonotone(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let p = q.mult(table[a], table[b]);
                if table[p] != p {
                    return Err(ConucleusError::NotMultiplicative(a, b));
                }
            }
        }
        Ok(ConucleusMap { parent, table })
    }

    pub fn identity(parent: Arc<FiniteQuantale>) -> Self {
        let table = parent.elements().collect();
        ConucleusMap { parent, table }
    }

    pub fn constant_bottom(parent: Arc<FiniteQuantale>) -> Self {
        let table = alloc::vec![parent.bottom(); parent.size()];
        ConucleusMap { parent, table }
    }

    pub fn parent(&self) -> &Arc<FiniteQuantale> {
        &self.parent
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `I ε = ε`; vacuously true on non-unital quantales.
    pub fn preserves_unit(&self) -> bool {
        self.parent.unit().is_none_or(|e| self.table[e] == e)
    }

    /// Fixpoints, without further checks.
    pub fn fixpoints(&self) -> ElemSet {
        self.parent.elements().filter(|&a| self.table[a] == a).collect()
    }
}

impl fmt::Display for ConucleusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", a)?;
        }
        Ok(())
    }
}

/// Predicates restricting which subquantale members may contribute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Filter {
    /// `q <= ε`
    pub unital: bool,
    /// `q` in the centre
    pub central: bool,
    /// `q` strongly square increasing
    pub ssi: bool,
}

impl Filter {
    pub const NONE: Filter = Filter {
        unital: false,
        central: false,
        ssi: false,
    };

    pub fn admits(&self, q: &FiniteQuantale, a: Elem) -> bool {
        if self.unital && !q.unit().is_some_and(|e| q.leq(a, e)) {
            return false;
        }
        if self.central && !q.is_central(a) {
            return false;
        }
        !self.ssi || q.is_ssi(a)
    }
}

/// `I a = ⋁{q ∈ S | q <= a, q admitted by the filter}`, validated.
pub fn conucleus_from_subquantale(
    s: &Subquantale,
    filter: Filter,
) -> Result<ConucleusMap, ConucleusError> {
    let q = s.parent();
    if filter.unital && !q.is_unital() {
        return Err(ConucleusError::NonUnitalFilter);
    }
    let admitted: ElemSet = s.members().iter().filter(|&a| filter.admits(q, a)).collect();
    let table = q
        .elements()
        .map(|a| q.join_all(admitted.iter().filter(|&p| q.leq(p, a))))
        .collect();
    ConucleusMap::new(q.clone(), table)
}

/// The open elements `Q_I`, checked closed, with `I a = ⋁{q ∈ Q_I | q <= a}`
/// checked pointwise.
pub fn open_elements(i: &ConucleusMap) -> Result<Subquantale, ConucleusError> {
    let q = i.parent();
    let fix = i.fixpoints();
    let sub = Subquantale::new(q.clone(), fix).map_err(ConucleusError::OpenElements)?;
    for a in q.elements() {
        if q.join_all(fix.iter().filter(|&p| q.leq(p, a))) != i.apply(a) {
            return Err(ConucleusError::Unfold(a));
        }
    }
    Ok(sub)
}

/// Pointwise order: `I1 a <= I2 a` for every `a`.
pub fn conucleus_leq(i1: &ConucleusMap, i2: &ConucleusMap) -> Result<bool, ConucleusError> {
    if i1.parent() != i2.parent() {
        return Err(ConucleusError::ParentMismatch);
    }
    let q = i1.parent();
    Ok(q.elements().all(|a| q.leq(i1.apply(a), i2.apply(a))))
}

/// Every map satisfying the four axioms, by brute force over deflationary
/// tables, in lexicographic order.
pub fn all_conuclei(q: &Arc<FiniteQuantale>) -> Vec<ConucleusMap> {
    let n = q.size();
    let downs: Vec<Vec<Elem>> = q
        .elements()
        .map(|a| q.elements().filter(|&b| q.leq(b, a)).collect())
        .collect();
    let mut out = Vec::new();
    let mut table = alloc::vec![0; n];
    fn rec(
        i: usize,
        table: &mut Vec<Elem>,
        downs: &[Vec<Elem>],
        q: &Arc<FiniteQuantale>,
        out: &mut Vec<ConucleusMap>,
    ) {
        if i == table.len() {
            if let Ok(c) = ConucleusMap::new(q.clone(), table.clone()) {
                out.push(c);
            }
            return;
        }
        for &b in &downs[i] {
            table[i] = b;
            let monotone = (0..i).all(|a| {
                (!q.leq(a, i) || q.leq(table[a], b)) && (!q.leq(i, a) || q.leq(b, table[a]))
            });
            if monotone {
                rec(i + 1, table, downs, q, out);
            }
        }
    }
    rec(0, &mut table, &downs, q, &mut out);
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConucleusClass {
    /// Every `I a <= ε`; false on non-unital quantales.
    pub unital: bool,
    /// Every `I a` commutes with everything.
    pub central: bool,
    /// Every `I a` is strongly square increasing.
    pub ssi: bool,
}

pub fn classify_conucleus(i: &ConucleusMap) -> ConucleusClass {
    let q = i.parent();
    let image: ElemSet = i.table().iter().copied().collect();
    ConucleusClass {
        unital: q
            .unit()
            .is_some_and(|e| image.iter().all(|a| q.leq(a, e))),
        central: image.iter().all(|a| q.is_central(a)),
        ssi: image.iter().all(|a| q.is_ssi(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::sub::all_subquantales;

    fn chain(n: usize) -> Arc<FiniteQuantale> {
        Arc::new(FiniteQuantale::chain_locale(n))
    }

    #[test]
    fn whole_carrier_gives_identity() {
        let q = chain(3);
        let i = conucleus_from_subquantale(&Subquantale::whole(q.clone()), Filter::NONE).unwrap();
        assert_eq!(i, ConucleusMap::identity(q));
    }

    #[test]
    fn bottom_subquantale_gives_constant() {
        let q = chain(3);
        let s = Subquantale::new(q.clone(), ElemSet::singleton(0)).unwrap();
        let i = conucleus_from_subquantale(&s, Filter::NONE).unwrap();
        assert_eq!(i, ConucleusMap::constant_bottom(q.clone()));
        assert_eq!(open_elements(&i).unwrap().members(), ElemSet::singleton(0));
        let c = classify_conucleus(&i);
        assert!(c.unital && c.central && c.ssi);
        assert!(!i.preserves_unit());
    }

    #[test]
    fn unital_filter_on_locale_is_meet_with_unit() {
        let q = chain(4);
        let i = conucleus_from_subquantale(
            &Subquantale::whole(q.clone()),
            Filter {
                unital: true,
                ..Filter::NONE
            },
        )
        .unwrap();
        let e = q.unit().unwrap();
        for a in q.elements() {
            assert_eq!(i.apply(a), q.meet(a, e));
        }
    }

    #[test]
    fn axioms_rejected() {
        let q = chain(3);
        assert_eq!(
            ConucleusMap::new(q.clone(), alloc::vec![0, 2, 2]),
            Err(ConucleusError::NotDeflationary(1))
        );
        assert_eq!(
            ConucleusMap::new(q.clone(), alloc::vec![0, 1]),
            Err(ConucleusError::Length {
                expected: 3,
                found: 2
            })
        );
        assert!(conucleus_leq(&ConucleusMap::constant_bottom(q.clone()), &ConucleusMap::identity(q.clone())).unwrap());
        assert_eq!(
            conucleus_leq(&ConucleusMap::identity(q), &ConucleusMap::identity(chain(2))),
            Err(ConucleusError::ParentMismatch)
        );
    }

    #[test]
    fn every_subquantale_yields_a_conucleus_with_matching_open_set() {
        let q = chain(4);
        for s in all_subquantales(&q) {
            let i = conucleus_from_subquantale(&s, Filter::NONE).unwrap();
            assert_eq!(open_elements(&i).unwrap().members(), s.members());
        }
    }
}
