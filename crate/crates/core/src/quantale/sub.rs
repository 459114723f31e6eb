use alloc::sync::Arc;
use alloc::vec::Vec;
use thiserror::Error;

use super::{Elem, ElemSet, FiniteQuantale};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubError {
    #[error("member {0} is not an element")]
    OutOfRange(Elem),
    #[error("bottom (the empty join) is missing")]
    MissingBottom,
    #[error("not closed under product: {0}·{1}")]
    NotProductClosed(Elem, Elem),
    #[error("not closed under join: {0}∨{1}")]
    NotJoinClosed(Elem, Elem),
}

/// A subset closed under multiplication and arbitrary joins (binary joins
/// and the empty join at finite scale).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquantale {
    parent: Arc<FiniteQuantale>,
    members: ElemSet,
}

impl Subquantale {
    pub fn new(parent: Arc<FiniteQuantale>, members: ElemSet) -> Result<Self, SubError> {
        check_closed(&parent, members)?;
        Ok(Subquantale { parent, members })
    }

    pub fn whole(parent: Arc<FiniteQuantale>) -> Self {
        let members = parent.carrier();
        Subquantale { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteQuantale> {
        &self.parent
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }
}

fn check_closed(q: &FiniteQuantale, s: ElemSet) -> Result<(), SubError> {
    if let Some(a) = s.iter().find(|&a| a >= q.size()) {
        return Err(SubError::OutOfRange(a));
    }
    if !s.contains(q.bottom()) {
        return Err(SubError::MissingBottom);
    }
    for a in s {
        for b in s {
            if !s.contains(q.mult(a, b)) {
                return Err(SubError::NotProductClosed(a, b));
            }
            if !s.contains(q.join(a, b)) {
                return Err(SubError::NotJoinClosed(a, b));
            }
        }
    }
    Ok(())
}

/// Smallest subquantale containing `seed`.
pub fn subquantale_closure(q: &FiniteQuantale, seed: ElemSet) -> ElemSet {
    let mut s = seed;
    s.insert(q.bottom());
    loop {
        let mut next = s;
        for a in s {
            for b in s {
                next.insert(q.mult(a, b));
                next.insert(q.join(a, b));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Every subquantale, in lectic order of member sets.
pub fn all_subquantales(q: &Arc<FiniteQuantale>) -> Vec<Subquantale> {
    let n = q.size();
    let mut out = Vec::new();
    let mut current = subquantale_closure(q, ElemSet::EMPTY);
    loop {
        out.push(Subquantale {
            parent: q.clone(),
            members: current,
        });
        // next closed set in lectic order
        let mut found = None;
        let mut a = current;
        for i in (0..n).rev() {
            if a.contains(i) {
                a.remove(i);
            } else {
                let mut seed = a;
                seed.insert(i);
                let b = subquantale_closure(q, seed);
                if b.below(i) == a.below(i) {
                    found = Some(b);
                    break;
                }
            }
        }
        match found {
            Some(b) => current = b,
            None => return out,
        }
    }
}

/// The centre: elements commuting with every element.
pub fn centre(q: &Arc<FiniteQuantale>) -> Result<Subquantale, SubError> {
    let members = q.elements().filter(|&a| q.is_central(a)).collect();
    Subquantale::new(q.clone(), members)
}

/// Strongly square increasing elements.
pub fn ssi_elements(q: &Arc<FiniteQuantale>) -> Result<Subquantale, SubError> {
    let members = q.elements().filter(|&a| q.is_ssi(a)).collect();
    Subquantale::new(q.clone(), members)
}

/// `{a | a <= ε}`; `None` for non-unital quantales.
pub fn unit_downset(q: &Arc<FiniteQuantale>) -> Option<Result<Subquantale, SubError>> {
    let e = q.unit()?;
    let members = q.elements().filter(|&a| q.leq(a, e)).collect();
    Some(Subquantale::new(q.clone(), members))
}
