//! Finite quantales, subquantales and quantic conuclei.
//!
//! Elements are `0..n`. All joins are realized through binary joins and the
//! bottom element, which suffices on a finite carrier.

mod conucleus;
mod elemset;
mod hom;
pub mod lemmas;
mod sub;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

pub use conucleus::{
    all_conuclei, classify_conucleus, conucleus_from_subquantale, conucleus_leq, open_elements, ConucleusClass,
    ConucleusError, ConucleusMap, Filter,
};
pub use elemset::ElemSet;
pub use hom::{all_homomorphisms, ConHom, HomError, QuantaleHom};
pub use sub::{all_subquantales, centre, ssi_elements, subquantale_closure, unit_downset, SubError, Subquantale};

pub type Elem = usize;

/// Largest carrier handled; element sets are 64-bit masks.
pub const MAX_CARRIER: usize = 64;

/// Unvalidated tables, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawQuantale {
    /// `leq[a][b]` iff `a <= b`.
    pub leq: Vec<Vec<bool>>,
    pub mult: Vec<Vec<Elem>>,
    pub unit: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("carrier is empty")]
    Empty,
    #[error("carrier of size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("tables are not square of matching size")]
    Shape,
    #[error("mult({0},{1}) = {2} is not an element")]
    OutOfRange(Elem, Elem, Elem),
    #[error("unit {0} is not an element")]
    UnitOutOfRange(Elem),
    #[error("order not reflexive at {0}")]
    NotReflexive(Elem),
    #[error("order not antisymmetric at ({0},{1})")]
    NotAntisymmetric(Elem, Elem),
    #[error("order not transitive at ({0},{1},{2})")]
    NotTransitive(Elem, Elem, Elem),
    #[error("no join for ({0},{1})")]
    NoJoin(Elem, Elem),
    #[error("no bottom element")]
    NoBottom,
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("distributivity fails at ({0};{1},{2})")]
    LeftDistributivity(Elem, Elem, Elem),
    #[error("distributivity fails at ({1},{2};{0})")]
    RightDistributivity(Elem, Elem, Elem),
    #[error("empty-join distributivity fails at {0}: product with bottom is not bottom")]
    BottomNotAbsorbing(Elem),
    #[error("unit law fails at {0}")]
    UnitLaw(Elem),
}

/// A validated finite quantale with its derived lattice tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuantale {
    n: usize,
    /// Up-sets: bit `b` of `up[a]` iff `a <= b`.
    up: Vec<ElemSet>,
    mult: Vec<Elem>,
    unit: Option<Elem>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

/// Least upper bound of `a` and `b` under `leq`, if it exists.
fn lub(n: usize, leq: &[Vec<bool>], a: Elem, b: Elem) -> Option<Elem> {
    let ubs: Vec<Elem> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
    ubs.iter().copied().find(|&c| ubs.iter().all(|&d| leq[c][d]))
}

/// Validates raw tables exhaustively and computes the derived tables.
pub fn validate_quantale(raw: &RawQuantale) -> Result<FiniteQuantale, Vec<QuantaleError>> {
    let n = raw.leq.len();
    if n == 0 {
        return Err(vec![QuantaleError::Empty]);
    }
    if n > MAX_CARRIER {
        return Err(vec![QuantaleError::TooLarge(n)]);
    }
    if raw.leq.iter().any(|r| r.len() != n) || raw.mult.len() != n || raw.mult.iter().any(|r| r.len() != n) {
        return Err(vec![QuantaleError::Shape]);
    }
    let mut errors = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if raw.mult[a][b] >= n {
                errors.push(QuantaleError::OutOfRange(a, b, raw.mult[a][b]));
            }
        }
    }
    if let Some(u) = raw.unit {
        if u >= n {
            errors.push(QuantaleError::UnitOutOfRange(u));
        }
    }
    let leq = &raw.leq;
    for a in 0..n {
        if !leq[a][a] {
            errors.push(QuantaleError::NotReflexive(a));
        }
        for b in a + 1..n {
            if leq[a][b] && leq[b][a] {
                errors.push(QuantaleError::NotAntisymmetric(a, b));
            }
        }
        for b in 0..n {
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    errors.push(QuantaleError::NotTransitive(a, b, c));
                }
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            match lub(n, leq, a, b) {
                Some(c) => join[a * n + b] = c,
                None => {
                    if a <= b {
                        errors.push(QuantaleError::NoJoin(a, b));
                    }
                }
            }
        }
    }
    let bottom = (0..n).find(|&a| (0..n).all(|b| leq[a][b]));
    if bottom.is_none() {
        errors.push(QuantaleError::NoBottom);
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let bottom = bottom.unwrap();
    let top = (0..n).fold(bottom, |acc, a| join[acc * n + a]);
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = (0..n)
                .filter(|&c| leq[c][a] && leq[c][b])
                .fold(bottom, |acc, c| join[acc * n + c]);
        }
    }
    let up = (0..n)
        .map(|a| ElemSet::from_iter((0..n).filter(|&b| leq[a][b])))
        .collect();
    let mult: Vec<Elem> = raw.mult.iter().flatten().copied().collect();
    let m = |a: Elem, b: Elem| mult[a * n + b];
    let j = |a: Elem, b: Elem| join[a * n + b];

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    errors.push(QuantaleError::NotAssociative(a, b, c));
                }
            }
        }
    }
    for a in 0..n {
        if m(a, bottom) != bottom || m(bottom, a) != bottom {
            errors.push(QuantaleError::BottomNotAbsorbing(a));
        }
        for b in 0..n {
            for c in b + 1..n {
                if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                    errors.push(QuantaleError::LeftDistributivity(a, b, c));
                }
                if m(j(b, c), a) != j(m(b, a), m(c, a)) {
                    errors.push(QuantaleError::RightDistributivity(a, b, c));
                }
            }
        }
    }
    if let Some(u) = raw.unit {
        for a in 0..n {
            if m(u, a) != a || m(a, u) != a {
                errors.push(QuantaleError::UnitLaw(a));
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(FiniteQuantale {
        n,
        up,
        mult,
        unit: raw.unit,
        join,
        meet,
        bottom,
        top,
    })
}

impl FiniteQuantale {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.n
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: Elem) -> ElemSet {
        self.up[a]
    }

    pub fn mult(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.n + b]
    }

    pub fn mult3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mult(self.mult(a, b), c)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    pub fn join_set(&self, s: ElemSet) -> Elem {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mult(a, b) == self.mult(b, a)))
    }

    /// `a\b`: the join of all `c` with `a·c <= b`.
    pub fn residual_left(&self, a: Elem, b: Elem) -> Elem {
        self.join_all(self.elements().filter(|&c| self.leq(self.mult(a, c), b)))
    }

    /// `b/a`: the join of all `c` with `c·a <= b`.
    pub fn residual_right(&self, b: Elem, a: Elem) -> Elem {
        self.join_all(self.elements().filter(|&c| self.leq(self.mult(c, a), b)))
    }

    /// The element is central: commutes with everything.
    pub fn is_central(&self, a: Elem) -> bool {
        self.elements().all(|b| self.mult(a, b) == self.mult(b, a))
    }

    /// Strongly square increasing: `a·b <= a·b·a` and `b·a <= a·b·a` for all `b`.
    pub fn is_ssi(&self, a: Elem) -> bool {
        self.elements().all(|b| {
            let aba = self.mult3(a, b, a);
            self.leq(self.mult(a, b), aba) && self.leq(self.mult(b, a), aba)
        })
    }

    pub fn to_raw(&self) -> RawQuantale {
        RawQuantale {
            leq: (0..self.n).map(|a| (0..self.n).map(|b| self.leq(a, b)).collect()).collect(),
            mult: (0..self.n).map(|a| (0..self.n).map(|b| self.mult(a, b)).collect()).collect(),
            unit: self.unit,
        }
    }

    /// Multiplication table, row-major.
    pub fn mult_table(&self) -> &[Elem] {
        &self.mult
    }

    /// The locale on an `n`-chain `0 < 1 < ... < n-1` with `· = ∧` and unit `n-1`.
    pub fn chain_locale(n: usize) -> FiniteQuantale {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        let mult = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        validate_quantale(&RawQuantale {
            leq,
            mult,
            unit: Some(n - 1),
        })
        .expect("chain locale is a quantale")
    }
}

impl fmt::Display for FiniteQuantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quantale n={} unit=", self.n)?;
        match self.unit {
            Some(u) => write!(f, "{}", u),
            None => f.write_str("none"),
        }
    }
}
