use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use super::{is_identifier, SubexpIndex};

/// One of the three structural subsets of a signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetName {
    /// Weakening.
    W,
    /// Non-local contraction.
    C,
    /// Exchange.
    E,
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetName::W => "W",
            SetName::C => "C",
            SetName::E => "E",
        })
    }
}

/// Unvalidated signature description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureSpec {
    pub indices: Vec<String>,
    /// Pairs `(s, t)` meaning `s <= t`.
    pub order: Vec<(String, String)>,
    pub weakening: Vec<String>,
    pub contraction: Vec<String>,
    pub exchange: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate index `{0}`")]
    DuplicateIndex(String),
    #[error("invalid index name `{0}`")]
    InvalidName(String),
    #[error("unknown index `{0}`")]
    UnknownIndex(String),
    #[error("not upward-closed: {set} misses {missing} above {below}")]
    NotUpwardClosed {
        set: SetName,
        below: String,
        missing: String,
    },
    #[error("W∩C ⊄ E: index {0}")]
    WeakContrNotExchange(String),
}

/// A validated subexponential signature: a finite preorder of indices with
/// upward-closed weakening, contraction and exchange sets, `W ∩ C ⊆ E`.
///
/// Indices are numbered in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    names: Vec<SubexpIndex>,
    /// Reflexive-transitive closure: `leq[s][t]` iff `s ⪯ t`.
    leq: Vec<Vec<bool>>,
    w: Vec<bool>,
    c: Vec<bool>,
    e: Vec<bool>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::empty()
    }
}

impl Signature {
    /// The signature with no indices.
    pub fn empty() -> Self {
        Signature {
            names: Vec::new(),
            leq: Vec::new(),
            w: Vec::new(),
            c: Vec::new(),
            e: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[SubexpIndex] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &SubexpIndex {
        &self.names[id]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n.as_str() == name)
    }

    pub fn contains(&self, index: &SubexpIndex) -> bool {
        self.lookup(index.as_str()).is_some()
    }

    /// `s ⪯ t` by index id.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s][t]
    }

    pub fn in_set(&self, set: SetName, s: usize) -> bool {
        match set {
            SetName::W => self.w[s],
            SetName::C => self.c[s],
            SetName::E => self.e[s],
        }
    }

    pub fn weakening(&self, s: usize) -> bool {
        self.w[s]
    }

    pub fn contraction(&self, s: usize) -> bool {
        self.c[s]
    }

    pub fn exchange(&self, s: usize) -> bool {
        self.e[s]
    }

    /// True when no index carries non-local contraction.
    pub fn contraction_free(&self) -> bool {
        !self.c.iter().any(|&b| b)
    }

    /// Description that validates back to this signature. Order pairs are
    /// the non-reflexive pairs of the closure.
    pub fn to_spec(&self) -> SignatureSpec {
        let name = |i: usize| String::from(self.names[i].as_str());
        let n = self.len();
        let mut order = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s != t && self.leq[s][t] {
                    order.push((name(s), name(t)));
                }
            }
        }
        let members = |v: &[bool]| (0..n).filter(|&i| v[i]).map(name).collect();
        SignatureSpec {
            indices: (0..n).map(name).collect(),
            order,
            weakening: members(&self.w),
            contraction: members(&self.c),
            exchange: members(&self.e),
        }
    }

    /// Copy of this signature with `s` removed from one structural set.
    /// The result is re-validated.
    pub fn without_membership(
        &self,
        set: SetName,
        index: &str,
    ) -> Result<Signature, Vec<SignatureError>> {
        let mut spec = self.to_spec();
        let list = match set {
            SetName::W => &mut spec.weakening,
            SetName::C => &mut spec.contraction,
            SetName::E => &mut spec.exchange,
        };
        list.retain(|s| s != index);
        validate_signature(&spec)
    }
}

/// Validates a signature description.
///
/// The order is completed to its reflexive-transitive closure; the three
/// sets are checked against the closed order and never repaired. All
/// violations are reported.
pub fn validate_signature(raw: &SignatureSpec) -> Result<Signature, Vec<SignatureError>> {
    let mut errors = Vec::new();
    let mut names: Vec<SubexpIndex> = Vec::new();
    for name in &raw.indices {
        if !is_identifier(name) {
            errors.push(SignatureError::InvalidName(name.clone()));
        } else if names.iter().any(|n| n.as_str() == name) {
            errors.push(SignatureError::DuplicateIndex(name.clone()));
        } else {
            names.push(SubexpIndex::new(name.clone()));
        }
    }
    let n = names.len();
    let find = |name: &str, errors: &mut Vec<SignatureError>| {
        let id = names.iter().position(|x| x.as_str() == name);
        if id.is_none() {
            let e = SignatureError::UnknownIndex(String::from(name));
            if !errors.contains(&e) {
                errors.push(e);
            }
        }
        id
    };

    let mut leq = vec![vec![false; n]; n];
    for (s, row) in leq.iter_mut().enumerate() {
        row[s] = true;
    }
    for (s, t) in &raw.order {
        if let (Some(s), Some(t)) = (find(s, &mut errors), find(t, &mut errors)) {
            leq[s][t] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }

    let membership = |list: &[String], errors: &mut Vec<SignatureError>| {
        let mut v = vec![false; n];
        for s in list {
            if let Some(i) = find(s, errors) {
                v[i] = true;
            }
        }
        v
    };
    let w = membership(&raw.weakening, &mut errors);
    let c = membership(&raw.contraction, &mut errors);
    let e = membership(&raw.exchange, &mut errors);

    for (set, members) in [(SetName::W, &w), (SetName::C, &c), (SetName::E, &e)] {
        for s in 0..n {
            if !members[s] {
                continue;
            }
            for t in 0..n {
                if leq[s][t] && !members[t] {
                    errors.push(SignatureError::NotUpwardClosed {
                        set,
                        below: String::from(names[s].as_str()),
                        missing: String::from(names[t].as_str()),
                    });
                }
            }
        }
    }
    for s in 0..n {
        if w[s] && c[s] && !e[s] {
            errors.push(SignatureError::WeakContrNotExchange(String::from(names[s].as_str())));
        }
    }

    if errors.is_empty() {
        Ok(Signature { names, leq, w, c, e })
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn spec(indices: &[&str], order: &[(&str, &str)], w: &[&str], c: &[&str], e: &[&str]) -> SignatureSpec {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        SignatureSpec {
            indices: v(indices),
            order: order.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            weakening: v(w),
            contraction: v(c),
            exchange: v(e),
        }
    }

    #[test]
    fn discrete_signature() {
        let sig = validate_signature(&spec(&["s"], &[], &[], &[], &[])).unwrap();
        assert_eq!(sig.len(), 1);
        assert!(sig.leq(0, 0));
        assert!(sig.contraction_free());
    }

    #[test]
    fn contraction_not_upward_closed() {
        let errs = validate_signature(&spec(&["s", "t"], &[("s", "t")], &[], &["s"], &[])).unwrap_err();
        assert_eq!(
            errs,
            [SignatureError::NotUpwardClosed {
                set: SetName::C,
                below: "s".into(),
                missing: "t".into()
            }]
        );
        assert_eq!(errs[0].to_string(), "not upward-closed: C misses t above s");
    }

    #[test]
    fn weak_and_contraction_need_exchange() {
        let errs = validate_signature(&spec(&["s"], &[], &["s"], &["s"], &[])).unwrap_err();
        assert_eq!(errs, [SignatureError::WeakContrNotExchange("s".into())]);
    }

    #[test]
    fn duplicate_and_unknown() {
        let errs = validate_signature(&spec(&["s", "s"], &[("s", "q")], &[], &[], &[])).unwrap_err();
        assert!(errs.contains(&SignatureError::DuplicateIndex("s".into())));
        assert!(errs.contains(&SignatureError::UnknownIndex("q".into())));
    }

    #[test]
    fn closure_is_transitive_and_idempotent() {
        let sig = validate_signature(&spec(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c")],
            &["b", "c"],
            &[],
            &["a", "b", "c"],
        ))
        .unwrap();
        assert!(sig.leq(0, 2));
        assert!(!sig.leq(2, 0));
        let again = validate_signature(&sig.to_spec()).unwrap();
        assert_eq!(again, sig);
    }

    #[test]
    fn cycles_are_allowed() {
        let sig = validate_signature(&spec(&["a", "b"], &[("a", "b"), ("b", "a")], &[], &[], &[])).unwrap();
        assert!(sig.leq(0, 1) && sig.leq(1, 0));
    }

    #[test]
    fn upward_closure_by_pair_enumeration() {
        // every subset assignment over a 3-chain: accepted iff each set is an up-set
        let names = ["a", "b", "c"];
        for mask in 0u32..(1 << 9) {
            let pick = |k: u32| -> Vec<&str> {
                (0..3).filter(|i| mask >> (3 * k + i) & 1 == 1).map(|i| names[i as usize]).collect()
            };
            let (w, c, e) = (pick(0), pick(1), pick(2));
            let up = |xs: &Vec<&str>| {
                let idx: Vec<usize> = xs.iter().map(|x| names.iter().position(|n| n == x).unwrap()).collect();
                idx.iter().all(|&i| (i..3).all(|j| idx.contains(&j)))
            };
            let wc_ok = w.iter().all(|x| !c.contains(x) || e.contains(x));
            let r = validate_signature(&spec(&names, &[("a", "b"), ("b", "c")], &w, &c, &e));
            assert_eq!(r.is_ok(), up(&w) && up(&c) && up(&e) && wc_ok, "mask {mask}");
        }
    }
}
