//! The relational representation `a ↦ â = {(b, c) | b <= a·c}` of a finite
//! unital quantale, with transported conuclei and homomorphisms.
//!
//! The family `{â}` is ordered by inclusion. Its join is the least member
//! containing the union; whether the plain union is already a member is
//! reported separately, since it fails in general (the empty union is not
//! `⊥̂`).

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::quantale::{ConHom, ConucleusMap, Elem, ElemSet, FiniteQuantale, QuantaleHom};

/// A binary relation on `0..n`; bit `c` of row `b` is the pair `(b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    rows: Vec<ElemSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: alloc::vec![ElemSet::EMPTY; n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Self {
        let mut r = Relation::empty(n);
        for (b, c) in pairs {
            r.rows[b].insert(c);
        }
        r
    }

    pub fn contains(&self, b: Elem, c: Elem) -> bool {
        self.rows[b].contains(c)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_subset(&self, o: &Relation) -> bool {
        self.rows.iter().zip(&o.rows).all(|(x, y)| x.is_subset(*y))
    }

    pub fn union(&self, o: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&o.rows).map(|(x, y)| x.union(*y)).collect(),
        }
    }

    /// `R ∘ S = {(a, c) | (a, b) ∈ R, (b, c) ∈ S for some b}`.
    pub fn compose(&self, o: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().fold(ElemSet::EMPTY, |acc, b| acc.union(o.rows[b])))
                .collect(),
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(b, r)| r.iter().map(move |c| (b, c)))
    }
}

impl fmt::Display for Relation {
    /// Rows of bits separated by `/`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rows.len();
        for (b, r) in self.rows.iter().enumerate() {
            if b > 0 {
                f.write_str("/")?;
            }
            for c in 0..n {
                f.write_str(if r.contains(c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

pub fn hat(q: &FiniteQuantale, a: Elem) -> Relation {
    Relation {
        rows: q
            .elements()
            .map(|b| q.elements().filter(|&c| q.leq(b, q.mult(a, c))).collect())
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("the representation needs a unital quantale")]
    NonUnital,
    #[error("conucleus or homomorphism is over a different quantale")]
    Mismatch,
    #[error("transport fails at {0}: Î(â) differs from the hat of I a")]
    Transport(Elem),
    #[error("transported map violates the conucleus axioms at {0}")]
    TransportAxiom(Elem),
    #[error("a relation outside the family was produced")]
    NotInFamily,
    #[error("relational map is not well defined at {0}")]
    IllDefined(Elem),
    #[error("relational map does not commute with the conuclei at {0}")]
    ConucleusSquare(Elem),
}

/// The family `{â | a ∈ Q}`, indexed by source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalQuantale {
    source: Arc<FiniteQuantale>,
    relations: Vec<Relation>,
}

impl RelationalQuantale {
    pub fn source(&self) -> &Arc<FiniteQuantale> {
        &self.source
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, a: Elem) -> &Relation {
        &self.relations[a]
    }

    /// Index of a family member.
    pub fn index_of(&self, r: &Relation) -> Option<Elem> {
        self.relations.iter().position(|x| x == r)
    }

    /// The least member containing every member in `set`.
    pub fn family_join(&self, set: ElemSet) -> Option<Elem> {
        let n = self.source.size();
        let union = set.iter().fold(Relation::empty(n), |acc, a| acc.union(&self.relations[a]));
        let uppers: Vec<Elem> = (0..self.relations.len())
            .filter(|&c| union.is_subset(&self.relations[c]))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&c| uppers.iter().all(|&d| self.relations[c].is_subset(&self.relations[d])))
    }

    pub fn compose(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.index_of(&self.relations[a].compose(&self.relations[b]))
    }
}

/// Per-element outcome of the four representation checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementChecks {
    /// `â ∘ b̂ = (a·b)^` for every `b`.
    pub mult: bool,
    /// Family join of `{â, b̂}` is `(a ∨ b)^` for every `b`, and every subset
    /// containing `a` joins correctly.
    pub joins: bool,
    /// `â ⊆ b̂` iff `a <= b`, for every `b`.
    pub order: bool,
    /// `â ≠ b̂` for every `b ≠ a`.
    pub injective: bool,
}

impl ElementChecks {
    pub fn all(&self) -> bool {
        self.mult && self.joins && self.order && self.injective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub hats: Vec<Relation>,
    pub elements: Vec<ElementChecks>,
    /// Empty join: the family join of nothing is `⊥̂`.
    pub empty_join: bool,
    /// `ε̂ = {(b, c) | b <= c}` and it is a two-sided identity for `∘`.
    pub identity: bool,
    /// `⊤̂` is transitive and contains every member.
    pub transitive_carrier: bool,
    /// Every union of members is itself a member; diagnostic only.
    pub union_closed: bool,
    /// Subsets checked for joins: all subsets up to 16 elements, otherwise
    /// pairs and the empty set.
    pub all_subsets: bool,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.empty_join && self.identity && self.transitive_carrier && self.elements.iter().all(|e| e.all())
    }
}

/// Largest carrier for which joins are checked over every subset.
pub const ALL_SUBSETS_LIMIT: usize = 16;

/// Builds `{â}` and runs the representation checks exhaustively.
pub fn build_relational(
    q: &Arc<FiniteQuantale>,
) -> Result<(RelationalQuantale, RepresentationReport), RepresentationError> {
    let e = q.unit().ok_or(RepresentationError::NonUnital)?;
    let n = q.size();
    let rq = RelationalQuantale {
        source: q.clone(),
        relations: q.elements().map(|a| hat(q, a)).collect(),
    };
    let r = |a: Elem| &rq.relations[a];
    let all_subsets = n <= ALL_SUBSETS_LIMIT;
    let mut union_closed = true;
    let mut elements = Vec::with_capacity(n);
    for a in q.elements() {
        let mut c = ElementChecks {
            mult: true,
            joins: true,
            order: true,
            injective: true,
        };
        for b in q.elements() {
            c.mult &= r(a).compose(r(b)) == *r(q.mult(a, b));
            c.order &= r(a).is_subset(r(b)) == q.leq(a, b);
            c.injective &= a == b || r(a) != r(b);
        }
        let subsets: Vec<ElemSet> = if all_subsets {
            (0..1u64 << n)
                .map(ElemSet)
                .filter(|s| s.contains(a))
                .collect()
        } else {
            q.elements().map(|b| [a, b].into_iter().collect()).collect()
        };
        for s in subsets {
            c.joins &= rq.family_join(s) == Some(q.join_set(s));
            let union = s.iter().fold(Relation::empty(n), |acc, x| acc.union(r(x)));
            union_closed &= rq.index_of(&union).is_some();
        }
        elements.push(c);
    }
    let empty_join = rq.family_join(ElemSet::EMPTY) == Some(q.bottom());
    union_closed &= rq.index_of(&Relation::empty(n)).is_some();
    let order = Relation::from_pairs(n, q.elements().flat_map(|b| q.up_set(b).iter().map(move |c| (b, c))));
    let identity = *r(e) == order && q.elements().all(|a| r(e).compose(r(a)) == *r(a) && r(a).compose(r(e)) == *r(a));
    let top = r(q.top());
    let transitive_carrier = top.is_transitive() && q.elements().all(|a| r(a).is_subset(top));
    let report = RepresentationReport {
        hats: rq.relations.clone(),
        elements,
        empty_join,
        identity,
        transitive_carrier,
        union_closed,
        all_subsets,
    };
    Ok((rq, report))
}

/// A conucleus on a relational family, as a map on member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalConucleus {
    map: Vec<Elem>,
}

impl RelationalConucleus {
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }
}

/// `Î(â) = ⋁{ŝ | s open, ŝ ⊆ â}` in the family. Checks `Î(â) = (I a)^` and
/// the conucleus axioms on relations (inclusion and composition only).
pub fn transport_conucleus(
    rq: &RelationalQuantale,
    i: &ConucleusMap,
) -> Result<RelationalConucleus, RepresentationError> {
    let q = rq.source();
    if i.parent() != q {
        return Err(RepresentationError::Mismatch);
    }
    let open = i.fixpoints();
    let rel = |a: Elem| &rq.relations[a];
    let mut map = Vec::with_capacity(q.size());
    for a in q.elements() {
        let below: ElemSet = open.iter().filter(|&s| rel(s).is_subset(rel(a))).collect();
        let j = rq.family_join(below).ok_or(RepresentationError::NotInFamily)?;
        if rel(j) != &hat(q, i.apply(a)) {
            return Err(RepresentationError::Transport(a));
        }
        map.push(j);
    }
    for a in q.elements() {
        let ia = map[a];
        let deflationary = rel(ia).is_subset(rel(a));
        let idempotent = map[ia] == ia;
        let monotone = q.elements().all(|b| !rel(a).is_subset(rel(b)) || rel(ia).is_subset(rel(map[b])));
        let product = q.elements().all(|b| match rq.index_of(&rel(ia).compose(rel(map[b]))) {
            Some(p) => map[p] == p,
            None => false,
        });
        if !(deflationary && idempotent && monotone && product) {
            return Err(RepresentationError::TransportAxiom(a));
        }
    }
    Ok(RelationalConucleus { map })
}

/// `f̂(â) = (f a)^` as a map between families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalHom {
    map: Vec<Elem>,
}

impl RelationalHom {
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }
}

/// Lifts a homomorphism of quantales to their families.
pub fn lift_homomorphism(
    src: &RelationalQuantale,
    tgt: &RelationalQuantale,
    f: &QuantaleHom,
) -> Result<RelationalHom, RepresentationError> {
    if f.source() != src.source() || f.target() != tgt.source() {
        return Err(RepresentationError::Mismatch);
    }
    let mut map = Vec::with_capacity(src.relations.len());
    for a in src.source().elements() {
        let image = hat(tgt.source(), f.apply(a));
        let j = tgt.index_of(&image).ok_or(RepresentationError::NotInFamily)?;
        // members with equal relations must agree
        if let Some(b) = src.index_of(&src.relations[a]) {
            if b != a && f.apply(b) != f.apply(a) {
                return Err(RepresentationError::IllDefined(a));
            }
        }
        map.push(j);
    }
    Ok(RelationalHom { map })
}

/// Lifts a homomorphism of quantales with conuclei and checks that the lift
/// commutes with the transported conuclei.
pub fn transport_homomorphism(f: &ConHom) -> Result<RelationalHom, RepresentationError> {
    let (src, _) = build_relational(f.hom().source())?;
    let (tgt, _) = build_relational(f.hom().target())?;
    let i1 = transport_conucleus(&src, f.source_conucleus())?;
    let i2 = transport_conucleus(&tgt, f.target_conucleus())?;
    let fh = lift_homomorphism(&src, &tgt, f.hom())?;
    for a in f.hom().source().elements() {
        if fh.apply(i1.apply(a)) != i2.apply(fh.apply(a)) {
            return Err(RepresentationError::ConucleusSquare(a));
        }
    }
    Ok(fh)
}

/// Functor laws on a composable pair: the lift of the identity is the
/// identity and the lift of `g ∘ f` is the composite of the lifts.
pub fn functor_laws(f: &QuantaleHom, g: &QuantaleHom) -> Result<bool, RepresentationError> {
    let gf = f.then(g).map_err(|_| RepresentationError::Mismatch)?;
    let (a, _) = build_relational(f.source())?;
    let (b, _) = build_relational(f.target())?;
    let (c, _) = build_relational(g.target())?;
    let fh = lift_homomorphism(&a, &b, f)?;
    let gh = lift_homomorphism(&b, &c, g)?;
    let gfh = lift_homomorphism(&a, &c, &gf)?;
    let id = lift_homomorphism(&a, &a, &QuantaleHom::identity(f.source().clone()))?;
    let identity = id.map.iter().enumerate().all(|(x, &y)| x == y);
    let composite = (0..a.relations.len()).all(|x| gfh.apply(x) == gh.apply(fh.apply(x)));
    Ok(identity && composite)
}

impl fmt::Display for RepresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "✓" } else { "✗" };
        for (a, c) in self.elements.iter().enumerate() {
            writeln!(
                f,
                "{} | {} | checks: mult {} joins {} order {} injective {}",
                a,
                self.hats[a],
                mark(c.mult),
                mark(c.joins),
                mark(c.order),
                mark(c.injective)
            )?;
        }
        writeln!(
            f,
            "empty join {} | identity {} | transitive carrier {} | union closed {}",
            mark(self.empty_join),
            mark(self.identity),
            mark(self.transitive_carrier),
            if self.union_closed { "yes" } else { "no" }
        )?;
        write!(
            f,
            "REPRESENTATION size={} status={}",
            self.elements.len(),
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Subquantale;
    use alloc::string::ToString;

    fn chain(n: usize) -> Arc<FiniteQuantale> {
        Arc::new(FiniteQuantale::chain_locale(n))
    }

    #[test]
    fn hats_of_two_chain() {
        let q = chain(2);
        assert_eq!(hat(&q, 1), Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]));
        assert_eq!(hat(&q, 0), Relation::from_pairs(2, [(0, 0), (0, 1)]));
        assert_eq!(hat(&q, 1).to_string(), "11/01");
    }

    #[test]
    fn two_chain_passes() {
        let q = chain(2);
        let (rq, rep) = build_relational(&q).unwrap();
        assert!(rep.passed());
        assert!(!rep.union_closed);
        assert_eq!(rq.relations().len(), 2);
        assert_eq!(rq.compose(1, 0), Some(0));
        assert!(rep.to_string().ends_with("REPRESENTATION size=2 status=pass"));
    }

    #[test]
    fn trivial_quantale() {
        let q = chain(1);
        let (rq, rep) = build_relational(&q).unwrap();
        assert!(rep.passed());
        assert_eq!(rq.relations().len(), 1);
    }

    #[test]
    fn transport_identity_and_bottom() {
        let q = chain(3);
        let (rq, _) = build_relational(&q).unwrap();
        let id = transport_conucleus(&rq, &ConucleusMap::identity(q.clone())).unwrap();
        assert!((0..3).all(|a| id.apply(a) == a));
        let bot = transport_conucleus(&rq, &ConucleusMap::constant_bottom(q.clone())).unwrap();
        assert!((0..3).all(|a| bot.apply(a) == 0));
        let s = Subquantale::new(q.clone(), [0, 2].into_iter().collect()).unwrap();
        let i = crate::quantale::conucleus_from_subquantale(&s, crate::quantale::Filter::NONE).unwrap();
        let t = transport_conucleus(&rq, &i).unwrap();
        assert_eq!((t.apply(0), t.apply(1), t.apply(2)), (0, 0, 2));
    }

    #[test]
    fn identity_hom_lifts_to_identity() {
        let q = chain(3);
        let id = QuantaleHom::identity(q.clone());
        assert!(functor_laws(&id, &id).unwrap());
        let i = ConucleusMap::identity(q);
        let h = transport_homomorphism(&ConHom::new(id, i.clone(), i).unwrap()).unwrap();
        assert_eq!(h.map(), &[0, 1, 2]);
    }
}
