use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use super::sub::SubError;
use super::{ConucleusMap, Elem, ElemSet, FiniteQuantale, Subquantale};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("f({0}) = {1} is not an element of the target")]
    OutOfRange(Elem, Elem),
    #[error("product not preserved at ({0},{1})")]
    Product(Elem, Elem),
    #[error("join not preserved at ({0},{1})")]
    Join(Elem, Elem),
    #[error("bottom not preserved")]
    Bottom,
    #[error("unit not preserved")]
    Unit,
    #[error("maps are not composable")]
    NotComposable,
    #[error("conucleus is over the wrong quantale")]
    WrongConucleus,
    #[error("conucleus not commuted at {0}")]
    Conucleus(Elem),
    #[error("subquantale belongs to a different quantale")]
    ForeignSubquantale,
}

/// A map preserving products and all joins, and the unit when both sides
/// are unital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleHom {
    source: Arc<FiniteQuantale>,
    target: Arc<FiniteQuantale>,
    map: Vec<Elem>,
}

impl QuantaleHom {
    pub fn new(
        source: Arc<FiniteQuantale>,
        target: Arc<FiniteQuantale>,
        map: Vec<Elem>,
    ) -> Result<Self, HomError> {
        check_hom(&source, &target, &map)?;
        Ok(QuantaleHom { source, target, map })
    }

    pub fn identity(q: Arc<FiniteQuantale>) -> Self {
        let map = q.elements().collect();
        QuantaleHom {
            source: q.clone(),
            target: q,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteQuantale> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteQuantale> {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &QuantaleHom) -> Result<QuantaleHom, HomError> {
        if self.target != g.source {
            return Err(HomError::NotComposable);
        }
        let map = self.map.iter().map(|&b| g.map[b]).collect();
        QuantaleHom::new(self.source.clone(), g.target.clone(), map)
    }

    /// `{f(s) | s ∈ S}`, validated as a subquantale of the target.
    pub fn image(&self, s: &Subquantale) -> Result<Result<Subquantale, SubError>, HomError> {
        if s.parent() != &self.source {
            return Err(HomError::ForeignSubquantale);
        }
        let members: ElemSet = s.members().iter().map(|a| self.map[a]).collect();
        Ok(Subquantale::new(self.target.clone(), members))
    }
}

fn check_hom(src: &FiniteQuantale, tgt: &FiniteQuantale, map: &[Elem]) -> Result<(), HomError> {
    if map.len() != src.size() {
        return Err(HomError::Length {
            expected: src.size(),
            found: map.len(),
        });
    }
    for (a, &b) in map.iter().enumerate() {
        if b >= tgt.size() {
            return Err(HomError::OutOfRange(a, b));
        }
    }
    if map[src.bottom()] != tgt.bottom() {
        return Err(HomError::Bottom);
    }
    if let (Some(e1), Some(e2)) = (src.unit(), tgt.unit()) {
        if map[e1] != e2 {
            return Err(HomError::Unit);
        }
    }
    for a in src.elements() {
        for b in src.elements() {
            if map[src.mult(a, b)] != tgt.mult(map[a], map[b]) {
                return Err(HomError::Product(a, b));
            }
            if map[src.join(a, b)] != tgt.join(map[a], map[b]) {
                return Err(HomError::Join(a, b));
            }
        }
    }
    Ok(())
}

/// Every homomorphism from `src` to `tgt`, in lexicographic order of maps.
pub fn all_homomorphisms(src: &Arc<FiniteQuantale>, tgt: &Arc<FiniteQuantale>) -> Vec<QuantaleHom> {
    let n = src.size();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    fn rec(
        i: usize,
        map: &mut Vec<Elem>,
        src: &Arc<FiniteQuantale>,
        tgt: &Arc<FiniteQuantale>,
        out: &mut Vec<QuantaleHom>,
    ) {
        if i == map.len() {
            if check_hom(src, tgt, map).is_ok() {
                out.push(QuantaleHom {
                    source: src.clone(),
                    target: tgt.clone(),
                    map: map.clone(),
                });
            }
            return;
        }
        for b in tgt.elements() {
            map[i] = b;
            // prune on pairs whose images are all fixed
            let ok = (0..=i).all(|a| {
                let (p, j) = (src.mult(a, i), src.join(a, i));
                let (p2, j2) = (src.mult(i, a), src.join(i, a));
                (p > i || map[p] == tgt.mult(map[a], map[i]))
                    && (p2 > i || map[p2] == tgt.mult(map[i], map[a]))
                    && (j > i || map[j] == tgt.join(map[a], map[i]))
                    && (j2 > i || map[j2] == tgt.join(map[i], map[a]))
            });
            if ok {
                rec(i + 1, map, src, tgt, out);
            }
        }
    }
    if n > 0 {
        rec(0, &mut map, src, tgt, &mut out);
    }
    out
}

/// A homomorphism between quantales with conuclei: `f(I1 a) = I2(f a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConHom {
    hom: QuantaleHom,
    source_i: ConucleusMap,
    target_i: ConucleusMap,
}

impl ConHom {
    pub fn new(hom: QuantaleHom, source_i: ConucleusMap, target_i: ConucleusMap) -> Result<Self, HomError> {
        if source_i.parent() != hom.source() || target_i.parent() != hom.target() {
            return Err(HomError::WrongConucleus);
        }
        for a in hom.source().elements() {
            if hom.apply(source_i.apply(a)) != target_i.apply(hom.apply(a)) {
                return Err(HomError::Conucleus(a));
            }
        }
        Ok(ConHom {
            hom,
            source_i,
            target_i,
        })
    }

    pub fn hom(&self) -> &QuantaleHom {
        &self.hom
    }

    pub fn source_conucleus(&self) -> &ConucleusMap {
        &self.source_i
    }

    pub fn target_conucleus(&self) -> &ConucleusMap {
        &self.target_i
    }

    pub fn then(&self, g: &ConHom) -> Result<ConHom, HomError> {
        if self.target_i != g.source_i {
            return Err(HomError::NotComposable);
        }
        ConHom::new(self.hom.then(&g.hom)?, self.source_i.clone(), g.target_i.clone())
    }
}
