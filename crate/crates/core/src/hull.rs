//! Inverse subsemigroups of `I(X)` and the left inverse hull `S_Λ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::category::{CategoryError, Lcsc, MorphismId};
use crate::pbij::PartialBij;
use crate::semilattice::Semilattice;

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("inverse semigroup exceeds the cap of {cap} elements")]
    Overflow { cap: usize },
    #[error("not an element of the left inverse hull: {0}")]
    NotHullElement(String),
    #[error("category is not singly aligned")]
    NotSinglyAligned,
    #[error("pair ({0}, {1}) does not have a common source")]
    SourceMismatch(MorphismId, MorphismId),
    #[error("generators act on different universes")]
    UniverseMismatch,
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A finite inverse subsemigroup of `I(X)` containing 0, with its
/// idempotent semilattice. Elements are sorted; index 0 is the zero map.
#[derive(Debug, Clone)]
pub struct InverseSemigroup {
    elements: Vec<PartialBij>,
    index: HashMap<PartialBij, usize>,
    inverse: Vec<usize>,
    semilattice: Semilattice,
    idempotent_element: Vec<usize>,
    idempotent_of: Vec<Option<usize>>,
}

impl InverseSemigroup {
    /// Closure of `gens ∪ gens* ∪ {0}` under composition.
    pub fn generate(universe: usize, gens: &[PartialBij], cap: usize) -> Result<Self, HullError> {
        if gens.iter().any(|g| g.universe() != universe) {
            return Err(HullError::UniverseMismatch);
        }
        let mut letters: Vec<PartialBij> = Vec::new();
        for g in gens {
            letters.push(g.clone());
            letters.push(g.inverse());
        }
        letters.sort();
        letters.dedup();
        let mut seen: BTreeSet<PartialBij> = BTreeSet::new();
        let mut queue: VecDeque<PartialBij> = VecDeque::new();
        for x in letters.iter().cloned().chain(std::iter::once(PartialBij::zero(universe))) {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in &letters {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(HullError::Overflow { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        if seen.len() > cap {
            return Err(HullError::Overflow { cap });
        }
        let elements: Vec<PartialBij> = seen.into_iter().collect();
        Ok(Self::from_sorted(elements))
    }

    fn from_sorted(elements: Vec<PartialBij>) -> Self {
        let index: HashMap<PartialBij, usize> =
            elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let inverse = elements.iter().map(|s| index[&s.inverse()]).collect();
        let semilattice = Semilattice::from_sets(elements.iter().filter(|s| s.is_idempotent()).map(|s| s.domain()))
            .expect("idempotents of an inverse semigroup are meet closed");
        let n = elements[0].universe();
        let idempotent_element: Vec<usize> = semilattice
            .sets()
            .iter()
            .map(|x| index[&PartialBij::identity_on(n, x)])
            .collect();
        let mut idempotent_of = vec![None; elements.len()];
        for (k, &i) in idempotent_element.iter().enumerate() {
            idempotent_of[i] = Some(k);
        }
        let out = InverseSemigroup { elements, index, inverse, semilattice, idempotent_element, idempotent_of };
        // E(S) ≅ J: the product of identities is the identity on the intersection.
        let k = out.semilattice.len();
        for a in 0..k {
            for b in 0..k {
                let p = out.element(out.idempotent_element[a]).compose(out.element(out.idempotent_element[b]));
                assert_eq!(out.idempotent_of[out.index[&p]], Some(out.semilattice.meet(a, b)));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.elements[0].universe()
    }

    pub fn elements(&self) -> &[PartialBij] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialBij {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &PartialBij) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Index of `s_i ∘ s_j`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn product_all(&self, items: &[usize]) -> usize {
        items.iter().skip(1).fold(items[0], |acc, &x| self.product(acc, x))
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.idempotent_of[i].is_some()
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotent_element
    }

    pub fn semilattice(&self) -> &Semilattice {
        &self.semilattice
    }

    /// Semilattice index of an idempotent element.
    pub fn as_idempotent(&self, i: usize) -> Option<usize> {
        self.idempotent_of[i]
    }

    /// Element index of a semilattice idempotent.
    pub fn idempotent_element(&self, e: usize) -> usize {
        self.idempotent_element[e]
    }

    /// Semilattice index of `s*s`.
    pub fn source_idempotent(&self, i: usize) -> usize {
        self.idempotent_of[self.product(self.inverse[i], i)].unwrap()
    }

    /// Semilattice index of `ss*`.
    pub fn range_idempotent(&self, i: usize) -> usize {
        self.idempotent_of[self.product(i, self.inverse[i])].unwrap()
    }

    /// `s e s*` for a semilattice idempotent `e`, as a semilattice index.
    pub fn conjugate(&self, i: usize, e: usize) -> usize {
        let p = self.product_all(&[i, self.idempotent_element[e], self.inverse[i]]);
        self.idempotent_of[p].unwrap()
    }

    pub fn natural_leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].natural_leq(&self.elements[j])
    }

    pub fn is_compatible(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_compatible(&self.elements[j])
    }
}

/// The left multiplication map `α : s(α)Λ → αΛ`, `β ↦ αβ`.
pub fn left_multiplication(cat: &Lcsc, a: MorphismId) -> Result<PartialBij, HullError> {
    let pairs = cat
        .ideal(cat.source(a))
        .iter()
        .map(|&b| cat.compose(a, b).map(|ab| (b, ab)).ok_or(CategoryError::UnknownMorphism(b)))
        .collect::<Result<Vec<_>, _>>()?;
    PartialBij::from_pairs(cat.len(), pairs)
        .map_err(|e| HullError::Category(CategoryError::Invalid(format!("left multiplication by {}: {e}", cat.name(a)))))
}

/// The left inverse hull of a finite left cancellative category.
#[derive(Debug, Clone)]
pub struct Hull {
    cat: Lcsc,
    semigroup: InverseSemigroup,
    generator: Vec<usize>,
    singly_aligned: bool,
    pair_element: BTreeMap<(MorphismId, MorphismId), usize>,
}

impl Hull {
    pub fn generate(cat: &Lcsc, cap: usize) -> Result<Self, HullError> {
        let gens = cat.morphisms().map(|a| left_multiplication(cat, a)).collect::<Result<Vec<_>, _>>()?;
        let semigroup = InverseSemigroup::generate(cat.len(), &gens, cap)?;
        let generator = gens.iter().map(|g| semigroup.index_of(g).unwrap()).collect::<Vec<_>>();
        let mut pair_element = BTreeMap::new();
        for a in cat.morphisms() {
            for b in cat.morphisms() {
                if cat.source(a) == cat.source(b) {
                    let s = semigroup.product(generator[a], semigroup.inverse(generator[b]));
                    pair_element.insert((a, b), s);
                }
            }
        }
        Ok(Hull { cat: cat.clone(), semigroup, generator, singly_aligned: cat.is_singly_aligned(), pair_element })
    }

    pub fn category(&self) -> &Lcsc {
        &self.cat
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.semigroup
    }

    pub fn len(&self) -> usize {
        self.semigroup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.semigroup.is_empty()
    }

    pub fn is_singly_aligned(&self) -> bool {
        self.singly_aligned
    }

    /// Element index of the generator `α`.
    pub fn generator(&self, a: MorphismId) -> usize {
        self.generator[a]
    }

    /// Element index of `αβ*` (zero unless `s(α) = s(β)`).
    pub fn basic(&self, a: MorphismId, b: MorphismId) -> usize {
        self.pair_element.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Element index of `Id_{αΛ} = αα*`.
    pub fn ideal_projection(&self, a: MorphismId) -> usize {
        self.basic(a, a)
    }

    /// Semilattice index of `αΛ`.
    pub fn ideal_idempotent(&self, a: MorphismId) -> usize {
        self.semigroup.as_idempotent(self.basic(a, a)).unwrap()
    }

    /// All pairs `(α, β)` with `s(α) = s(β)`.
    pub fn pairs(&self) -> impl Iterator<Item = ((MorphismId, MorphismId), usize)> + '_ {
        self.pair_element.iter().map(|(&p, &s)| (p, s))
    }

    /// The lowest pair `(α, β)` with `αβ* = s`, if any.
    pub fn canonical_pair(&self, s: usize) -> Option<(MorphismId, MorphismId)> {
        self.pair_element.iter().find(|(_, &t)| t == s).map(|(&p, _)| p)
    }

    /// Pairs `(αᵢ, βᵢ)` with `s = ⋃ αᵢβᵢ*`, taking the maximal generators of
    /// `dom s` (one per `≈`-class) as the `βᵢ` and `αᵢ = s(βᵢ)`.
    pub fn decompose(&self, s: &PartialBij) -> Result<Vec<(MorphismId, MorphismId)>, HullError> {
        if s.universe() != self.cat.len() {
            return Err(HullError::UniverseMismatch);
        }
        if s.is_zero() {
            return Ok(Vec::new());
        }
        if self.semigroup.index_of(s).is_none() {
            return Err(HullError::NotHullElement(format!("{s:?} is not generated by left multiplications")));
        }
        let dom = s.domain();
        let mut out = Vec::new();
        for b in self.cat.maximal_generators(&dom) {
            let a = s.get(b).unwrap();
            if self.cat.source(a) != self.cat.source(b) {
                return Err(HullError::NotHullElement(format!("image of {} has a different source", self.cat.name(b))));
            }
            for g in self.cat.ideal(self.cat.source(b)).iter().copied() {
                let (bg, ag) = (self.cat.compose(b, g), self.cat.compose(a, g));
                if bg.and_then(|x| s.get(x)) != ag {
                    return Err(HullError::NotHullElement(format!(
                        "restriction to {}Λ is not left multiplication",
                        self.cat.name(b)
                    )));
                }
            }
            out.push((a, b));
        }
        let parts: Vec<PartialBij> = out.iter().map(|&(a, b)| self.semigroup.element(self.basic(a, b)).clone()).collect();
        let joined = PartialBij::union_join(&parts).map_err(|e| HullError::NotHullElement(e.to_string()))?;
        if joined != *s {
            return Err(HullError::NotHullElement("pieces do not reconstruct the map".into()));
        }
        Ok(out)
    }

    pub fn decompose_index(&self, s: usize) -> Vec<(MorphismId, MorphismId)> {
        self.decompose(self.semigroup.element(s)).expect("hull elements decompose")
    }

    /// The closed form `αβ*·γτ* = (αβ₁)(τγ₁)*` with `ββ₁ = γγ₁` spanning
    /// `βΛ ∩ γΛ`; `None` when the meet is empty. The result is the lowest pair
    /// representing the product.
    pub fn singly_aligned_product(
        &self,
        (a, b): (MorphismId, MorphismId),
        (g, t): (MorphismId, MorphismId),
    ) -> Result<Option<(MorphismId, MorphismId)>, HullError> {
        if !self.singly_aligned {
            return Err(HullError::NotSinglyAligned);
        }
        for (x, y) in [(a, b), (g, t)] {
            if x >= self.cat.len() || y >= self.cat.len() {
                return Err(CategoryError::UnknownMorphism(x.max(y)).into());
            }
            if self.cat.source(x) != self.cat.source(y) {
                return Err(HullError::SourceMismatch(x, y));
            }
        }
        let extensional = self.semigroup.product(self.basic(a, b), self.basic(g, t));
        let witness = self.cat.alignment_witness(b, g)?;
        let Some(&rho) = witness.first() else {
            assert_eq!(extensional, 0, "empty meet must give zero");
            return Ok(None);
        };
        let b1 = self.cat.left_quotient(b, rho).expect("ρ ∈ βΛ");
        let g1 = self.cat.left_quotient(g, rho).expect("ρ ∈ γΛ");
        let left = self.cat.compose(a, b1).expect("r(β₁) = s(α)");
        let right = self.cat.compose(t, g1).expect("r(γ₁) = s(τ)");
        let closed = self.basic(left, right);
        assert_eq!(closed, extensional, "closed-form product disagrees with composition");
        Ok(self.canonical_pair(closed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pb(n: usize, pairs: &[(usize, usize)]) -> PartialBij {
        PartialBij::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn fixture_a_hull() {
        let h = Hull::generate(&fixtures::fixture_a(), DEFAULT_CAP).unwrap();
        assert_eq!(h.len(), 6);
        let expected = [
            pb(3, &[(0, 0), (2, 2)]),
            pb(3, &[(1, 1)]),
            pb(3, &[(2, 2)]),
            pb(3, &[(1, 2)]),
            pb(3, &[(2, 1)]),
            PartialBij::zero(3),
        ];
        for s in &expected {
            assert!(h.semigroup().index_of(s).is_some(), "{s:?}");
        }
        assert_eq!(h.semigroup().semilattice().len(), 4);
    }

    #[test]
    fn fixture_b_and_trivial_hulls() {
        assert_eq!(Hull::generate(&fixtures::fixture_b(), DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(Hull::generate(&fixtures::trivial(), DEFAULT_CAP).unwrap().len(), 2);
    }

    #[test]
    fn cap_overflow() {
        let err = Hull::generate(&fixtures::fixture_a(), 4).unwrap_err();
        assert_eq!(err, HullError::Overflow { cap: 4 });
    }

    #[test]
    fn decompositions() {
        let h = Hull::generate(&fixtures::fixture_a(), DEFAULT_CAP).unwrap();
        assert_eq!(h.decompose(&pb(3, &[(1, 2)])).unwrap(), vec![(2, 1)]);
        assert_eq!(h.decompose(&pb(3, &[(0, 0), (2, 2)])).unwrap(), vec![(0, 0)]);
        let b = Hull::generate(&fixtures::fixture_b(), DEFAULT_CAP).unwrap();
        assert_eq!(b.decompose(&pb(2, &[(0, 1), (1, 0)])).unwrap(), vec![(1, 0)]);
    }

    #[test]
    fn compatible_join_outside_hull_is_rejected() {
        // Id_{wΛ} ∪ Id_{eΛ} is a compatible join of hull elements but its
        // domain {w, e} is not constructible.
        let h = Hull::generate(&fixtures::fixture_a(), DEFAULT_CAP).unwrap();
        let join = PartialBij::union_join(&[pb(3, &[(1, 1)]), pb(3, &[(2, 2)])]).unwrap();
        assert!(matches!(h.decompose(&join), Err(HullError::NotHullElement(_))));
    }

    #[test]
    fn every_hull_element_reconstructs() {
        for (_, cat) in fixtures::all() {
            let h = Hull::generate(&cat, DEFAULT_CAP).unwrap();
            for s in h.semigroup().elements() {
                let parts = h.decompose(s).unwrap();
                if s.is_zero() {
                    assert!(parts.is_empty());
                    continue;
                }
                let maps: Vec<_> = parts.iter().map(|&(a, b)| h.semigroup().element(h.basic(a, b)).clone()).collect();
                assert_eq!(&PartialBij::union_join(&maps).unwrap(), s);
            }
        }
    }

    #[test]
    fn closed_form_products() {
        let b = Hull::generate(&fixtures::fixture_b(), DEFAULT_CAP).unwrap();
        assert_eq!(b.singly_aligned_product((1, 0), (1, 0)).unwrap(), Some((0, 0)));
        let a = Hull::generate(&fixtures::fixture_a(), DEFAULT_CAP).unwrap();
        assert_eq!(a.singly_aligned_product((2, 1), (1, 1)).unwrap(), Some((2, 1)));
        assert_eq!(a.singly_aligned_product((2, 1), (0, 0)).unwrap(), None);
        assert_eq!(a.singly_aligned_product((2, 0), (0, 0)), Err(HullError::SourceMismatch(2, 0)));
    }

    #[test]
    fn closed_form_agrees_on_all_pairs() {
        for (_, cat) in fixtures::all() {
            let h = Hull::generate(&cat, DEFAULT_CAP).unwrap();
            let pairs: Vec<_> = h.pairs().collect();
            for &(p, s) in &pairs {
                for &(q, t) in &pairs {
                    let got = h.singly_aligned_product(p, q).unwrap();
                    let want = h.semigroup().product(s, t);
                    assert_eq!(got.map(|(a, b)| h.basic(a, b)).unwrap_or(0), want);
                }
            }
        }
    }
}
