//! Partial bijections on a finite set `{0, …, n-1}`; the symmetric inverse
//! monoid `I(X)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbijError {
    #[error("map is not injective: {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("point {0} appears twice in the domain")]
    DuplicateDomain(usize),
    #[error("point {point} outside the universe of size {size}")]
    OutOfRange { point: usize, size: usize },
    #[error("parts {0} and {1} are not compatible")]
    Incompatible(usize, usize),
    #[error("cannot join an empty list without a universe size")]
    EmptyJoin,
    #[error("universes differ ({0} vs {1})")]
    UniverseMismatch(usize, usize),
}

/// An injective map from a subset of `{0, …, n-1}` into it. The empty map is
/// the zero element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBij {
    image: Vec<Option<usize>>,
}

impl fmt::Debug for PartialBij {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

impl PartialBij {
    pub fn zero(n: usize) -> Self {
        PartialBij { image: vec![None; n] }
    }

    pub fn identity_on(n: usize, set: &BTreeSet<usize>) -> Self {
        let mut image = vec![None; n];
        for &x in set {
            image[x] = Some(x);
        }
        PartialBij { image }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PbijError> {
        let mut image = vec![None; n];
        let mut preimage: Vec<Option<usize>> = vec![None; n];
        for (x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(PbijError::OutOfRange { point: p, size: n });
                }
            }
            if image[x].is_some() {
                return Err(PbijError::DuplicateDomain(x));
            }
            if let Some(prev) = preimage[y] {
                return Err(PbijError::NotInjective(prev, x));
            }
            image[x] = Some(y);
            preimage[y] = Some(x);
        }
        Ok(PartialBij { image })
    }

    pub fn universe(&self) -> usize {
        self.image.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.image.get(x).copied().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs().map(|(x, _)| x).collect()
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.pairs().map(|(_, y)| y).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(Option::is_none)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    /// `s ∘ t`: apply `t` first, on `{x ∈ dom t : t(x) ∈ dom s}`.
    pub fn compose(&self, t: &PartialBij) -> PartialBij {
        let image = t.image.iter().map(|y| y.and_then(|y| self.get(y))).collect();
        PartialBij { image }
    }

    pub fn inverse(&self) -> PartialBij {
        let mut image = vec![None; self.universe()];
        for (x, y) in self.pairs() {
            image[y] = Some(x);
        }
        PartialBij { image }
    }

    pub fn restrict(&self, set: &BTreeSet<usize>) -> PartialBij {
        let image = self
            .image
            .iter()
            .enumerate()
            .map(|(x, y)| if set.contains(&x) { *y } else { None })
            .collect();
        PartialBij { image }
    }

    /// `s ≤ t` iff `t s* s = s`; asserted equal to graph containment.
    pub fn natural_leq(&self, t: &PartialBij) -> bool {
        let algebraic = t.compose(&self.inverse().compose(self)) == *self;
        let graph = self.pairs().all(|(x, y)| t.get(x) == Some(y));
        debug_assert_eq!(algebraic, graph);
        algebraic
    }

    /// `s* t` and `s t*` are idempotents; asserted equal to agreement on
    /// common domain and on common range.
    pub fn is_compatible(&self, t: &PartialBij) -> bool {
        let algebraic = self.inverse().compose(t).is_idempotent() && self.compose(&t.inverse()).is_idempotent();
        let (si, ti) = (self.inverse(), t.inverse());
        let functional = self.pairs().all(|(x, y)| t.get(x).is_none_or(|z| z == y))
            && si.pairs().all(|(y, x)| ti.get(y).is_none_or(|z| z == x));
        debug_assert_eq!(algebraic, functional);
        algebraic
    }

    /// Graph union of pairwise compatible maps.
    pub fn union_join(parts: &[PartialBij]) -> Result<PartialBij, PbijError> {
        let first = parts.first().ok_or(PbijError::EmptyJoin)?;
        let n = first.universe();
        for (i, p) in parts.iter().enumerate() {
            if p.universe() != n {
                return Err(PbijError::UniverseMismatch(n, p.universe()));
            }
            for (j, q) in parts.iter().enumerate().skip(i + 1) {
                if !p.is_compatible(q) {
                    return Err(PbijError::Incompatible(i, j));
                }
            }
        }
        let mut image = vec![None; n];
        for p in parts {
            for (x, y) in p.pairs() {
                image[x] = Some(y);
            }
        }
        Ok(PartialBij { image })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Fixture A universe: v=0, w=1, e=2.
    fn e() -> PartialBij {
        PartialBij::from_pairs(3, [(1, 2)]).unwrap()
    }
    fn id_v() -> PartialBij {
        PartialBij::identity_on(3, &BTreeSet::from([0, 2]))
    }

    #[test]
    fn compose_examples() {
        let ee = e().compose(&e().inverse());
        assert_eq!(ee, PartialBij::from_pairs(3, [(2, 2)]).unwrap());
        assert_eq!(e().inverse().compose(&id_v()), PartialBij::from_pairs(3, [(2, 1)]).unwrap());
        assert!(e().compose(&PartialBij::zero(3)).is_zero());
        assert!(PartialBij::zero(3).compose(&e()).is_zero());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(e().inverse(), PartialBij::from_pairs(3, [(2, 1)]).unwrap());
        assert_eq!(id_v().inverse(), id_v());
        assert!(PartialBij::zero(3).inverse().is_zero());
    }

    #[test]
    fn order_examples() {
        let id_e = PartialBij::from_pairs(3, [(2, 2)]).unwrap();
        assert!(id_e.natural_leq(&id_v()));
        assert!(e().natural_leq(&e()));
        assert!(!e().natural_leq(&id_v()));
    }

    #[test]
    fn compatibility_examples() {
        let id_w = PartialBij::identity_on(3, &BTreeSet::from([1]));
        assert!(id_v().is_compatible(&id_w));
        assert!(!e().is_compatible(&id_v()));
        assert!(e().is_compatible(&e()));
    }

    #[test]
    fn join_examples() {
        let a = PartialBij::from_pairs(3, [(0, 0)]).unwrap();
        let b = PartialBij::from_pairs(3, [(2, 2)]).unwrap();
        assert_eq!(PartialBij::union_join(&[a.clone(), b]).unwrap(), id_v());
        assert_eq!(PartialBij::union_join(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(PartialBij::union_join(&[e(), id_v()]), Err(PbijError::Incompatible(0, 1)));
    }

    #[test]
    fn injectivity_is_enforced() {
        assert_eq!(PartialBij::from_pairs(3, [(0, 2), (1, 2)]), Err(PbijError::NotInjective(0, 1)));
    }

    fn arb_pbij(n: usize) -> impl Strategy<Value = PartialBij> {
        (Just(Vec::from_iter(0..n)).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(perm, mask)| {
                let pairs = (0..n).filter(|&x| mask[x]).map(|x| (x, perm[x]));
                PartialBij::from_pairs(n, pairs).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn inverse_semigroup_laws(s in arb_pbij(5), t in arb_pbij(5), u in arb_pbij(5)) {
            prop_assert_eq!(s.compose(&s.inverse()).compose(&s), s.clone());
            prop_assert_eq!(s.compose(&t).compose(&u), s.compose(&t.compose(&u)));
            prop_assert_eq!(s.compose(&t).inverse(), t.inverse().compose(&s.inverse()));
            let (e, f) = (s.inverse().compose(&s), t.inverse().compose(&t));
            prop_assert_eq!(e.compose(&f), f.compose(&e));
        }

        #[test]
        fn restriction_is_below(s in arb_pbij(5), t in arb_pbij(5)) {
            let r = s.restrict(&t.domain());
            prop_assert!(r.natural_leq(&s));
            prop_assert!(r.is_compatible(&s));
        }
    }
}
