//! Finite meet-semilattices of sets under intersection.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemilatticeError {
    #[error("family is not closed under intersection (indices {0} and {1})")]
    NotMeetClosed(usize, usize),
}

/// Idempotents stored as the sets they are identities on, ordered by
/// `(size, set)`, so the empty set (the zero) has index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    sets: Vec<BTreeSet<usize>>,
    meet: Vec<usize>,
    index: BTreeMap<BTreeSet<usize>, usize>,
}

impl Semilattice {
    /// The family plus the empty set; fails unless closed under intersection.
    pub fn from_sets(sets: impl IntoIterator<Item = BTreeSet<usize>>) -> Result<Self, SemilatticeError> {
        let mut all: BTreeSet<BTreeSet<usize>> = sets.into_iter().collect();
        all.insert(BTreeSet::new());
        let mut sets: Vec<BTreeSet<usize>> = all.into_iter().collect();
        sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: BTreeMap<BTreeSet<usize>, usize> =
            sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let k = sets.len();
        let mut meet = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let m: BTreeSet<usize> = sets[i].intersection(&sets[j]).copied().collect();
                meet[i * k + j] = *index.get(&m).ok_or(SemilatticeError::NotMeetClosed(i, j))?;
            }
        }
        Ok(Semilattice { sets, meet, index })
    }

    /// Closes the family under intersection first.
    pub fn closure(sets: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let mut all: BTreeSet<BTreeSet<usize>> = sets.into_iter().collect();
        loop {
            let list: Vec<_> = all.iter().cloned().collect();
            let before = all.len();
            for a in &list {
                for b in &list {
                    all.insert(a.intersection(b).copied().collect());
                }
            }
            if all.len() == before {
                break;
            }
        }
        Self::from_sets(all).expect("closed by construction")
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn set(&self, i: usize) -> &BTreeSet<usize> {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn index_of(&self, set: &BTreeSet<usize>) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    /// `e ≤ f` iff `ef = e`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet(i, j) == i
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        1..self.len()
    }

    pub fn up(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn minimal_nonzero(&self) -> Vec<usize> {
        self.nonzero()
            .filter(|&i| self.nonzero().all(|j| j == i || !self.leq(j, i)))
            .collect()
    }

    pub fn is_union_closed(&self) -> bool {
        self.sets.iter().all(|a| {
            self.sets
                .iter()
                .all(|b| self.index.contains_key(&a.union(b).copied().collect::<BTreeSet<_>>()))
        })
    }

    /// Closed under union and under relative complement `f ∖ e` for `e ≤ f`.
    pub fn is_boolean(&self) -> bool {
        self.is_union_closed()
            && (0..self.len()).all(|i| {
                (0..self.len()).all(|j| {
                    !self.leq(i, j)
                        || self
                            .index
                            .contains_key(&self.sets[j].difference(&self.sets[i]).copied().collect::<BTreeSet<_>>())
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn fixture_a_constructible_sets() {
        let e = Semilattice::from_sets([set(&[0, 2]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.zero(), 0);
        let (v, ee) = (e.index_of(&set(&[0, 2])).unwrap(), e.index_of(&set(&[2])).unwrap());
        assert!(e.leq(ee, v));
        assert_eq!(e.minimal_nonzero().len(), 2);
        assert!(!e.is_union_closed());
    }

    #[test]
    fn not_meet_closed() {
        assert!(Semilattice::from_sets([set(&[0, 1]), set(&[1, 2])]).is_err());
        assert_eq!(Semilattice::closure([set(&[0, 1]), set(&[1, 2])]).len(), 4);
    }

    #[test]
    fn boolean_algebra() {
        let e = Semilattice::from_sets([set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert!(e.is_boolean());
        let chain = Semilattice::from_sets([set(&[0]), set(&[0, 1])]).unwrap();
        assert!(chain.is_union_closed());
        assert!(!chain.is_boolean());
    }
}
