//! Finite groupoids given by explicit tables.
//!
//! `compose(α, β)` is `αβ`, defined when `d(α) = r(β)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::category::{Lcsc, LcscBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("groupoid axiom fails: {0}")]
    Axiom(String),
    #[error("element {0} out of range")]
    UnknownElement(usize),
    #[error("not a bisection: {0}")]
    NotBisection(String),
    #[error("not a subgroupoid: {0}")]
    NotSubgroupoid(String),
    #[error("group table is not a group")]
    NotAGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    units: Vec<usize>,
    range: Vec<usize>,
    source: Vec<usize>,
    inverse: Vec<usize>,
    table: Vec<Option<usize>>,
}

impl FiniteGroupoid {
    /// Builds from a product function and validates all axioms.
    pub fn new(
        labels: Vec<String>,
        range: Vec<usize>,
        source: Vec<usize>,
        product: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, GroupoidError> {
        let n = labels.len();
        if range.len() != n || source.len() != n {
            return Err(GroupoidError::Axiom("range/source tables have the wrong length".into()));
        }
        for &x in range.iter().chain(&source) {
            if x >= n {
                return Err(GroupoidError::UnknownElement(x));
            }
        }
        let mut units: Vec<usize> = range.iter().chain(&source).copied().collect();
        units.sort_unstable();
        units.dedup();
        let mut table = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if source[a] == range[b] {
                    let c = product(a, b).ok_or_else(|| GroupoidError::Axiom(format!("{a}·{b} undefined")))?;
                    if c >= n {
                        return Err(GroupoidError::UnknownElement(c));
                    }
                    table[a * n + b] = Some(c);
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] == Some(range[a]) && table[b * n + a] == Some(source[a]))
                .ok_or_else(|| GroupoidError::Axiom(format!("{a} has no inverse")))?;
            inverse[a] = inv;
        }
        let g = FiniteGroupoid { labels, units, range, source, inverse, table };
        if let Some(f) = g.check_axioms().into_iter().next() {
            return Err(GroupoidError::Axiom(f));
        }
        Ok(g)
    }

    /// Every axiom violation, exhaustively.
    pub fn check_axioms(&self) -> Vec<String> {
        let n = self.len();
        let mut out = Vec::new();
        for &u in &self.units {
            if self.range[u] != u || self.source[u] != u {
                out.push(format!("unit {u} has wrong endpoints"));
            }
        }
        for a in 0..n {
            let (r, s) = (self.range[a], self.source[a]);
            if self.compose(r, a) != Some(a) || self.compose(a, s) != Some(a) {
                out.push(format!("unit law at {a}"));
            }
            let i = self.inverse[a];
            if self.inverse[i] != a || self.range[i] != s || self.source[i] != r {
                out.push(format!("inverse of {a}"));
            }
            for b in 0..n {
                let Some(ab) = self.compose(a, b) else { continue };
                if self.range[ab] != r || self.source[ab] != self.source[b] {
                    out.push(format!("endpoints of {a}·{b}"));
                }
                for c in 0..n {
                    let Some(bc) = self.compose(b, c) else { continue };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        out.push(format!("associativity at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        out
    }

    /// `n` units with the full equivalence relation, times a group given by
    /// its multiplication table (identity 0).
    pub fn pair_times_group(n: usize, group: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let k = group.len();
        if k == 0 || group.iter().any(|row| row.len() != k || row.iter().any(|&x| x >= k)) || group[0] != (0..k).collect::<Vec<_>>() {
            return Err(GroupoidError::NotAGroup);
        }
        // Element (i, j, g) ↦ (i·n + j)·k + g, an arrow from j to i.
        let id = |i: usize, j: usize, g: usize| (i * n + j) * k + g;
        let mut labels = vec![String::new(); n * n * k];
        let mut range = vec![0; n * n * k];
        let mut source = vec![0; n * n * k];
        for i in 0..n {
            for j in 0..n {
                for g in 0..k {
                    labels[id(i, j, g)] = format!("({i},{j},{g})");
                    range[id(i, j, g)] = id(i, i, 0);
                    source[id(i, j, g)] = id(j, j, 0);
                }
            }
        }
        Self::new(labels, range, source, |a, b| {
            let (i, j, g) = (a / k / n, (a / k) % n, a % k);
            let (j2, l, h) = (b / k / n, (b / k) % n, b % k);
            (j == j2).then(|| id(i, l, group[g][h]))
        })
    }

    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self, GroupoidError> {
        let mut offsets = Vec::new();
        let mut total = 0;
        for p in parts {
            offsets.push(total);
            total += p.len();
        }
        let mut labels = Vec::new();
        let mut range = Vec::new();
        let mut source = Vec::new();
        for (k, (p, &o)) in parts.iter().zip(&offsets).enumerate() {
            for a in 0..p.len() {
                labels.push(if parts.len() == 1 { p.labels[a].clone() } else { format!("{}:{}", k, p.labels[a]) });
                range.push(p.range[a] + o);
                source.push(p.source[a] + o);
            }
        }
        let locate = |a: usize| {
            let part = offsets.iter().rposition(|&o| o <= a).unwrap();
            (part, a - offsets[part])
        };
        Self::new(labels, range, source, |a, b| {
            let ((pa, la), (pb, lb)) = (locate(a), locate(b));
            if pa != pb {
                return None;
            }
            parts[pa].compose(la, lb).map(|c| c + offsets[pa])
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units.binary_search(&a).is_ok()
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.len() + b]
    }

    /// `G_x^x`.
    pub fn isotropy_at(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.range[a] == x && self.source[a] == x).collect()
    }

    pub fn isotropy(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&a| self.range[a] == self.source[a]).collect()
    }

    /// Elements with source `x`.
    pub fn source_fiber(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.source[a] == x).collect()
    }

    pub fn check_bisection(&self, set: &[usize]) -> Result<(), GroupoidError> {
        let mut r = BTreeSet::new();
        let mut s = BTreeSet::new();
        for &a in set {
            if a >= self.len() {
                return Err(GroupoidError::UnknownElement(a));
            }
            if !r.insert(self.range[a]) {
                return Err(GroupoidError::NotBisection(format!("range repeated at {a}")));
            }
            if !s.insert(self.source[a]) {
                return Err(GroupoidError::NotBisection(format!("source repeated at {a}")));
            }
        }
        Ok(())
    }

    /// Closed under products and inverses.
    pub fn check_subgroupoid(&self, set: &BTreeSet<usize>) -> Result<(), GroupoidError> {
        for &a in set {
            if a >= self.len() {
                return Err(GroupoidError::UnknownElement(a));
            }
            if !set.contains(&self.inverse[a]) {
                return Err(GroupoidError::NotSubgroupoid(format!("inverse of {a} missing")));
            }
            for &b in set {
                if let Some(c) = self.compose(a, b) {
                    if !set.contains(&c) {
                        return Err(GroupoidError::NotSubgroupoid(format!("{a}·{b} missing")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The groupoid as a category with objects = units. Every groupoid is
    /// left cancellative.
    pub fn to_category(&self) -> Lcsc {
        let n = self.len();
        // Units first so they get the lowest ids.
        let order: Vec<usize> = self
            .units
            .iter()
            .copied()
            .chain((0..n).filter(|&a| !self.is_unit(a)))
            .collect();
        let mut ids = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            ids[old] = new;
        }
        let mut b = LcscBuilder::new();
        for &a in &order {
            if self.is_unit(a) {
                b.object(self.labels[a].clone());
            } else {
                b.morphism(self.labels[a].clone(), ids[self.range[a]], ids[self.source[a]]);
            }
        }
        for a in 0..n {
            for c in 0..n {
                if let Some(ac) = self.compose(a, c) {
                    b.compose(ids[a], ids[c], ids[ac]);
                }
            }
        }
        b.build().expect("groupoid tables are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn pair_groupoid_axioms() {
        let g = FiniteGroupoid::pair_times_group(2, &[vec![0]]).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.units().len(), 2);
        assert!(g.check_axioms().is_empty());
        assert_eq!(g.isotropy().len(), 2);
    }

    #[test]
    fn group_as_groupoid() {
        let g = FiniteGroupoid::pair_times_group(1, &z2()).unwrap();
        assert_eq!(g.units(), &[0]);
        assert_eq!(g.compose(1, 1), Some(0));
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn non_group_table_rejected() {
        assert_eq!(FiniteGroupoid::pair_times_group(1, &[vec![0, 1], vec![1, 1]]).unwrap_err(), GroupoidError::Axiom("1 has no inverse".into()));
    }

    #[test]
    fn disjoint_union_and_category() {
        let g = FiniteGroupoid::disjoint_union(&[
            FiniteGroupoid::pair_times_group(2, &[vec![0]]).unwrap(),
            FiniteGroupoid::pair_times_group(1, &z2()).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.units().len(), 3);
        let cat = g.to_category();
        assert!(cat.validate(true).passed);
        assert_eq!(cat.objects().len(), 3);
        assert_eq!(cat.invertibles().len(), 6);
    }

    #[test]
    fn bisections() {
        let g = FiniteGroupoid::pair_times_group(2, &[vec![0]]).unwrap();
        assert!(g.check_bisection(g.units()).is_ok());
        assert!(g.check_bisection(&[1, 2]).is_ok());
        assert!(g.check_bisection(&[0, 1]).is_err());
    }
}
