//! Finite left cancellative small categories.
//!
//! Morphisms are dense integer ids `0..n`. Objects are the identity
//! morphisms themselves, so `range` and `source` map a morphism id to the id
//! of an identity morphism. Composition `αβ` is defined when `s(α) = r(β)`:
//! `α` is applied after `β`, and `αΛ` is the set of all `αβ`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

pub type MorphismId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown morphism id {0}")]
    UnknownMorphism(MorphismId),
    #[error("unknown morphism name `{0}`")]
    UnknownName(String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("category fails its axioms: {0}")]
    Invalid(String),
    #[error("no degree map attached")]
    NoDegree,
    #[error("morphisms {members:?} do not all have range {object}")]
    NotUnderObject { members: Vec<MorphismId>, object: MorphismId },
}

/// The axioms checked by [`Lcsc::validate`] and [`Lcsc::validate_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `r` and `s` land in the object set.
    EndpointsAreObjects,
    /// `r(x) = s(x) = x` for objects.
    IdentityEndpoints,
    /// Composition is defined exactly on composable pairs.
    CompositionDomain,
    /// `r(αβ) = r(α)` and `s(αβ) = s(β)`.
    CompositionEndpoints,
    UnitLaw,
    Associativity,
    LeftCancellation,
    RightCancellation,
    DegreeAdditivity,
    UniqueFactorization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<MorphismId>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    fn from_failures(mut failures: Vec<AxiomFailure>) -> Self {
        failures.sort_by(|a, b| (a.axiom, &a.witness).cmp(&(b.axiom, &b.witness)));
        ValidationReport { passed: failures.is_empty(), failures }
    }

    pub fn failure(&self, axiom: Axiom) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

/// A principal right ideal `αΛ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightIdeal {
    pub generator: MorphismId,
    pub elements: BTreeSet<MorphismId>,
}

/// A finite small category given by its full composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcsc {
    names: Vec<String>,
    objects: Vec<MorphismId>,
    range: Vec<MorphismId>,
    source: Vec<MorphismId>,
    table: Vec<Option<MorphismId>>,
    degree: Option<Vec<Vec<u32>>>,
    ideals: Vec<BTreeSet<MorphismId>>,
}

/// Incremental construction of a category table.
#[derive(Debug, Clone, Default)]
pub struct LcscBuilder {
    names: Vec<String>,
    objects: Vec<MorphismId>,
    range: Vec<MorphismId>,
    source: Vec<MorphismId>,
    compose: Vec<(MorphismId, MorphismId, MorphismId)>,
    degree: BTreeMap<MorphismId, Vec<u32>>,
}

impl LcscBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object (an identity morphism) and returns its id.
    pub fn object(&mut self, name: impl Into<String>) -> MorphismId {
        let id = self.names.len();
        self.names.push(name.into());
        self.objects.push(id);
        self.range.push(id);
        self.source.push(id);
        id
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        range: MorphismId,
        source: MorphismId,
    ) -> MorphismId {
        let id = self.names.len();
        self.names.push(name.into());
        self.range.push(range);
        self.source.push(source);
        id
    }

    /// Records `left · right = result`.
    pub fn compose(&mut self, left: MorphismId, right: MorphismId, result: MorphismId) -> &mut Self {
        self.compose.push((left, right, result));
        self
    }

    pub fn degree(&mut self, morphism: MorphismId, degree: Vec<u32>) -> &mut Self {
        self.degree.insert(morphism, degree);
        self
    }

    /// Adds `r(α)·α = α` and `α·s(α) = α` for every morphism whose entry is
    /// not already present.
    pub fn fill_units(&mut self) -> &mut Self {
        let present: BTreeSet<(MorphismId, MorphismId)> =
            self.compose.iter().map(|&(a, b, _)| (a, b)).collect();
        for a in 0..self.names.len() {
            let (r, s) = (self.range[a], self.source[a]);
            if !present.contains(&(r, a)) {
                self.compose.push((r, a, a));
            }
            if !present.contains(&(a, s)) && (a, s) != (r, a) {
                self.compose.push((a, s, a));
            }
        }
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Structural checks only: every id must be in range and the table must
    /// not define a product twice. Axioms are checked by [`Lcsc::validate`].
    pub fn build(&self) -> Result<Lcsc, CategoryError> {
        let n = self.names.len();
        let check = |id: MorphismId| {
            if id < n {
                Ok(id)
            } else {
                Err(CategoryError::UnknownMorphism(id))
            }
        };
        for a in 0..n {
            check(self.range[a])?;
            check(self.source[a])?;
        }
        let mut table = vec![None; n * n];
        for &(a, b, c) in &self.compose {
            check(a)?;
            check(b)?;
            check(c)?;
            match table[a * n + b] {
                Some(prev) if prev != c => {
                    return Err(CategoryError::Malformed(format!(
                        "product {}·{} defined twice ({} and {})",
                        self.names[a], self.names[b], self.names[prev], self.names[c]
                    )))
                }
                _ => table[a * n + b] = Some(c),
            }
        }
        let degree = if self.degree.is_empty() {
            None
        } else {
            let k = self.degree.values().next().map(Vec::len).unwrap_or(0);
            if k == 0 {
                return Err(CategoryError::Malformed("degree vectors must be nonempty".into()));
            }
            let mut out = Vec::with_capacity(n);
            for a in 0..n {
                match self.degree.get(&a) {
                    Some(d) if d.len() == k => out.push(d.clone()),
                    Some(_) => {
                        return Err(CategoryError::Malformed(format!(
                            "degree of {} has the wrong length",
                            self.names[a]
                        )))
                    }
                    None => {
                        return Err(CategoryError::Malformed(format!(
                            "degree of {} missing",
                            self.names[a]
                        )))
                    }
                }
            }
            for &d in self.degree.keys() {
                check(d)?;
            }
            Some(out)
        };
        let mut objects = self.objects.clone();
        objects.sort_unstable();
        objects.dedup();
        Ok(Lcsc::from_parts(
            self.names.clone(),
            objects,
            self.range.clone(),
            self.source.clone(),
            table,
            degree,
        ))
    }
}

impl Lcsc {
    fn from_parts(
        names: Vec<String>,
        objects: Vec<MorphismId>,
        range: Vec<MorphismId>,
        source: Vec<MorphismId>,
        table: Vec<Option<MorphismId>>,
        degree: Option<Vec<Vec<u32>>>,
    ) -> Self {
        let n = names.len();
        let ideals = (0..n)
            .map(|a| {
                let mut set: BTreeSet<MorphismId> =
                    (0..n).filter_map(|b| table[a * n + b]).collect();
                set.insert(a);
                set
            })
            .collect();
        Lcsc { names, objects, range, source, table, degree, ideals }
    }

    /// Builds and validates; fails unless every axiom (including left
    /// cancellation) holds.
    pub fn checked(builder: &LcscBuilder) -> Result<Self, CategoryError> {
        let cat = builder.build()?;
        let report = cat.validate(false);
        if let Some(f) = report.failures.first() {
            return Err(CategoryError::Invalid(format!(
                "{:?} at {:?}: {}",
                f.axiom, f.witness, f.detail
            )));
        }
        Ok(cat)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorphismId> {
        0..self.names.len()
    }

    pub fn objects(&self) -> &[MorphismId] {
        &self.objects
    }

    pub fn is_object(&self, a: MorphismId) -> bool {
        self.objects.binary_search(&a).is_ok()
    }

    pub fn name(&self, a: MorphismId) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Result<MorphismId, CategoryError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CategoryError::UnknownName(name.to_string()))
    }

    pub fn range(&self, a: MorphismId) -> MorphismId {
        self.range[a]
    }

    pub fn source(&self, a: MorphismId) -> MorphismId {
        self.source[a]
    }

    /// The product `αβ`, if the table defines it.
    pub fn compose(&self, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        let n = self.len();
        self.table[a * n + b]
    }

    pub fn degree(&self, a: MorphismId) -> Option<&[u32]> {
        self.degree.as_ref().map(|d| d[a].as_slice())
    }

    pub fn rank(&self) -> Option<usize> {
        self.degree.as_ref().and_then(|d| d.first().map(Vec::len))
    }

    pub fn has_degree(&self) -> bool {
        self.degree.is_some()
    }

    /// Returns a copy carrying the given degree map.
    pub fn with_degree(&self, degree: Vec<Vec<u32>>) -> Result<Self, CategoryError> {
        if degree.len() != self.len() || degree.iter().any(|d| d.len() != degree[0].len()) {
            return Err(CategoryError::Malformed("degree map has the wrong shape".into()));
        }
        if degree.first().is_some_and(Vec::is_empty) {
            return Err(CategoryError::Malformed("degree vectors must be nonempty".into()));
        }
        let mut out = self.clone();
        out.degree = Some(degree);
        Ok(out)
    }

    /// The product category with componentwise composition. Degrees are
    /// concatenated when both factors carry one.
    pub fn product(&self, other: &Lcsc) -> Lcsc {
        let m = other.len();
        let pairs: Vec<(MorphismId, MorphismId)> = self
            .objects
            .iter()
            .flat_map(|&x| other.objects.iter().map(move |&y| (x, y)))
            .chain(
                self.morphisms()
                    .flat_map(|a| other.morphisms().map(move |b| (a, b)))
                    .filter(|&(a, b)| !(self.is_object(a) && other.is_object(b))),
            )
            .collect();
        let mut id = vec![0; self.len() * m];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            id[a * m + b] = i;
        }
        let mut builder = LcscBuilder::new();
        for &(a, b) in &pairs {
            let name = format!("({},{})", self.name(a), other.name(b));
            if self.is_object(a) && other.is_object(b) {
                builder.object(name);
            } else {
                let r = id[self.range(a) * m + other.range(b)];
                let s = id[self.source(a) * m + other.source(b)];
                builder.morphism(name, r, s);
            }
            if let (Some(d), Some(e)) = (self.degree(a), other.degree(b)) {
                builder.degree(id[a * m + b], d.iter().chain(e).copied().collect());
            }
        }
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if let (Some(ac), Some(bd)) = (self.compose(a, c), other.compose(b, d)) {
                    builder.compose(id[a * m + b], id[c * m + d], id[ac * m + bd]);
                }
            }
        }
        builder.build().expect("products of tables are well formed")
    }

    fn known(&self, a: MorphismId) -> Result<(), CategoryError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(CategoryError::UnknownMorphism(a))
        }
    }

    pub fn validate(&self, check_right_cancellation: bool) -> ValidationReport {
        let n = self.len();
        let mut failures: BTreeMap<Axiom, AxiomFailure> = BTreeMap::new();
        let mut fail = |axiom: Axiom, witness: Vec<MorphismId>, detail: String| {
            failures.entry(axiom).or_insert(AxiomFailure { axiom, witness, detail });
        };

        for a in 0..n {
            if !self.is_object(self.range[a]) || !self.is_object(self.source[a]) {
                fail(Axiom::EndpointsAreObjects, vec![a], format!("endpoints of {}", self.names[a]));
            }
        }
        for &x in &self.objects {
            if self.range[x] != x || self.source[x] != x {
                fail(Axiom::IdentityEndpoints, vec![x], format!("object {}", self.names[x]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let composable = self.source[a] == self.range[b];
                match (composable, self.compose(a, b)) {
                    (true, None) => fail(
                        Axiom::CompositionDomain,
                        vec![a, b],
                        format!("{}·{} undefined", self.names[a], self.names[b]),
                    ),
                    (false, Some(_)) => fail(
                        Axiom::CompositionDomain,
                        vec![a, b],
                        format!("{}·{} defined but not composable", self.names[a], self.names[b]),
                    ),
                    (true, Some(c)) => {
                        if self.range[c] != self.range[a] || self.source[c] != self.source[b] {
                            fail(
                                Axiom::CompositionEndpoints,
                                vec![a, b],
                                format!("endpoints of {}·{}", self.names[a], self.names[b]),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for a in 0..n {
            let (r, s) = (self.range[a], self.source[a]);
            if self.compose(r, a) != Some(a) {
                fail(Axiom::UnitLaw, vec![r, a], format!("r({0})·{0} ≠ {0}", self.names[a]));
            }
            if self.compose(a, s) != Some(a) {
                fail(Axiom::UnitLaw, vec![a, s], format!("{0}·s({0}) ≠ {0}", self.names[a]));
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in 0..n {
                    let (Some(bc), true) = (self.compose(b, c), true) else { continue };
                    if let (Some(l), Some(r)) = (self.compose(ab, c), self.compose(a, bc)) {
                        if l != r {
                            fail(Axiom::Associativity, vec![a, b, c], "(αβ)γ ≠ α(βγ)".into());
                            break 'assoc;
                        }
                    }
                }
            }
        }
        'left: for a in 0..n {
            let mut seen: BTreeMap<MorphismId, MorphismId> = BTreeMap::new();
            for b in 0..n {
                if let Some(ab) = self.compose(a, b) {
                    if let Some(&prev) = seen.get(&ab) {
                        fail(Axiom::LeftCancellation, vec![a, prev, b], "αβ = αγ with β ≠ γ".into());
                        break 'left;
                    }
                    seen.insert(ab, b);
                }
            }
        }
        if check_right_cancellation {
            'right: for b in 0..n {
                let mut seen: BTreeMap<MorphismId, MorphismId> = BTreeMap::new();
                for a in 0..n {
                    if let Some(ab) = self.compose(a, b) {
                        if let Some(&prev) = seen.get(&ab) {
                            fail(
                                Axiom::RightCancellation,
                                vec![prev, a, b],
                                "αβ = γβ with α ≠ γ".into(),
                            );
                            break 'right;
                        }
                        seen.insert(ab, a);
                    }
                }
            }
        }
        ValidationReport::from_failures(failures.into_values().collect())
    }

    pub fn right_ideal(&self, a: MorphismId) -> Result<RightIdeal, CategoryError> {
        self.known(a)?;
        Ok(RightIdeal { generator: a, elements: self.ideals[a].clone() })
    }

    /// `αΛ` without the bounds check or the copy.
    pub fn ideal(&self, a: MorphismId) -> &BTreeSet<MorphismId> {
        &self.ideals[a]
    }

    /// `α ≤ β` iff `α ∈ βΛ`.
    pub fn leq(&self, a: MorphismId, b: MorphismId) -> bool {
        self.ideals[b].contains(&a)
    }

    /// `α ≈ β` iff `αΛ = βΛ`.
    pub fn equivalent(&self, a: MorphismId, b: MorphismId) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn ideal_meet(&self, a: MorphismId, b: MorphismId) -> Result<BTreeSet<MorphismId>, CategoryError> {
        self.known(a)?;
        self.known(b)?;
        Ok(self.ideals[a].intersection(&self.ideals[b]).copied().collect())
    }

    pub fn meets(&self, a: MorphismId, b: MorphismId) -> bool {
        self.ideals[a].intersection(&self.ideals[b]).next().is_some()
    }

    /// The `≤`-maximal elements of a right-closed set, one per `≈`-class
    /// (lowest id), sorted ascending.
    pub fn maximal_generators(&self, set: &BTreeSet<MorphismId>) -> Vec<MorphismId> {
        let mut out = Vec::new();
        for &g in set {
            let dominated = set.iter().any(|&h| self.leq(g, h) && !self.leq(h, g));
            if dominated {
                continue;
            }
            let rep = set.iter().copied().find(|&h| self.equivalent(g, h)).unwrap_or(g);
            if rep == g {
                out.push(g);
            }
        }
        out
    }

    /// A minimal finite list `F` with `αΛ ∩ βΛ = ⋃_{f∈F} fΛ`.
    pub fn alignment_witness(&self, a: MorphismId, b: MorphismId) -> Result<Vec<MorphismId>, CategoryError> {
        let meet = self.ideal_meet(a, b)?;
        Ok(self.maximal_generators(&meet))
    }

    pub fn is_singly_aligned(&self) -> bool {
        self.morphisms().all(|a| {
            self.morphisms()
                .all(|b| self.maximal_generators(&self.ideals[a].intersection(&self.ideals[b]).copied().collect()).len() <= 1)
        })
    }

    /// Invertible morphisms with their inverses.
    pub fn invertibles(&self) -> BTreeMap<MorphismId, MorphismId> {
        let mut out = BTreeMap::new();
        for a in self.morphisms() {
            let r = self.range[a];
            if let Some(b) = self.morphisms().find(|&b| self.compose(a, b) == Some(r)) {
                out.insert(a, b);
            }
        }
        out
    }

    /// `B ⊆ xΛ` is exhaustive at `x` if every `α ∈ xΛ` meets some `β ∈ B`.
    pub fn is_exhaustive(&self, family: &[MorphismId], x: MorphismId) -> Result<bool, CategoryError> {
        self.known(x)?;
        for &b in family {
            self.known(b)?;
        }
        if !self.is_object(x) || family.iter().any(|&b| self.range[b] != x) {
            return Err(CategoryError::NotUnderObject { members: family.to_vec(), object: x });
        }
        Ok(self.ideals[x]
            .iter()
            .all(|&a| family.iter().any(|&b| self.meets(a, b))))
    }

    /// Whether a family lies under a single object and is exhaustive there.
    pub fn is_exhaustive_family(&self, family: &[MorphismId]) -> bool {
        let Some(&first) = family.first() else { return false };
        let x = self.range[first];
        self.is_exhaustive(family, x).unwrap_or(false)
    }

    /// The core `Λ_c`, computed both as the set of singletons exhaustive at
    /// their range and through the meet characterization; the two must agree.
    pub fn core(&self) -> BTreeSet<MorphismId> {
        let by_exhaustive: BTreeSet<MorphismId> = self
            .morphisms()
            .filter(|&a| self.is_exhaustive(&[a], self.range[a]).unwrap_or(false))
            .collect();
        let by_meets: BTreeSet<MorphismId> = self
            .morphisms()
            .filter(|&a| self.ideals[self.range[a]].iter().all(|&b| self.meets(a, b)))
            .collect();
        assert_eq!(by_exhaustive, by_meets, "core characterizations disagree");
        by_exhaustive
    }

    /// The unique `β` with `αβ = target`, if any.
    pub fn left_quotient(&self, a: MorphismId, target: MorphismId) -> Option<MorphismId> {
        self.morphisms().find(|&b| self.compose(a, b) == Some(target))
    }

    /// All morphisms with the given source.
    pub fn with_source(&self, x: MorphismId) -> Vec<MorphismId> {
        self.morphisms().filter(|&a| self.source[a] == x).collect()
    }

    /// Degree additivity and unique factorization.
    pub fn validate_degree(&self) -> Result<ValidationReport, CategoryError> {
        let degree = self.degree.as_ref().ok_or(CategoryError::NoDegree)?;
        let n = self.len();
        let mut failures: BTreeMap<Axiom, AxiomFailure> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.compose(a, b) {
                    let sum: Vec<u32> = degree[a].iter().zip(&degree[b]).map(|(x, y)| x + y).collect();
                    if sum != degree[c] {
                        failures.entry(Axiom::DegreeAdditivity).or_insert(AxiomFailure {
                            axiom: Axiom::DegreeAdditivity,
                            witness: vec![a, b],
                            detail: format!("d({}·{}) ≠ d({}) + d({})", self.names[a], self.names[b], self.names[a], self.names[b]),
                        });
                    }
                }
            }
        }
        'outer: for a in 0..n {
            for m in splits(&degree[a]) {
                let rest: Vec<u32> = degree[a].iter().zip(&m).map(|(x, y)| x - y).collect();
                let count = (0..n)
                    .filter(|&b| degree[b] == m)
                    .flat_map(|b| (0..n).map(move |c| (b, c)))
                    .filter(|&(b, c)| degree[c] == rest && self.compose(b, c) == Some(a))
                    .count();
                if count != 1 {
                    let detail = if count == 0 {
                        format!("{} has no factorization of degree {:?} + {:?}", self.names[a], m, rest)
                    } else {
                        format!("{} has {} factorizations of degree {:?} + {:?}", self.names[a], count, m, rest)
                    };
                    failures.entry(Axiom::UniqueFactorization).or_insert(AxiomFailure {
                        axiom: Axiom::UniqueFactorization,
                        witness: vec![a],
                        detail,
                    });
                    break 'outer;
                }
            }
        }
        Ok(ValidationReport::from_failures(failures.into_values().collect()))
    }
}

/// All `m ≤ d` componentwise.
fn splits(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &k in d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=k).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_a_is_valid() {
        let a = fixtures::fixture_a();
        let report = a.validate(true);
        assert!(report.passed, "{:?}", report.failures);
    }

    #[test]
    fn one_object_identity_category_is_valid() {
        let mut b = LcscBuilder::new();
        let x = b.object("x");
        b.compose(x, x, x);
        assert!(b.build().unwrap().validate(true).passed);
    }

    #[test]
    fn missing_right_unit_is_a_unit_law_failure() {
        let mut b = LcscBuilder::new();
        let v = b.object("v");
        let w = b.object("w");
        let e = b.morphism("e", v, w);
        b.compose(v, v, v).compose(w, w, w).compose(v, e, e);
        let report = b.build().unwrap().validate(false);
        assert!(!report.passed);
        assert_eq!(report.failure(Axiom::UnitLaw).unwrap().witness, vec![e, w]);
    }

    #[test]
    fn unknown_id_is_structural() {
        let mut b = LcscBuilder::new();
        let x = b.object("x");
        b.compose(x, x, 7);
        assert_eq!(b.build().unwrap_err(), CategoryError::UnknownMorphism(7));
    }

    #[test]
    fn conflicting_products_are_structural() {
        let mut b = LcscBuilder::new();
        let x = b.object("x");
        let g = b.morphism("g", x, x);
        b.compose(x, x, x).compose(x, x, g);
        assert!(matches!(b.build(), Err(CategoryError::Malformed(_))));
    }

    #[test]
    fn right_cancellation_only_when_flagged() {
        // Left-zero-like monoid {1, z} with z·z = z, z·1 = z, 1·z = z is not
        // left cancellative; use a non right cancellative but left cancellative
        // category: x --a--> y, x --b--> y with a·f = b·f for f: y <- z.
        let mut bld = LcscBuilder::new();
        let x = bld.object("x");
        let y = bld.object("y");
        let z = bld.object("z");
        let a = bld.morphism("a", x, y);
        let b = bld.morphism("b", x, y);
        let f = bld.morphism("f", y, z);
        let af = bld.morphism("af", x, z);
        bld.compose(a, f, af).compose(b, f, af).fill_units();
        let cat = bld.build().unwrap();
        assert!(cat.validate(false).passed);
        let flagged = cat.validate(true);
        assert_eq!(flagged.failure(Axiom::RightCancellation).unwrap().witness, vec![a, b, f]);
    }

    #[test]
    fn left_cancellation_failure_is_reported() {
        let mut bld = LcscBuilder::new();
        let x = bld.object("x");
        let z = bld.morphism("z", x, x);
        bld.compose(z, z, z).compose(z, x, z).compose(x, z, z).compose(x, x, x);
        let report = bld.build().unwrap().validate(false);
        assert!(report.failure(Axiom::LeftCancellation).is_some());
    }

    #[test]
    fn right_ideals_of_fixture_a() {
        let cat = fixtures::fixture_a();
        let [v, w, e] = [0, 1, 2];
        assert_eq!(cat.right_ideal(v).unwrap().elements, BTreeSet::from([v, e]));
        assert_eq!(cat.right_ideal(e).unwrap().elements, BTreeSet::from([e]));
        assert_eq!(cat.right_ideal(w).unwrap().elements, BTreeSet::from([w]));
        assert_eq!(cat.right_ideal(9), Err(CategoryError::UnknownMorphism(9)));
    }

    #[test]
    fn group_identity_ideal_is_everything() {
        let cat = fixtures::fixture_b();
        assert_eq!(cat.right_ideal(0).unwrap().elements, BTreeSet::from([0, 1]));
    }

    #[test]
    fn meets_and_witnesses_of_fixture_a() {
        let cat = fixtures::fixture_a();
        let [v, w, e] = [0, 1, 2];
        assert_eq!(cat.ideal_meet(v, e).unwrap(), BTreeSet::from([e]));
        assert_eq!(cat.ideal_meet(e, e).unwrap(), BTreeSet::from([e]));
        assert!(cat.ideal_meet(v, w).unwrap().is_empty());
        assert_eq!(cat.alignment_witness(v, e).unwrap(), vec![e]);
        assert!(cat.alignment_witness(w, e).unwrap().is_empty());
    }

    #[test]
    fn group_witness_picks_lowest_representative() {
        let cat = fixtures::fixture_b();
        assert_eq!(cat.alignment_witness(0, 1).unwrap(), vec![0]);
    }

    #[test]
    fn fixtures_are_singly_aligned() {
        assert!(fixtures::fixture_a().is_singly_aligned());
        assert!(fixtures::fixture_b().is_singly_aligned());
        assert!(fixtures::fixture_c().is_singly_aligned());
    }

    #[test]
    fn invertibles_of_fixtures() {
        let a = fixtures::fixture_a();
        assert_eq!(a.invertibles().into_keys().collect::<Vec<_>>(), vec![0, 1]);
        let b = fixtures::fixture_b();
        assert_eq!(b.invertibles(), BTreeMap::from([(0, 0), (1, 1)]));
        let c = fixtures::fixture_c();
        assert_eq!(c.invertibles().into_keys().collect::<Vec<_>>(), c.objects().to_vec());
    }

    #[test]
    fn exhaustive_sets() {
        let a = fixtures::fixture_a();
        assert!(a.is_exhaustive(&[2], 0).unwrap());
        assert!(!a.is_exhaustive(&[], 0).unwrap());
        assert!(matches!(a.is_exhaustive(&[1], 0), Err(CategoryError::NotUnderObject { .. })));
        let b = fixtures::fixture_b();
        assert!(b.is_exhaustive(&[1], 0).unwrap());
    }

    #[test]
    fn cores_by_brute_force() {
        assert_eq!(fixtures::fixture_a().core(), BTreeSet::from([0, 1, 2]));
        assert_eq!(fixtures::fixture_b().core(), BTreeSet::from([0, 1]));
        // Every morphism of the square meets everything at its range: at the
        // corner A the diagonal lies in all four ideals.
        let c = fixtures::fixture_c();
        assert_eq!(c.core(), c.morphisms().collect());
    }

    #[test]
    fn degree_checks() {
        let c = fixtures::fixture_c();
        assert!(c.validate_degree().unwrap().passed);
        let a = fixtures::fixture_a().with_degree(vec![vec![0], vec![0], vec![1]]).unwrap();
        assert!(a.validate_degree().unwrap().passed);
        let broken = fixtures::fixture_c_without_square();
        let report = broken.validate_degree().unwrap();
        assert!(report.failure(Axiom::UniqueFactorization).is_some());
        assert_eq!(fixtures::fixture_b().validate_degree(), Err(CategoryError::NoDegree));
    }

    #[test]
    fn additivity_failure() {
        let a = fixtures::fixture_a().with_degree(vec![vec![0], vec![1], vec![1]]).unwrap();
        let report = a.validate_degree().unwrap();
        assert!(report.failure(Axiom::DegreeAdditivity).is_some());
    }

    #[test]
    fn splits_enumerate_box() {
        assert_eq!(splits(&[1, 1]).len(), 4);
        assert_eq!(splits(&[2]).len(), 3);
        assert_eq!(splits(&[0, 0]), vec![vec![0, 0]]);
    }
}
