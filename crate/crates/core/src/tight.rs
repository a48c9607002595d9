//! The tight groupoid of germs and the distinguished subsemigroups
//! `S^Iso`, `F_Λ`, `S_c` and cycline pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryError, MorphismId};
use crate::groupoid::{FiniteGroupoid, GroupoidError};
use crate::hull::{Hull, InverseSemigroup};
use crate::spectrum::{act, Filter, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TightError {
    #[error("S^Iso characterizations disagree at element {element}: {detail}")]
    SisoMismatch { element: usize, detail: String },
    #[error("{0} is not closed: {1}")]
    NotClosed(&'static str, String),
    #[error("category is not singly aligned")]
    NotSinglyAligned,
    #[error("degree map absent or invalid: {0}")]
    Degree(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A germ `[s, ξ]`: hull element index and position in the tight list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Germ {
    pub element: usize,
    pub filter: usize,
}

/// `(s, ξ) ~ (t, ξ)`: a witness `e ∈ ξ` with `e ≤ s*s, t*t` and `se = te`
/// (the first one in semilattice order), or `None`.
pub fn germ_equal(s: &InverseSemigroup, a: usize, b: usize, xi: Filter) -> Result<Option<usize>, TightError> {
    let e = s.semilattice();
    for i in [a, b] {
        if !xi.contains(e, s.source_idempotent(i)) {
            return Err(SpectrumError::OutsideDomain(i).into());
        }
    }
    let (sa, sb) = (s.source_idempotent(a), s.source_idempotent(b));
    Ok(xi.elements(e).into_iter().find(|&f| {
        e.leq(f, sa) && e.leq(f, sb) && {
            let p = s.idempotent_element(f);
            s.product(a, p) == s.product(b, p)
        }
    }))
}

#[derive(Debug, Clone)]
pub struct TightGroupoid {
    groupoid: FiniteGroupoid,
    tight: Vec<Filter>,
    germs: Vec<Germ>,
    class: BTreeMap<Germ, usize>,
}

impl TightGroupoid {
    pub fn build(s: &InverseSemigroup, tight: &[Filter]) -> Result<Self, TightError> {
        let e = s.semilattice();
        let position: BTreeMap<Filter, usize> = tight.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        // Germs with the same `s·min ξ` coincide; the lowest `s` represents.
        let mut rep_of_key: BTreeMap<(usize, usize), Germ> = BTreeMap::new();
        let mut all: Vec<Germ> = Vec::new();
        for (p, &xi) in tight.iter().enumerate() {
            let m = s.idempotent_element(xi.minimum());
            for i in 0..s.len() {
                if xi.contains(e, s.source_idempotent(i)) {
                    let g = Germ { element: i, filter: p };
                    rep_of_key.entry((s.product(i, m), p)).or_insert(g);
                    all.push(g);
                }
            }
        }
        let mut germs: Vec<Germ> = rep_of_key.values().copied().collect();
        germs.sort_by_key(|g| (g.filter, g.element));
        let index: BTreeMap<Germ, usize> = germs.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let key = |g: Germ| (s.product(g.element, s.idempotent_element(tight[g.filter].minimum())), g.filter);
        let class: BTreeMap<Germ, usize> = all.iter().map(|&g| (g, index[&rep_of_key[&key(g)]])).collect();

        let image = |g: Germ| -> Result<usize, TightError> {
            let y = act(s, g.element, tight[g.filter])?;
            Ok(position[&y])
        };
        let unit_at = |p: usize| class[&Germ { element: s.idempotent_element(tight[p].minimum()), filter: p }];
        let mut range = Vec::with_capacity(germs.len());
        let mut source = Vec::with_capacity(germs.len());
        for &g in &germs {
            range.push(unit_at(image(g)?));
            source.push(unit_at(g.filter));
        }
        let labels = germs.iter().map(|g| format!("[{}, ξ{}]", g.element, g.filter)).collect();
        let groupoid = FiniteGroupoid::new(labels, range.clone(), source.clone(), |a, b| {
            // [t, θ_s ξ][s, ξ] = [ts, ξ]
            let (t, sg) = (germs[a], germs[b]);
            if image(sg).ok()? != t.filter {
                return None;
            }
            class.get(&Germ { element: s.product(t.element, sg.element), filter: sg.filter }).copied()
        })?;
        Ok(TightGroupoid { groupoid, tight: tight.to_vec(), germs, class })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn tight_filters(&self) -> &[Filter] {
        &self.tight
    }

    pub fn len(&self) -> usize {
        self.germs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germs.is_empty()
    }

    pub fn germ(&self, g: usize) -> Germ {
        self.germs[g]
    }

    /// The groupoid element `[s, ξ]` for the `p`-th tight filter.
    pub fn element_of(&self, s: usize, p: usize) -> Option<usize> {
        self.class.get(&Germ { element: s, filter: p }).copied()
    }

    /// The unit `[e, ξ]` for the `p`-th tight filter.
    pub fn unit_of_filter(&self, p: usize) -> usize {
        self.groupoid.source(self.class.iter().find(|(g, _)| g.filter == p).map(|(_, &i)| i).unwrap())
    }

    /// The bisection `[s, D_{s*s}]`, sorted.
    pub fn bisection(&self, s: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.tight.len()).filter_map(|p| self.element_of(s, p)).collect();
        v.sort_unstable();
        v
    }

    /// `G_tight(T) = {[s, ξ] : s ∈ T}` for a subset `T` of the semigroup.
    pub fn germs_of(&self, subset: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.class.iter().filter(|(g, _)| subset.contains(&g.element)).map(|(_, &i)| i).collect()
    }

    /// Composition respects every choice of representatives.
    pub fn check_well_defined(&self, s: &InverseSemigroup) -> Result<(), TightError> {
        for (&t, &a) in &self.class {
            for (&u, &b) in &self.class {
                let Ok(y) = act(s, u.element, self.tight[u.filter]) else { continue };
                if self.tight[t.filter] != y {
                    continue;
                }
                let prod = self.element_of(s.product(t.element, u.element), u.filter);
                if prod != self.groupoid.compose(a, b) {
                    return Err(GroupoidError::Axiom(format!("germ product depends on representatives at {t:?}·{u:?}")).into());
                }
            }
        }
        Ok(())
    }
}

/// `{s : s e s* e ≠ 0 for every nonzero e ≤ s*s}`.
pub fn siso_algebraic(s: &InverseSemigroup) -> BTreeSet<usize> {
    let e = s.semilattice();
    (0..s.len())
        .filter(|&i| {
            let src = s.source_idempotent(i);
            e.down(src)
                .into_iter()
                .filter(|&f| f != e.zero())
                .all(|f| e.meet(s.conjugate(i, f), f) != e.zero())
        })
        .collect()
}

/// `{s : θ_s fixes every tight filter in D_{s*s}}`.
pub fn siso_by_fixing(s: &InverseSemigroup, tight: &[Filter]) -> BTreeSet<usize> {
    (0..s.len()).filter(|&i| crate::spectrum::fixes_domain(s, i, tight)).collect()
}

/// `αβ* ∈ S^Iso` iff `αγΛ ∩ βγΛ ≠ ∅` for every `γ ∈ s(α)Λ`.
pub fn pair_in_siso(hull: &Hull, a: MorphismId, b: MorphismId) -> bool {
    let cat = hull.category();
    cat.ideal(cat.source(a)).iter().all(|&g| match (cat.compose(a, g), cat.compose(b, g)) {
        (Some(ag), Some(bg)) => cat.meets(ag, bg),
        _ => false,
    })
}

/// S^Iso by the pair criterion on the canonical decomposition.
pub fn siso_by_pairs(hull: &Hull) -> BTreeSet<usize> {
    (0..hull.len())
        .filter(|&i| hull.decompose_index(i).iter().all(|&(a, b)| pair_in_siso(hull, a, b)))
        .collect()
}

/// S^Iso of an abstract finite inverse semigroup; the algebraic and
/// filter-fixing forms must agree.
pub fn compute_siso_semigroup(s: &InverseSemigroup, tight: &[Filter]) -> Result<BTreeSet<usize>, TightError> {
    let alg = siso_algebraic(s);
    let fix = siso_by_fixing(s, tight);
    if let Some(&i) = alg.symmetric_difference(&fix).next() {
        return Err(TightError::SisoMismatch {
            element: i,
            detail: format!("algebraic {}, fixing {}", alg.contains(&i), fix.contains(&i)),
        });
    }
    Ok(alg)
}

/// S^Iso of a hull, with all three characterizations and the piecewise
/// criterion cross-checked.
pub fn compute_siso(hull: &Hull, tight: &[Filter]) -> Result<BTreeSet<usize>, TightError> {
    let s = hull.semigroup();
    let alg = compute_siso_semigroup(s, tight)?;
    let pairs = siso_by_pairs(hull);
    if let Some(&i) = alg.symmetric_difference(&pairs).next() {
        return Err(TightError::SisoMismatch {
            element: i,
            detail: format!("algebraic {}, pair criterion {}", alg.contains(&i), pairs.contains(&i)),
        });
    }
    for i in 0..s.len() {
        let pieces = hull.decompose_index(i);
        let piecewise = pieces.iter().all(|&(a, b)| alg.contains(&hull.basic(a, b)));
        if piecewise != alg.contains(&i) {
            return Err(TightError::SisoMismatch { element: i, detail: "union differs from its pieces".into() });
        }
    }
    for &e in s.idempotents() {
        if !alg.contains(&e) {
            return Err(TightError::SisoMismatch { element: e, detail: "idempotent missing".into() });
        }
    }
    check_inverse_subsemigroup(s, &alg, "S^Iso")?;
    Ok(alg)
}

pub fn check_inverse_subsemigroup(s: &InverseSemigroup, set: &BTreeSet<usize>, name: &'static str) -> Result<(), TightError> {
    for &a in set {
        if !set.contains(&s.inverse(a)) {
            return Err(TightError::NotClosed(name, format!("inverse of {a}")));
        }
        for &b in set {
            let p = s.product(a, b);
            if !set.contains(&p) {
                return Err(TightError::NotClosed(name, format!("product of {a} and {b}")));
            }
        }
    }
    Ok(())
}

/// `{⋃αᵢβᵢ* ∈ S^Iso : {αᵢ}, {βᵢ} exhaustive} ∪ {0}`.
pub fn compute_f_lambda(hull: &Hull, siso: &BTreeSet<usize>) -> Result<BTreeSet<usize>, TightError> {
    let cat = hull.category();
    let mut out = BTreeSet::from([0]);
    for &i in siso {
        let pieces = hull.decompose_index(i);
        let alphas: Vec<MorphismId> = pieces.iter().map(|p| p.0).collect();
        let betas: Vec<MorphismId> = pieces.iter().map(|p| p.1).collect();
        if cat.is_exhaustive_family(&alphas) && cat.is_exhaustive_family(&betas) {
            out.insert(i);
        }
    }
    check_inverse_subsemigroup(hull.semigroup(), &out, "F_Λ")?;
    Ok(out)
}

/// `{αβ* : α, β ∈ Λ_c} ∪ {0}`; requires single alignment. Also checks
/// `F_Λ = S^Iso ∩ S_c`.
pub fn compute_s_c(hull: &Hull, siso: &BTreeSet<usize>, f_lambda: &BTreeSet<usize>) -> Result<BTreeSet<usize>, TightError> {
    if !hull.is_singly_aligned() {
        return Err(TightError::NotSinglyAligned);
    }
    let core = hull.category().core();
    let mut out = BTreeSet::from([0]);
    for ((a, b), s) in hull.pairs() {
        if core.contains(&a) && core.contains(&b) {
            out.insert(s);
        }
    }
    check_inverse_subsemigroup(hull.semigroup(), &out, "S_c")?;
    let meet: BTreeSet<usize> = siso.intersection(&out).copied().collect();
    if &meet != f_lambda {
        return Err(TightError::NotClosed("F_Λ = S^Iso ∩ S_c", format!("{meet:?} vs {f_lambda:?}")));
    }
    Ok(out)
}

/// Pairs `(α, β)` with `s(α) = s(β)` and `αβ* ∈ S^Iso`.
pub fn cycline_pairs(hull: &Hull, siso: &BTreeSet<usize>) -> Result<Vec<(MorphismId, MorphismId)>, TightError> {
    let report = hull.category().validate_degree().map_err(|e| TightError::Degree(e.to_string()))?;
    if let Some(f) = report.failures.first() {
        return Err(TightError::Degree(f.detail.clone()));
    }
    Ok(hull.pairs().filter(|(_, s)| siso.contains(s)).map(|(p, _)| p).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub within_isotropy: bool,
    /// Units `x` with `G_x^x = H_x^x`.
    pub full_isotropy_units: Vec<usize>,
    /// In a finite discrete unit space, dense means all units.
    pub dense: bool,
}

pub fn isotropy_check(g: &FiniteGroupoid, h: &BTreeSet<usize>) -> Result<IsotropyReport, TightError> {
    g.check_subgroupoid(h)?;
    let iso = g.isotropy();
    let within = h.is_subset(&iso);
    let full: Vec<usize> = g
        .units()
        .iter()
        .copied()
        .filter(|&x| g.isotropy_at(x).iter().all(|a| h.contains(a)))
        .collect();
    let dense = full.len() == g.units().len();
    Ok(IsotropyReport { within_isotropy: within, full_isotropy_units: full, dense })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::DEFAULT_CAP;
    use crate::spectrum::tightness_census;

    fn setup(cat: crate::category::Lcsc) -> (Hull, Vec<Filter>, TightGroupoid) {
        let h = Hull::generate(&cat, DEFAULT_CAP).unwrap();
        let tight = tightness_census(h.semigroup().semilattice()).unwrap().tight;
        let g = TightGroupoid::build(h.semigroup(), &tight).unwrap();
        (h, tight, g)
    }

    #[test]
    fn fixture_a_groupoid() {
        let (h, tight, g) = setup(fixtures::fixture_a());
        assert_eq!(g.len(), 4);
        assert_eq!(g.groupoid().units().len(), 2);
        assert!(g.groupoid().check_axioms().is_empty());
        g.check_well_defined(h.semigroup()).unwrap();
        // The arrow [e, ↑wΛ] goes from ↑wΛ to ↑eΛ.
        let e = h.semigroup().semilattice();
        let pw = tight.iter().position(|f| e.set(f.minimum()) == &BTreeSet::from([1])).unwrap();
        let arrow = g.element_of(h.generator(2), pw).unwrap();
        assert!(!g.groupoid().is_unit(arrow));
        assert_ne!(g.groupoid().range(arrow), g.groupoid().source(arrow));
    }

    #[test]
    fn fixture_a_germ_equality() {
        let (h, tight, _) = setup(fixtures::fixture_a());
        let s = h.semigroup();
        let e = s.semilattice();
        let xi1 = *tight.iter().find(|f| e.set(f.minimum()) == &BTreeSet::from([2])).unwrap();
        let id_e = h.ideal_projection(2);
        let w = germ_equal(s, h.generator(0), id_e, xi1).unwrap();
        assert_eq!(w.map(|f| s.idempotent_element(f)), Some(id_e));
        assert!(germ_equal(s, id_e, id_e, xi1).unwrap().is_some());
    }

    #[test]
    fn fixture_b_groupoid_is_z2() {
        let (h, tight, g) = setup(fixtures::fixture_b());
        assert_eq!(g.len(), 2);
        assert_eq!(g.groupoid().units().len(), 1);
        assert_eq!(germ_equal(h.semigroup(), h.generator(0), h.generator(1), tight[0]).unwrap(), None);
    }

    #[test]
    fn trivial_groupoid() {
        let (_, _, g) = setup(fixtures::trivial());
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn siso_of_fixtures() {
        let (h, tight, _) = setup(fixtures::fixture_a());
        let siso = compute_siso(&h, &tight).unwrap();
        let idem: BTreeSet<usize> = h.semigroup().idempotents().iter().copied().collect();
        assert_eq!(siso, idem);
        let f = compute_f_lambda(&h, &siso).unwrap();
        assert_eq!(f, idem);
        let sc = compute_s_c(&h, &siso, &f).unwrap();
        assert_eq!(sc.len(), h.len());

        let (hb, tb, _) = setup(fixtures::fixture_b());
        let sb = compute_siso(&hb, &tb).unwrap();
        assert_eq!(sb.len(), 3);
        assert_eq!(compute_f_lambda(&hb, &sb).unwrap().len(), 3);
    }

    #[test]
    fn cycline_pairs_are_diagonal() {
        let (h, tight, _) = setup(fixtures::fixture_c());
        let siso = compute_siso(&h, &tight).unwrap();
        let pairs = cycline_pairs(&h, &siso).unwrap();
        assert_eq!(pairs, (0..9).map(|a| (a, a)).collect::<Vec<_>>());
        let (ha, ta, _) = setup(fixtures::fixture_a().with_degree(vec![vec![0], vec![0], vec![1]]).unwrap());
        let sa = compute_siso(&ha, &ta).unwrap();
        assert_eq!(cycline_pairs(&ha, &sa).unwrap(), vec![(0, 0), (1, 1), (2, 2)]);
        let (hb, tb, _) = setup(fixtures::fixture_b());
        assert!(matches!(cycline_pairs(&hb, &compute_siso(&hb, &tb).unwrap()), Err(TightError::Degree(_))));
    }

    #[test]
    fn isotropy_reports() {
        for cat in [fixtures::fixture_a(), fixtures::fixture_b(), fixtures::fixture_c()] {
            let (h, tight, g) = setup(cat);
            let siso = compute_siso(&h, &tight).unwrap();
            let sub = g.germs_of(&siso);
            let r = isotropy_check(g.groupoid(), &sub).unwrap();
            assert!(r.within_isotropy && r.dense);
        }
    }

    #[test]
    fn non_subgroupoid_rejected() {
        let (_, _, g) = setup(fixtures::fixture_a());
        let arrow = (0..4).find(|&a| !g.groupoid().is_unit(a)).unwrap();
        assert!(isotropy_check(g.groupoid(), &BTreeSet::from([arrow])).is_err());
    }
}
