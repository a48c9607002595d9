//! Filters on a finite semilattice and the spectral action of an inverse
//! semigroup.
//!
//! In a finite semilattice every filter has a minimum, so a filter is stored
//! as that minimum `e` and stands for `↑e`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::hull::InverseSemigroup;
use crate::semilattice::Semilattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("a filter cannot have the zero idempotent as minimum")]
    ZeroFilter,
    #[error("set is not a filter: {0}")]
    NotAFilter(String),
    #[error("C is not a subset of D")]
    NotSubset,
    #[error("semilattice has {0} elements; brute force supports at most {1}")]
    TooLarge(usize, usize),
    #[error("element {0}: filter is outside the domain of θ")]
    OutsideDomain(usize),
    #[error("tightness oracles disagree on filter ↑{filter}: {detail}")]
    OracleDisagreement { filter: usize, detail: String },
}

/// Largest semilattice for the literal brute-force tightness oracle.
pub const LITERAL_LIMIT: usize = 12;
/// Largest complement `E ∖ ξ` for the reduced oracle.
pub const REDUCED_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter {
    minimum: usize,
}

impl Filter {
    pub fn principal(e: &Semilattice, min: usize) -> Result<Self, SpectrumError> {
        if min == e.zero() || min >= e.len() {
            return Err(SpectrumError::ZeroFilter);
        }
        Ok(Filter { minimum: min })
    }

    /// Validates an explicit subset as a filter and returns its principal form.
    pub fn from_elements(e: &Semilattice, set: &BTreeSet<usize>) -> Result<Self, SpectrumError> {
        if set.is_empty() {
            return Err(SpectrumError::NotAFilter("empty".into()));
        }
        if set.contains(&e.zero()) {
            return Err(SpectrumError::NotAFilter("contains zero".into()));
        }
        for &a in set {
            for &b in set {
                if !set.contains(&e.meet(a, b)) {
                    return Err(SpectrumError::NotAFilter(format!("not closed under meet at ({a}, {b})")));
                }
            }
            if e.up(a).iter().any(|u| !set.contains(u)) {
                return Err(SpectrumError::NotAFilter(format!("not upward closed above {a}")));
            }
        }
        let min = set
            .iter()
            .copied()
            .find(|&m| set.iter().all(|&x| e.leq(m, x)))
            .expect("finite meet-closed sets have a minimum");
        Ok(Filter { minimum: min })
    }

    pub fn minimum(&self) -> usize {
        self.minimum
    }

    pub fn contains(&self, e: &Semilattice, x: usize) -> bool {
        e.leq(self.minimum, x)
    }

    pub fn elements(&self, e: &Semilattice) -> Vec<usize> {
        e.up(self.minimum)
    }

    fn mask(&self, e: &Semilattice) -> u64 {
        self.elements(e).iter().fold(0, |m, &x| m | (1 << x))
    }
}

pub fn enumerate_filters(e: &Semilattice) -> Vec<Filter> {
    e.nonzero().map(|m| Filter { minimum: m }).collect()
}

pub fn ultrafilters(e: &Semilattice) -> Vec<Filter> {
    e.minimal_nonzero().into_iter().map(|m| Filter { minimum: m }).collect()
}

pub fn is_ultrafilter(e: &Semilattice, xi: Filter) -> bool {
    e.nonzero().all(|j| j == xi.minimum || !e.leq(j, xi.minimum))
}

/// `C ⊆ D` covers `D` when every nonzero `d ∈ D` meets some `c ∈ C`.
pub fn is_cover(e: &Semilattice, c: &[usize], d: &[usize]) -> Result<bool, SpectrumError> {
    if c.iter().any(|x| !d.contains(x)) {
        return Err(SpectrumError::NotSubset);
    }
    Ok(d
        .iter()
        .filter(|&&x| x != e.zero())
        .all(|&x| c.iter().any(|&y| e.meet(x, y) != e.zero())))
}

/// Tightness via the ultrafilter characterization (finite semilattices).
pub fn is_tight(e: &Semilattice, xi: Filter) -> bool {
    is_ultrafilter(e, xi)
}

/// Bit tables for brute force: `below[x]` = `{f ≤ x}`, `disjoint[y]` =
/// `{f : fy = 0}`, `meets[d]` = `{c : cd ≠ 0}`.
struct Masks {
    below: Vec<u64>,
    disjoint: Vec<u64>,
    meets: Vec<u64>,
    all: u64,
    zero: u64,
}

impl Masks {
    fn new(e: &Semilattice) -> Self {
        let k = e.len();
        let mut m = Masks { below: vec![0; k], disjoint: vec![0; k], meets: vec![0; k], all: 0, zero: 1 << e.zero() };
        for x in 0..k {
            m.all |= 1 << x;
            for f in 0..k {
                if e.leq(f, x) {
                    m.below[x] |= 1 << f;
                }
                if e.meet(f, x) == e.zero() {
                    m.disjoint[x] |= 1 << f;
                } else {
                    m.meets[x] |= 1 << f;
                }
            }
        }
        m
    }

    fn e_xy(&self, x: u64, y: u64) -> u64 {
        let mut out = self.all;
        for b in bits(x) {
            out &= self.below[b];
        }
        for b in bits(y) {
            out &= self.disjoint[b];
        }
        out
    }

    fn covers(&self, z: u64, d: u64) -> bool {
        bits(d & !self.zero).all(|x| self.meets[x] & z != 0)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Every submask of `m`, including 0 and `m`.
fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// The literal criterion: for all `X ⊆ ξ`, `Y ⊆ E∖ξ` and every cover `Z` of
/// `E^{X,Y}` with `Z ⊆ E^{X,Y}`, `Z` meets `ξ`.
pub fn is_tight_literal(e: &Semilattice, xi: Filter) -> Result<bool, SpectrumError> {
    if e.len() > LITERAL_LIMIT {
        return Err(SpectrumError::TooLarge(e.len(), LITERAL_LIMIT));
    }
    let masks = Masks::new(e);
    let inside = xi.mask(e);
    let outside = masks.all & !inside;
    for x in submasks(inside) {
        for y in submasks(outside) {
            let exy = masks.e_xy(x, y);
            for z in submasks(exy & outside) {
                if masks.covers(z, exy) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The criterion with `X = {min ξ}` only; for each `Y` a violating cover
/// exists iff the largest candidate `E^{X,Y} ∖ ξ` is a cover.
pub fn is_tight_reduced(e: &Semilattice, xi: Filter) -> Result<bool, SpectrumError> {
    let outside_count = e.len() - xi.elements(e).len();
    if e.len() > 64 || outside_count > REDUCED_LIMIT {
        return Err(SpectrumError::TooLarge(outside_count, REDUCED_LIMIT));
    }
    let masks = Masks::new(e);
    let inside = xi.mask(e);
    let outside = masks.all & !inside;
    let x = 1 << xi.minimum;
    for y in submasks(outside) {
        let exy = masks.e_xy(x, y);
        if masks.covers(exy & outside, exy) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessCensus {
    pub filters: usize,
    pub ultrafilters: usize,
    pub tight: Vec<Filter>,
    /// Whether the literal brute force was run (small semilattices only).
    pub literal_checked: bool,
    pub reduced_checked: bool,
}

/// Runs every applicable tightness oracle on every filter and fails on any
/// disagreement.
pub fn tightness_census(e: &Semilattice) -> Result<TightnessCensus, SpectrumError> {
    let filters = enumerate_filters(e);
    let mut tight = Vec::new();
    let mut literal_checked = e.len() <= LITERAL_LIMIT;
    let mut reduced_checked = true;
    for &xi in &filters {
        let u = is_tight(e, xi);
        if literal_checked {
            let x = is_tight_literal(e, xi)?;
            if x != u {
                return Err(SpectrumError::OracleDisagreement {
                    filter: xi.minimum,
                    detail: format!("ultrafilter {u}, literal {x}"),
                });
            }
        }
        match is_tight_reduced(e, xi) {
            Ok(r) if r != u => {
                return Err(SpectrumError::OracleDisagreement {
                    filter: xi.minimum,
                    detail: format!("ultrafilter {u}, reduced {r}"),
                })
            }
            Ok(_) => {}
            Err(_) => reduced_checked = false,
        }
        if u {
            tight.push(xi);
        }
    }
    if filters.is_empty() {
        literal_checked = true;
    }
    Ok(TightnessCensus { filters: filters.len(), ultrafilters: ultrafilters(e).len(), tight, literal_checked, reduced_checked })
}

/// A relation `⋃ F = X` among the sets of the semilattice (`F` nonempty,
/// all of `F` nonzero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionRelation {
    pub parts: Vec<usize>,
    pub whole: usize,
}

/// Every union relation, by enumerating subsets of the nonzero idempotents.
pub fn union_relations(e: &Semilattice) -> Result<Vec<UnionRelation>, SpectrumError> {
    let nz: Vec<usize> = e.nonzero().collect();
    if nz.len() > 16 {
        return Err(SpectrumError::TooLarge(e.len(), 17));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << nz.len()) {
        let parts: Vec<usize> = (0..nz.len()).filter(|i| mask & (1 << i) != 0).map(|i| nz[i]).collect();
        let union: BTreeSet<usize> = parts.iter().flat_map(|&p| e.set(p).iter().copied()).collect();
        if let Some(whole) = e.index_of(&union) {
            out.push(UnionRelation { parts, whole });
        }
    }
    Ok(out)
}

/// Prime relative to the given union relations: `⋃F ∈ ξ ⇒ F ∩ ξ ≠ ∅`.
pub fn is_prime(e: &Semilattice, xi: Filter, joins: &[UnionRelation]) -> bool {
    joins
        .iter()
        .all(|j| !xi.contains(e, j.whole) || j.parts.iter().any(|&p| xi.contains(e, p)))
}

/// Prime relative to all union relations, without enumerating them: fails
/// iff some `c ∈ ξ` is the union of the members of `E ∖ ξ` below it.
pub fn is_prime_by_unions(e: &Semilattice, xi: Filter) -> bool {
    xi.elements(e).into_iter().all(|c| {
        let under: BTreeSet<usize> = e
            .nonzero()
            .filter(|&f| !xi.contains(e, f) && e.leq(f, c))
            .flat_map(|f| e.set(f).iter().copied())
            .collect();
        &under != e.set(c)
    })
}

/// `θ_s(ξ)`, the filter generated by `{s e s* : e ∈ ξ}`.
pub fn act(s: &InverseSemigroup, i: usize, xi: Filter) -> Result<Filter, SpectrumError> {
    let e = s.semilattice();
    if !xi.contains(e, s.source_idempotent(i)) {
        return Err(SpectrumError::OutsideDomain(i));
    }
    Ok(Filter { minimum: s.conjugate(i, xi.minimum) })
}

/// `θ_s(ξ)` computed as the upward closure of the full image set.
pub fn act_literal(s: &InverseSemigroup, i: usize, xi: Filter) -> Result<Filter, SpectrumError> {
    let e = s.semilattice();
    if !xi.contains(e, s.source_idempotent(i)) {
        return Err(SpectrumError::OutsideDomain(i));
    }
    let image: BTreeSet<usize> = xi.elements(e).into_iter().map(|f| s.conjugate(i, f)).collect();
    let closed: BTreeSet<usize> = image.iter().flat_map(|&x| e.up(x)).collect();
    Filter::from_elements(e, &closed)
}

/// Tight filters in the domain `D_{s*s}`.
pub fn in_domain(s: &InverseSemigroup, i: usize, tight: &[Filter]) -> Vec<Filter> {
    let src = s.source_idempotent(i);
    tight.iter().copied().filter(|xi| xi.contains(s.semilattice(), src)).collect()
}

/// `θ_s(ξ) = ξ` for every tight `ξ ∈ D_{s*s}`.
pub fn fixes_domain(s: &InverseSemigroup, i: usize, tight: &[Filter]) -> bool {
    in_domain(s, i, tight).into_iter().all(|xi| act(s, i, xi) == Ok(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::{Hull, DEFAULT_CAP};

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn fixture_a() -> (Hull, [usize; 3]) {
        let h = Hull::generate(&fixtures::fixture_a(), DEFAULT_CAP).unwrap();
        let e = h.semigroup().semilattice();
        let ids = [set(&[0, 2]), set(&[1]), set(&[2])].map(|s| e.index_of(&s).unwrap());
        (h, ids)
    }

    #[test]
    fn filters_of_fixture_a() {
        let (h, [v, w, ee]) = fixture_a();
        let e = h.semigroup().semilattice();
        assert_eq!(enumerate_filters(e).len(), 3);
        let ultra: BTreeSet<usize> = ultrafilters(e).iter().map(Filter::minimum).collect();
        assert_eq!(ultra, BTreeSet::from([w, ee]));
        let fv = Filter::principal(e, v).unwrap();
        assert!(!is_tight(e, fv));
        assert!(!is_tight_literal(e, fv).unwrap());
        assert!(!is_tight_reduced(e, fv).unwrap());
        let fe = Filter::principal(e, ee).unwrap();
        assert!(is_tight(e, fe) && is_tight_literal(e, fe).unwrap() && is_tight_reduced(e, fe).unwrap());
        let census = tightness_census(e).unwrap();
        assert_eq!(census.tight.len(), 2);
        assert!(census.literal_checked);
    }

    #[test]
    fn zero_filter_is_rejected() {
        let e = Semilattice::from_sets([]).unwrap();
        assert!(enumerate_filters(&e).is_empty());
        assert_eq!(Filter::principal(&e, 0), Err(SpectrumError::ZeroFilter));
    }

    #[test]
    fn chain_ultrafilter() {
        let e = Semilattice::from_sets([set(&[0]), set(&[0, 1])]).unwrap();
        assert_eq!(ultrafilters(&e), vec![Filter::principal(&e, 1).unwrap()]);
    }

    #[test]
    fn cover_examples() {
        let (h, [v, _, ee]) = fixture_a();
        let e = h.semigroup().semilattice();
        assert!(is_cover(e, &[v, ee], &[v, ee]).unwrap());
        assert!(is_cover(e, &[ee], &[v, ee]).unwrap());
        assert!(!is_cover(e, &[], &[v]).unwrap());
        assert_eq!(is_cover(e, &[v], &[ee]), Err(SpectrumError::NotSubset));
    }

    #[test]
    fn primeness() {
        let (h, [v, _, ee]) = fixture_a();
        let e = h.semigroup().semilattice();
        let joins = union_relations(e).unwrap();
        for m in [v, ee] {
            let xi = Filter::principal(e, m).unwrap();
            assert!(is_prime(e, xi, &joins));
            assert_eq!(is_prime(e, xi, &joins), is_prime_by_unions(e, xi));
        }
        let b = Hull::generate(&fixtures::fixture_b(), DEFAULT_CAP).unwrap();
        let eb = b.semigroup().semilattice();
        assert!(is_prime(eb, Filter::principal(eb, 1).unwrap(), &union_relations(eb).unwrap()));
    }

    #[test]
    fn chain_top_is_prime_but_not_tight() {
        let e = Semilattice::from_sets([set(&[0]), set(&[0, 1])]).unwrap();
        let top = Filter::principal(&e, 2).unwrap();
        assert!(is_prime(&e, top, &union_relations(&e).unwrap()));
        assert!(!is_tight(&e, top));
    }

    #[test]
    fn actions() {
        let (h, [_, w, ee]) = fixture_a();
        let s = h.semigroup();
        let e = s.semilattice();
        let gen_e = h.generator(2);
        let xw = Filter::principal(e, w).unwrap();
        assert_eq!(act(s, gen_e, xw).unwrap(), Filter::principal(e, ee).unwrap());
        assert_eq!(act_literal(s, gen_e, xw).unwrap(), Filter::principal(e, ee).unwrap());
        let xe = Filter::principal(e, ee).unwrap();
        assert_eq!(act(s, gen_e, xe), Err(SpectrumError::OutsideDomain(gen_e)));
        let id_v = h.generator(0);
        assert_eq!(act(s, id_v, xe).unwrap(), xe);
        let tight = tightness_census(e).unwrap().tight;
        assert!(!fixes_domain(s, gen_e, &tight));
        for &i in s.idempotents() {
            assert!(fixes_domain(s, i, &tight));
        }
        let b = Hull::generate(&fixtures::fixture_b(), DEFAULT_CAP).unwrap();
        let tb = tightness_census(b.semigroup().semilattice()).unwrap().tight;
        assert_eq!(act(b.semigroup(), b.generator(1), tb[0]).unwrap(), tb[0]);
        assert!(fixes_domain(b.semigroup(), b.generator(1), &tb));
    }

    #[test]
    fn action_laws_on_fixtures() {
        for (_, cat) in fixtures::all() {
            let h = Hull::generate(&cat, DEFAULT_CAP).unwrap();
            let s = h.semigroup();
            let filters = enumerate_filters(s.semilattice());
            for i in 0..s.len() {
                for &xi in &filters {
                    let Ok(y) = act(s, i, xi) else { continue };
                    assert_eq!(act_literal(s, i, xi).unwrap(), y);
                    assert_eq!(act(s, s.inverse(i), y).unwrap(), xi);
                    for j in 0..s.len() {
                        if let Ok(z) = act(s, j, y) {
                            assert_eq!(act(s, s.product(j, i), xi).unwrap(), z);
                        }
                    }
                }
            }
        }
    }
}
