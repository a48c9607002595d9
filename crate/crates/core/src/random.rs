//! Small random instances for the lemma suites, from a fixed seed.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Lcsc;
use crate::groupoid::FiniteGroupoid;
use crate::hull::InverseSemigroup;
use crate::paths::PathPresentation;
use crate::pbij::PartialBij;
use crate::semilattice::Semilattice;

pub const DEFAULT_SEED: u64 = 0x1ca5_c0de;

/// Semigroups larger than this are discarded and redrawn.
const SEMIGROUP_CAP: usize = 400;

#[derive(Debug, Clone)]
pub enum Instance {
    Category(Lcsc),
    Semigroup(InverseSemigroup),
    Semilattice(Semilattice),
}

#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub instance: Instance,
}

/// An acyclic graph on at most 4 vertices with at most 4 edges. Edges point
/// from higher to lower vertex ids.
pub fn dag(rng: &mut impl Rng) -> Lcsc {
    let nv = rng.random_range(1..=4usize);
    let ne = if nv == 1 { 0 } else { rng.random_range(0..=4usize) };
    let mut p = PathPresentation::new();
    let names: Vec<String> = (0..nv).map(|v| format!("v{v}")).collect();
    for v in &names {
        p.vertex(v).expect("fresh vertex");
    }
    for e in 0..ne {
        let s = rng.random_range(1..nv);
        let r = rng.random_range(0..s);
        p.edge(&format!("e{e}"), &names[r], &names[s], Vec::new()).expect("fresh edge");
    }
    p.to_category().expect("acyclic")
}

/// The product of two small acyclic graphs, a 2-graph.
pub fn two_graph(rng: &mut impl Rng) -> Lcsc {
    loop {
        let (a, b) = (dag(rng), dag(rng));
        if a.len() * b.len() <= 36 {
            return a.product(&b);
        }
    }
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// One of ℤ/1 … ℤ/4 and ℤ/2 × ℤ/2.
pub fn group_table(rng: &mut impl Rng) -> Vec<Vec<usize>> {
    match rng.random_range(0..5) {
        4 => klein_table(),
        k => cyclic_table(k + 1),
    }
}

/// A groupoid with at most 6 elements, as a disjoint union of pair
/// groupoids times groups.
pub fn groupoid(rng: &mut impl Rng) -> FiniteGroupoid {
    let mut parts = Vec::new();
    let mut size = 0;
    loop {
        let (n, group) = match rng.random_range(0..3) {
            0 => (2, cyclic_table(1)),
            1 => (1, cyclic_table(rng.random_range(1..=2))),
            _ => (1, group_table(rng)),
        };
        let part = FiniteGroupoid::pair_times_group(n, &group).expect("valid group");
        if size + part.len() > 6 {
            break;
        }
        size += part.len();
        parts.push(part);
        if rng.random_bool(0.5) {
            break;
        }
    }
    if parts.is_empty() {
        parts.push(FiniteGroupoid::pair_times_group(1, &cyclic_table(1)).unwrap());
    }
    FiniteGroupoid::disjoint_union(&parts).expect("disjoint union")
}

pub fn partial_bijection(rng: &mut impl Rng, n: usize) -> PartialBij {
    let mut targets: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        targets.swap(i, rng.random_range(0..=i));
    }
    let pairs = (0..n).filter(|_| rng.random_bool(0.7)).map(|x| (x, targets[x]));
    PartialBij::from_pairs(n, pairs.collect::<Vec<_>>()).expect("injective")
}

/// The inverse subsemigroup of `I(X)` generated by one to three random
/// partial bijections, `|X| ≤ 5`.
pub fn semigroup(rng: &mut impl Rng) -> InverseSemigroup {
    loop {
        let n = rng.random_range(1..=5);
        let k = rng.random_range(1..=3);
        let gens: Vec<PartialBij> = (0..k).map(|_| partial_bijection(rng, n)).collect();
        if let Ok(s) = InverseSemigroup::generate(n, &gens, SEMIGROUP_CAP) {
            return s;
        }
    }
}

/// A meet-closed family of subsets of `{0..5}` with at most 12 members
/// (including ∅).
pub fn semilattice(rng: &mut impl Rng) -> Semilattice {
    loop {
        let n = rng.random_range(1..=5);
        let k = rng.random_range(1..=5);
        let sets: Vec<BTreeSet<usize>> =
            (0..k).map(|_| (0..n).filter(|_| rng.random_bool(0.5)).collect()).collect();
        let e = Semilattice::closure(sets);
        if e.len() <= 12 {
            return e;
        }
    }
}

/// `n` instances cycling through graphs, 2-graphs, groups, groupoids,
/// partial bijection semigroups and semilattices.
pub fn instances(n: usize, seed: u64) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (kind, instance) = match i % 6 {
                0 => ("graph", Instance::Category(dag(&mut rng))),
                1 => ("2-graph", Instance::Category(two_graph(&mut rng))),
                2 => {
                    let g = FiniteGroupoid::pair_times_group(1, &group_table(&mut rng)).unwrap();
                    ("group", Instance::Category(g.to_category()))
                }
                3 => ("groupoid", Instance::Category(groupoid(&mut rng).to_category())),
                4 => ("semigroup", Instance::Semigroup(semigroup(&mut rng))),
                _ => ("semilattice", Instance::Semilattice(semilattice(&mut rng))),
            };
            Named { name: format!("random {kind} #{i}"), instance }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_deterministic_and_valid() {
        let a = instances(30, DEFAULT_SEED);
        let b = instances(30, DEFAULT_SEED);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            match (&x.instance, &y.instance) {
                (Instance::Category(c), Instance::Category(d)) => {
                    assert_eq!(c, d);
                    assert!(c.validate(true).passed, "{}", x.name);
                }
                (Instance::Semigroup(s), Instance::Semigroup(t)) => assert_eq!(s.elements(), t.elements()),
                (Instance::Semilattice(e), Instance::Semilattice(f)) => {
                    assert_eq!(e.sets(), f.sets());
                    assert!(e.len() <= 12);
                }
                _ => panic!("kinds differ"),
            }
        }
    }

    #[test]
    fn two_graphs_have_valid_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let c = two_graph(&mut rng);
            assert_eq!(c.rank(), Some(2));
            assert!(c.validate_degree().unwrap().passed);
        }
    }

    #[test]
    fn groupoids_are_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = groupoid(&mut rng);
            assert!(g.len() <= 6);
            assert!(g.check_axioms().is_empty());
        }
    }
}
