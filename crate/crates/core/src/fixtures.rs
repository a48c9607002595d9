//! Hand-built reference categories.
//!
//! * `a`: the graph `v <-e- w` (ids `v=0, w=1, e=2`).
//! * `b`: the group ℤ/2 as a one-object category (ids `1=0, g=1`).
//! * `c`: the 2-graph commuting square with `a·c = b·d'`
//!   (ids `A..D = 0..3`, `a=4, b=5, c=6, d'=7`, diagonal `m=8`).

use crate::category::{Lcsc, LcscBuilder};

pub fn fixture_a() -> Lcsc {
    let mut b = LcscBuilder::new();
    let v = b.object("v");
    let w = b.object("w");
    let e = b.morphism("e", v, w);
    b.compose(v, e, e).compose(e, w, e).fill_units();
    b.build().expect("fixture a")
}

pub fn fixture_b() -> Lcsc {
    cyclic_group(2)
}

/// ℤ/n as a one-object category; id `k` is the residue `k`.
pub fn cyclic_group(n: usize) -> Lcsc {
    let mut b = LcscBuilder::new();
    let one = b.object("1");
    for k in 1..n {
        b.morphism(if n == 2 { "g".to_string() } else { format!("g{k}") }, one, one);
    }
    for x in 0..n {
        for y in 0..n {
            b.compose(x, y, (x + y) % n);
        }
    }
    b.build().expect("cyclic group")
}

fn square(identify: bool) -> Lcsc {
    let mut bld = LcscBuilder::new();
    let [va, vb, vc, vd] = ["A", "B", "C", "D"].map(|n| bld.object(n));
    let a = bld.morphism("a", va, vb);
    let b = bld.morphism("b", va, vc);
    let c = bld.morphism("c", vb, vd);
    let d = bld.morphism("d'", vc, vd);
    let m = bld.morphism(if identify { "a.c" } else { "ac" }, va, vd);
    let m2 = if identify { m } else { bld.morphism("bd'", va, vd) };
    bld.compose(a, c, m).compose(b, d, m2).fill_units();
    for x in [va, vb, vc, vd] {
        bld.degree(x, vec![0, 0]);
    }
    bld.degree(a, vec![1, 0]).degree(d, vec![1, 0]);
    bld.degree(b, vec![0, 1]).degree(c, vec![0, 1]);
    bld.degree(m, vec![1, 1]).degree(m2, vec![1, 1]);
    bld.build().expect("square")
}

pub fn fixture_c() -> Lcsc {
    square(true)
}

/// The square without its factorization relation: `ac ≠ bd'`.
pub fn fixture_c_without_square() -> Lcsc {
    square(false)
}

/// The one-object trivial category `{x}`.
pub fn trivial() -> Lcsc {
    let mut b = LcscBuilder::new();
    let x = b.object("x");
    b.compose(x, x, x);
    b.build().expect("trivial")
}

/// All reference categories with their names.
pub fn all() -> Vec<(&'static str, Lcsc)> {
    vec![
        ("fixture_a", fixture_a()),
        ("fixture_b", fixture_b()),
        ("fixture_c", fixture_c()),
        ("trivial", trivial()),
    ]
}
