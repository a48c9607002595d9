//! Build a small category by hand and check the axioms.

use zigzag::category::{Axiom, LcscBuilder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two arrows e, f : w -> v.
    let mut b = LcscBuilder::new();
    let v = b.object("v");
    let w = b.object("w");
    let e = b.morphism("e", v, w);
    let f = b.morphism("f", v, w);
    b.fill_units();
    let cat = b.build()?;
    let report = cat.validate(true);
    println!("{} morphisms, axioms hold: {}", cat.len(), report.passed);
    println!("eΛ ∩ fΛ = {:?}", cat.ideal_meet(e, f)?);
    println!("{{e, f}} exhaustive at v: {}", cat.is_exhaustive(&[e, f], v)?);
    println!("core: {:?}", cat.core().iter().map(|&a| cat.name(a)).collect::<Vec<_>>());

    // Break left cancellation: a loop g at v with g·g = g.
    let mut b = LcscBuilder::new();
    let v = b.object("v");
    let g = b.morphism("g", v, v);
    b.compose(g, g, g).fill_units();
    let bad = b.build()?.validate(true);
    if let Some(fail) = bad.failure(Axiom::LeftCancellation) {
        println!("rejected: {}", fail.detail);
    }
    Ok(())
}
