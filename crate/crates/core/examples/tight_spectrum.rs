//! Filters, ultrafilters and tight filters of a semilattice, with the three
//! tightness tests side by side.

use std::collections::BTreeSet;

use zigzag::semilattice::Semilattice;
use zigzag::spectrum::{enumerate_filters, is_tight, is_tight_literal, is_tight_reduced, is_ultrafilter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // {1,2} with the two halves below it, plus the chain {3} < {3,4}.
    let sets = [vec![1, 2], vec![1], vec![2], vec![3], vec![3, 4]];
    let e = Semilattice::from_sets(sets.iter().map(|s| s.iter().copied().collect::<BTreeSet<usize>>()))?;
    println!("{:<10} {:>6} {:>6} {:>8} {:>8}", "minimum", "ultra", "tight", "literal", "reduced");
    for xi in enumerate_filters(&e) {
        println!(
            "{:<10} {:>6} {:>6} {:>8} {:>8}",
            format!("{:?}", e.set(xi.minimum())),
            is_ultrafilter(&e, xi),
            is_tight(&e, xi),
            is_tight_literal(&e, xi)?,
            is_tight_reduced(&e, xi)?,
        );
    }
    Ok(())
}
