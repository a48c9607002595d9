//! Germs of the hull action on tight filters, for the group ℤ/3.

use zigzag::fixtures;
use zigzag::hull::{Hull, DEFAULT_CAP};
use zigzag::report::element_label;
use zigzag::spectrum::tightness_census;
use zigzag::tight::{compute_siso, isotropy_check, TightGroupoid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = fixtures::cyclic_group(3);
    let hull = Hull::generate(&cat, DEFAULT_CAP)?;
    let tight = tightness_census(hull.semigroup().semilattice())?.tight;
    let tg = TightGroupoid::build(hull.semigroup(), &tight)?;
    let g = tg.groupoid();
    println!("{} germs over {} unit(s)", g.len(), g.units().len());
    for k in 0..g.len() {
        let germ = tg.germ(k);
        let label = element_label(&hull, germ.element);
        println!("  [{label}, ξ{}] unit={} inverse={}", germ.filter, g.is_unit(k), g.inverse(k));
    }
    let siso = compute_siso(&hull, &tight)?;
    let report = isotropy_check(g, &tg.germs_of(&siso))?;
    println!("germs of S^Iso lie in the isotropy: {}, dense: {}", report.within_isotropy, report.dense);
    Ok(())
}
