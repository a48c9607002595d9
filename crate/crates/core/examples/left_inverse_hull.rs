//! The left inverse hull of the graph v <- w, element by element.

use zigzag::fixtures;
use zigzag::hull::{Hull, DEFAULT_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = fixtures::fixture_a();
    let hull = Hull::generate(&cat, DEFAULT_CAP)?;
    let s = hull.semigroup();
    println!("|S| = {}, idempotents = {}", s.len(), s.idempotents().len());
    for i in 0..s.len() {
        let pieces: Vec<String> =
            hull.decompose_index(i).iter().map(|&(a, b)| format!("{}·{}*", cat.name(a), cat.name(b))).collect();
        let label = if pieces.is_empty() { "0".to_string() } else { pieces.join(" ∪ ") };
        println!("  {i}: {label:<16} {:?}", s.element(i));
    }
    let e = cat.id_of("e")?;
    let w = cat.id_of("w")?;
    // e*·e = w as a partial bijection.
    let prod = s.product(s.inverse(hull.generator(e)), hull.generator(e));
    assert_eq!(prod, hull.generator(w));
    println!("e*e = Id_wΛ");
    Ok(())
}
