//! Documents of each kind, their expansions, and a round trip through TOML.

use zigzag::input::{parse_str, InputSpec, Resolved};

const MONOID: &str = r#"
format = "lcsc/1"
kind = "monoid"
elements = ["1", "g", "g2"]
identity = "1"
table = [["1", "g", "g2"], ["g", "g2", "1"], ["g2", "1", "g"]]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [
        ("graph", include_str!("../data/fixture_a.toml")),
        ("monoid", MONOID),
        ("kgraph", include_str!("../data/fixture_c.toml")),
        ("loop", include_str!("../data/loop.toml")),
    ] {
        let spec = parse_str(text)?;
        match spec.resolve()? {
            Resolved::Finite(cat) => {
                println!("{name}: {} morphisms {:?}", cat.len(), cat.names());
                let explicit = InputSpec::from_category(&cat);
                assert_eq!(parse_str(&explicit.to_toml())?.finite()?, cat);
            }
            Resolved::Bounded(paths) => println!("{name}: {} paths up to length {}", paths.paths().len(), paths.depth()),
        }
    }
    match parse_str("format = \"lcsc/1\"\nkind = [\n") {
        Err(e) => println!("bad document: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
