//! A 2-graph read from a document: cycline pairs and their subalgebra.

use zigzag::input::parse_str;
use zigzag::model::{Model, PipelineOptions, Subalgebra};

const SQUARE: &str = include_str!("../data/fixture_c.toml");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = parse_str(SQUARE)?.finite()?;
    println!("{} morphisms, degree map valid: {}", cat.len(), cat.validate_degree()?.passed);
    let model = Model::build(&cat, &PipelineOptions::default())?;
    let pairs = model.cycline.as_ref().expect("2-graph has a degree map");
    let shown: Vec<String> = pairs.iter().map(|&(a, b)| format!("({}, {})", cat.name(a), cat.name(b))).collect();
    println!("cycline pairs: {}", shown.join(" "));
    let v = model.detect(Subalgebra::Cycline)?;
    println!("cycline subalgebra: dim {} of {}, detects ideals: {}", v.detection.subalgebra_dimension, v.detection.algebra_dimension, v.detection.detects);
    Ok(())
}
