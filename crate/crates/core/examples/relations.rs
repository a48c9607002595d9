//! Exact checks of the operator relations on a graph with two edges into v.

use zigzag::cstar::verify_relations;
use zigzag::input::parse_str;
use zigzag::model::{Model, PipelineOptions};

const GRAPH: &str = include_str!("../data/two_edges.toml");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = parse_str(GRAPH)?.finite()?;
    let model = Model::build(&cat, &PipelineOptions::default())?;
    let report = verify_relations(&model.hull, &model.tight);
    for c in &report.checks {
        let status = if !c.applicable { "n/a" } else if c.failures.is_empty() { "ok" } else { "FAIL" };
        println!("{:<24} {:>4} checked  {status}", c.name, c.checked);
    }
    let sum = model.t(model.hull.ideal_projection(cat.id_of("e")?)).add(&model.t(model.hull.ideal_projection(cat.id_of("f")?)));
    assert_eq!(sum, model.t(model.hull.generator(cat.id_of("v")?)));
    println!("T_e T_e* + T_f T_f* = T_v");
    Ok(())
}
