//! Which subalgebras detect ideals, for ℤ/2 and for the graph v <- w.

use zigzag::fixtures;
use zigzag::model::{Model, PipelineOptions, Subalgebra};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = PipelineOptions::default();
    for (name, cat) in [("Z/2", fixtures::fixture_b()), ("v <- w", fixtures::fixture_a())] {
        let model = Model::build(&cat, &opts)?;
        println!("{name}: dim C*_r(G) = {}, minimal ideals = {}", model.algebra()?.dimension(), model.blocks()?.len());
        for sub in [Subalgebra::Diagonal, Subalgebra::Siso, Subalgebra::Core, Subalgebra::SisoCore] {
            let v = model.detect(sub)?;
            let d = &v.detection;
            println!(
                "  {sub:<10} dim {:>2}  detects {:<5} certificate {:?}  stable {}",
                d.subalgebra_dimension, d.detects, d.certificate, d.stable
            );
        }
    }
    Ok(())
}
