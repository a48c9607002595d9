//! The lemma suites over the fixtures and a batch of random instances.

use zigzag::lemmas::verify_random;
use zigzag::model::PipelineOptions;
use zigzag::random::DEFAULT_SEED;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    let report = verify_random(n, DEFAULT_SEED, &PipelineOptions::default())?;
    println!("{} instances, seed {:#x}", report.instances.len(), DEFAULT_SEED);
    for c in &report.checks {
        println!("{:<28} {:>4} instances {:>7} checks {:>3} failures", c.name, c.instances, c.checked, c.failure_count);
        for f in &c.failures {
            println!("    {f}");
        }
    }
    println!("all passed: {}", report.passed);
    Ok(())
}
