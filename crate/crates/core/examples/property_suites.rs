//! Every named property suite with a fixed seed.

use intstar::cli::{run_suite, SuiteName};

fn main() -> intstar::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    for name in [SuiteName::Star, SuiteName::Tinv, SuiteName::Diagram, SuiteName::Mpalpha, SuiteName::Soundness] {
        let r = run_suite(name, seed, 100)?;
        println!("{name:?}: {} cases, {} unknown, {} violations", r.cases, r.unknown, r.violations.len());
        for v in &r.violations {
            println!("  {v}");
        }
    }
    Ok(())
}
