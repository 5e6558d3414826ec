//! Writes the built-in domains as spec files into a directory.

use intstar::latorder::QuadOrder;
use intstar::psring::SemigroupRingSpec;
use std::path::PathBuf;

fn main() -> intstar::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "specs".into()));
    std::fs::create_dir_all(&dir)?;
    let series = [
        ("f2_semi23.spec", SemigroupRingSpec::f2_semi23()),
        ("f2_tf4.spec", SemigroupRingSpec::f2_tf4()),
        ("f2_dvr.spec", SemigroupRingSpec::f2_dvr()),
    ];
    for (name, spec) in series {
        std::fs::write(dir.join(name), spec.to_text())?;
        println!("wrote {}", dir.join(name).display());
    }
    for (name, m) in [("z_sqrt_m3.spec", -3), ("z_sqrt_m5.spec", -5), ("z_i.spec", -1)] {
        std::fs::write(dir.join(name), QuadOrder::sqrt(m)?.to_text())?;
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}
