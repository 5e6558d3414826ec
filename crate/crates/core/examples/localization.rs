//! Localization and interchange checks for Int(Z) at bounded degree.

use intstar::intpoly::{interchange_check, localization_check, DomainHandle, MultSet};

fn main() -> intstar::Result<()> {
    let z = DomainHandle::Integers;
    for p in [2, 3, 5, 7] {
        println!("S = Z \\ ({p}), d = 6: {}", localization_check(&z, MultSet::PrimeComplement(p), 6)?);
    }
    for (p, q) in [(2, 3), (3, 2), (5, 7)] {
        println!("p = {p}, q = {q}, d = 5: {}", interchange_check(&z, p, q, 5)?);
    }
    Ok(())
}
