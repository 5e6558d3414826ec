//! Regular basis of Int(Z) up to degree 8 and its factorial denominators.

use intstar::exactalg::rat::common_denominator;
use intstar::intpoly::{graded_basis, DomainHandle};

fn main() -> intstar::Result<()> {
    let b = graded_basis(&DomainHandle::Integers, 8)?;
    for (k, g) in b.generators().enumerate() {
        let den = common_denominator(g.as_rational()?);
        println!("degree {k}: denominator {den:>6}  {g}");
    }
    Ok(())
}
