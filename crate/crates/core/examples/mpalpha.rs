//! Membership in the maximal ideals m_{p,α} of Int(Z) at p-adic points.

use intstar::intpoly::{mpalpha_member, DomainHandle, PadicAlgebraic};

fn main() -> intstar::Result<()> {
    let sqrt17 = PadicAlgebraic::hensel(2, &[-17, 0, 1], 1, 32)?;
    let i5 = PadicAlgebraic::hensel(5, &[1, 0, 1], 2, 32)?;
    let z = DomainHandle::Integers;
    for (p, alpha) in [(2, &sqrt17), (5, &i5)] {
        for poly in ["X", "X^2 - 17", "X^2 + 1", "C(X,2)", "1/2*(X^2 + X)"] {
            let f = z.parse_poly(poly)?;
            println!("{f} in m_({p}, {alpha}): {}", mpalpha_member(p, alpha, &f, 32)?);
        }
    }
    Ok(())
}
