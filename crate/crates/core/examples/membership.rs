//! Deciding f ∈ Int(D) over Z, a localization of Z, a series ring and a quadratic order.

use intstar::intpoly::{int_member, DomainHandle, Target};

fn main() -> intstar::Result<()> {
    let cases = [
        ("Z", "C(X,4)", "D"),
        ("Z", "1/2*X^2", "D"),
        ("Z", "1/3*X^3 - 1/3*X", "D"),
        ("Z_(2)", "1/3*X^3 - 1/3*X", "D"),
        ("F2_SEMI23", "T^-2*(X^4 + X^2)", "D"),
        ("F2_SEMI23", "T^-1*(X^2 + X)", "D'"),
        ("Z[sqrt(-1)]", "1/2*(X^2 + X)", "D"),
    ];
    for (name, poly, target) in cases {
        let dom = DomainHandle::by_name(name)?;
        let f = dom.parse_poly(poly)?;
        let t = match (target, dom.series_spec()) {
            ("D'", Some(spec)) => Target::integral_closure(spec),
            _ => Target::Ring,
        };
        let v = int_member(&dom, &f, &t)?;
        println!("{f} in Int({dom}, {}): {v}", t.describe());
    }
    Ok(())
}
