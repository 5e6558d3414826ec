//! Products of binomials as a basis of two-variable integer-valued polynomials.

use intstar::intpoly::theta_check_bivariate;

fn main() -> intstar::Result<()> {
    for d in 0..=4 {
        let r = theta_check_bivariate(d)?;
        println!("bidegree ({d}, {d}): {} products, {}", r.products, r.verdict);
        for w in &r.primes {
            println!("  p = {}: modulus {}, index exponent {}", w.prime, w.modulus, w.index_exponent);
        }
    }
    Ok(())
}
