//! v- and t-closures, inverses and conductor ideals in a series ring and a quadratic order.

use intstar::exactalg::{TruncSeries, EXACT};
use intstar::intpoly::parse::parse_lat_ideal;
use intstar::latorder::{lat_conductor, QuadOrder};
use intstar::psring::{conductor_ideal, is_t_maximal_local, FracIdeal, RingElement, SemigroupRingSpec};
use std::sync::Arc;

fn main() -> intstar::Result<()> {
    let spec = Arc::new(SemigroupRingSpec::f2_semi23());
    let f = spec.field().clone();
    let t = |k| TruncSeries::monomial(&f, f.one(), k, EXACT);
    let m = FracIdeal::from_generators(&spec, &[t(2), t(3)])?;
    println!("M = {}", m.describe());
    println!("M^-1 = {}", m.inverse()?.describe());
    println!("M_v = {}", m.v_closure()?.describe());
    let c = conductor_ideal(&RingElement::new(&spec, t(2))?, &RingElement::new(&spec, t(3))?)?;
    println!("(T^2 D :_D T^3 D) = {}", c.describe());
    let (v, prof) = is_t_maximal_local(&spec)?;
    println!("M t-maximal: {v}, generators: {}", prof.generator_count);

    let o = QuadOrder::sqrt(-3)?;
    let p = parse_lat_ideal(o, "(2, 1 + w)")?;
    println!("in {o}: P = {p}, P^-1 = {}, P_t = {}", p.inverse()?, p.t_closure()?);
    println!("P P^-1 = {}", p.mul(&p.inverse()?)?);
    let [a, b] = p.basis();
    println!("(({a}) :_D ({b})) = {}", lat_conductor(&a, &b)?);
    Ok(())
}
