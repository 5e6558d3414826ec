//! Predicate profiles of the small primes of Z[sqrt(-3)].

use intstar::latorder::{profile_primes, QuadOrder};

fn main() -> intstar::Result<()> {
    for prof in profile_primes(QuadOrder::sqrt(-3)?, 30)? {
        let row: Vec<String> = prof.rows().iter().map(|(k, v)| format!("{k}={}", v.outcome)).collect();
        println!("{:<16} {}", prof.prime, row.join(" "));
        for w in prof.diagram_violations() {
            println!("  violation: {w}");
        }
    }
    Ok(())
}
