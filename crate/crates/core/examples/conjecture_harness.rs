//! Premise check and certificate ladder for the three built-in series domains,
//! appending the evidence to a json-lines ledger.

use intstar::conjharness::{check_monotone, run_ladder, verify_chain, DomainId, EvidenceLedger, RunOptions, DEFAULT_LADDER};

fn main() -> intstar::Result<()> {
    let path = std::env::temp_dir().join("intstar-evidence.jsonl");
    let ledger = EvidenceLedger::new(&path);
    for id in [DomainId::F2Dvr, DomainId::F2Semi23, DomainId::F2Tf4] {
        if id != DomainId::F2Dvr {
            let chain = verify_chain(id, 16)?;
            for item in &chain.items {
                println!("{id}: {}: {}", item.name, item.verdict);
            }
        }
        let recs = run_ladder(id, "X^2 + X", &DEFAULT_LADDER, RunOptions::default())?;
        for r in &recs {
            let outcome = r.outcome.map_or_else(|| r.verdict.to_string(), |o| format!("{o:?}"));
            println!("{id} {:?} (d = {}, p = {}): {outcome}", r.statement, r.degree, r.precision);
            if let Some(c) = &r.certificate {
                println!("  {c}");
            }
        }
        assert!(check_monotone(&recs).is_empty());
        ledger.append(&recs)?;
    }
    println!("ledger: {} records in {}", ledger.load()?.len(), path.display());
    Ok(())
}
