//! Finds every group of order (p³ - p)/2 on Z/p ∪ {∞} containing the
//! translations.

use psl2kit::search::{constrained_search, full_search};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let full = full_search(7)?;
    println!(
        "full search p = 7: {} candidates, {} groups in {:.2?}",
        full.candidates,
        full.groups.len(),
        full.elapsed
    );
    for g in &full.groups {
        println!(
            "  {} verdict {} λ = {}",
            g.element_hash,
            g.verdict.as_str(),
            g.lambda
        );
    }
    for p in [5, 11, 13] {
        let out = constrained_search(p)?;
        println!("constrained search p = {p}: {} groups", out.groups.len());
    }
    Ok(())
}
