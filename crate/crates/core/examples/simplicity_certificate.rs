//! Certifies that PSL(2, q) is simple through normal closures in SL(2, q),
//! and compares with the permutation-group test.

use psl2kit::psl2::{certify_simplicity, psl2_perm_group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [4, 5, 7, 8, 9] {
        let cert = certify_simplicity(q)?;
        let brute = psl2_perm_group(q)?.is_simple()?;
        println!(
            "q = {q}: |SL| = {}, {} non-scalar classes, certified {}, recheck {}, brute force {}",
            cert.sl2_order,
            cert.classes.len(),
            cert.verdict,
            cert.reverify(),
            brute
        );
    }
    let first = &certify_simplicity(5)?.classes[0];
    println!("q = 5, first class: {}", serde_json::to_string(first)?);
    Ok(())
}
