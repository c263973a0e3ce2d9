//! Recovers the projective action of PSL(2, p) from conjugation on its
//! Sylow p-subgroups.

use psl2kit::verifier::corollary_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [5, 7, 11, 13] {
        let report = corollary_check(p)?;
        let check = report.check("corollary").expect("always present");
        println!(
            "p = {p}: {} Sylow subgroups, point -> label {}, verdict {}",
            check.witness["sylow_count"].as_str().unwrap_or("?"),
            check.witness["point_to_label"],
            report.verdict.as_str()
        );
    }
    Ok(())
}
