//! Runs the full check chain on PSL(2, p) and prints the report.

use psl2kit::psl2::psl2_perm_group;
use psl2kit::verifier::classify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u32 = std::env::args().nth(1).map_or(Ok(11), |s| s.parse())?;
    let g = psl2_perm_group(p as u64)?;
    let result = classify(&g, p)?;
    print!("{}", result.report.render_text());
    if let Some(a) = result.analysis {
        println!("λ = {}, n = {}, c = {}", a.lambda, a.n, a.c);
    }
    Ok(())
}
