//! The two groups of order 168 at p = 7 that do not contain z -> -1/z.

use psl2kit::field::{gf8_labeling, Gf8Cubic};
use psl2kit::group::PermGroup;
use psl2kit::verifier::{build_exceptional, classify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cubics = [
        (3, Gf8Cubic::XCubedPlusXPlusOne),
        (5, Gf8Cubic::XCubedPlusXSquaredPlusOne),
    ];
    for (c, cubic) in cubics {
        let g = build_exceptional(c)?;
        let result = classify(&g, 7)?;
        println!(
            "c = {c}: order {}, verdict {}",
            g.order(),
            result.report.verdict.as_str()
        );
        println!("  λ = {}", result.report.witness);
        for x in &result.dichotomy.normal_subgroup {
            println!("  normal subgroup generator {x}");
        }
        let transported = PermGroup::new(gf8_labeling(cubic).semilinear_affine_generators())?;
        println!(
            "  equals the semilinear affine group of GF(8): {}",
            transported.same_elements(&g)
        );
    }
    Ok(())
}
