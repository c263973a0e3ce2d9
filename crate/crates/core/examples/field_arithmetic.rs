//! Arithmetic in GF(7) and GF(8), and the square classes mod 13.

use psl2kit::field::{gf8_labeling, quadratic_classes, Field, Gf8Cubic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f7 = Field::prime(7)?;
    let three = f7.from_int(3);
    println!("GF(7): 3^-1 = {}", f7.inv(three)?.index());
    println!("GF(7): primitive element = {}", f7.generator().index());

    let labeling = gf8_labeling(Gf8Cubic::XCubedPlusXPlusOne);
    let f8 = labeling.field();
    let z = labeling.zeta();
    for e in [1, 2, 4] {
        let lhs = f8.add(f8.one(), f8.pow(z, e)?);
        println!("GF(8): 1 + ζ^{e} = ζ^{}", f8.log(lhs).unwrap());
    }

    let classes = quadratic_classes(13)?;
    println!("squares mod 13: {:?}", classes.residues);
    println!("-1 is a square mod 13: {}", classes.minus_one_is_square());
    Ok(())
}
