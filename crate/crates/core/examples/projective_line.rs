//! Points of Z/7 ∪ {∞} and the maps that generate PSL(2, 7).

use psl2kit::projline::ProjLine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let line = ProjLine::prime(7)?;
    let f = line.field();
    let t = line.translation(f.one());
    let s = line.scaling(f.from_int(2))?;
    let inv = line.negative_reciprocal();
    println!("z -> z + 1  : {t}");
    println!("z -> 2z     : {s}");
    println!("z -> -1/z   : {inv}");

    let composite = inv.compose(&t)?;
    println!(
        "(-1/z) after (z + 1): {composite}, order {}",
        composite.order()
    );
    println!("fixed points of z -> 2z: {:?}", s.fixed_points());
    Ok(())
}
