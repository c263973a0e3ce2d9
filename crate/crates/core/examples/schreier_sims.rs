//! Order and membership through a stabilizer chain. Cycle notation writes
//! the last point as `inf`.

use psl2kit::group::PermGroup;
use psl2kit::projline::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 12;
    let cycle = Permutation::from_cycles(n, &[(0..n).collect()])?;
    let swap = Permutation::from_cycles(n, &[vec![0, 1]])?;
    let sym = PermGroup::new(vec![cycle, swap])?;
    println!("|S_{n}| = {}", sym.order());
    println!("base: {:?}", sym.base());
    println!("transversal sizes: {:?}", sym.transversal_sizes());

    let m = Permutation::parse_cycles(8, "(0 1 2 3 4 5 6)")?;
    let r = Permutation::parse_cycles(8, "(0 inf)(1 6)(2 3)(4 5)")?;
    let g = PermGroup::new(vec![m, r])?;
    let probe = Permutation::parse_cycles(8, "(0 inf)(1 3)(2 6)(4 5)")?;
    println!(
        "|<{}, {}>| = {}",
        g.generators()[0],
        g.generators()[1],
        g.order()
    );
    println!("contains {probe}: {}", g.contains(&probe));
    println!("doubly transitive: {}", g.is_doubly_transitive());
    Ok(())
}
