//! Closed-form determinants against the diagonal walker and a dense check.

use recmat::binom::{det_formula, DetKind};
use recmat::catalog::preset;
use recmat::recmat::DiagonalWalker;

fn main() -> recmat::Result<()> {
    for (kind, d) in [
        (DetKind::Mod2, "D_P"),
        (DetKind::Valuation, "D_V"),
        (DetKind::Beeblebrox, "D_Z"),
        (DetKind::Jacobi, "D_J"),
    ] {
        let walker = DiagonalWalker::new(&preset(d)?)?;
        for n in [5u64, 16, 64] {
            println!("{kind} n={n}: {}", walker.prefix_product(n)?);
        }
        println!("{kind} n=5 formula: {}", det_formula(kind, 5)?);
    }
    let z = preset("Z")?.materialize(3);
    println!("dense det of the 8x8 Z window: {}", z.det()?);
    Ok(())
}
