//! Print the first windows of a few catalog elements and some far entries.

use recmat::catalog::preset;

fn main() -> recmat::Result<()> {
    for name in ["P", "Z", "J"] {
        let a = preset(name)?;
        println!("{name} (dim {}), level 3:\n{}", a.dim(), a.materialize(3));
    }
    let p = preset("P")?;
    let n = 1u64 << 50;
    println!("P(2^50, 2^50 - 1) = {}", p.entry(51, n, n - 1)?);
    println!("P(2^50, 2^50)     = {}", p.entry(51, n, n)?);
    Ok(())
}
