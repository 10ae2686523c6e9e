//! Sums, products and transposes stay finite; zero tests come with a witness.

use recmat::catalog::preset;

fn main() -> recmat::Result<()> {
    let (l, d) = (preset("L_P")?, preset("D_P")?);
    let p = preset("P")?;
    let ldlt = l.mul(&d)?.mul(&l.transpose())?;
    println!("L_P D_P L_P^t: dim {} before, {} after minimize", ldlt.dim(), ldlt.minimize().dim());
    println!("equals P: {}", ldlt.equal(&p)?);

    let z = preset("Z")?;
    match z.sub(&p)?.is_zero().witness {
        Some(w) => println!("Z - P is nonzero at level {}, entry ({}, {}) = {}", w.level, w.row, w.col, w.value),
        None => println!("Z = P"),
    }
    for name in ["P", "Z", "J", "L_J", "D_J"] {
        println!("complexity {name}: {}", preset(name)?.complexity());
    }
    Ok(())
}
