//! Infer LDL^t factors from data and certify them exactly.

use recmat::catalog::{preset, zprime};
use recmat::solve::{lu_decompose, tensor_ldlt, InferenceCaps};

fn main() -> recmat::Result<()> {
    let caps = InferenceCaps::default();
    for name in ["P", "V", "Z", "J"] {
        let lu = lu_decompose(&preset(name)?, true, caps)?;
        println!(
            "{name}: L dim {}, D dim {}, {}",
            lu.l.dim(),
            lu.second.dim(),
            lu.certificate
        );
    }
    let [zp, _, _] = zprime()?;
    let t = tensor_ldlt(&zp, caps)?;
    let prods = t.d.diag_prefix_products(8)?;
    let shown: Vec<String> = prods.iter().map(|x| x.to_string()).collect();
    println!("Z' leading minors: {}", shown.join(", "));
    Ok(())
}
