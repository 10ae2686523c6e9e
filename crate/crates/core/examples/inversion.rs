//! Inverses of the unitriangular factors, and a small bidiagonal family.

use recmat::catalog::{bidiagonal, inverse_pairs, order_of_two, root_of_order};
use recmat::solve::{invert, InferenceCaps};

fn main() -> recmat::Result<()> {
    let caps = InferenceCaps::default();
    for (label, a, b) in inverse_pairs()? {
        let inv = invert(&a, caps)?;
        println!("{label}: inverse matches {}", inv.inverse.equal(&b)?);
    }
    for (n, p) in [(5u64, 11u64), (7, 29), (9, 19)] {
        let Some(w) = root_of_order(n, p)? else { continue };
        let inv = invert(&bidiagonal(p, w)?, caps)?;
        println!(
            "N={n} p={p}: inverse complexity {}, 1 + ord_N(2) = {}",
            inv.inverse.minimize().dim(),
            1 + order_of_two(n)
        );
    }
    Ok(())
}
