//! Gaussian binomials at roots of unity.

use recmat::binom::{qbinomial_eval_root, qbinomial_poly};

fn main() -> recmat::Result<()> {
    println!("[6 choose 3]_q = {}", qbinomial_poly(6, 3)?);
    for order in [2u32, 4] {
        for (a, b) in [(3u64, 1u64), (4, 2), (5, 2)] {
            println!("order {order}: [{a}+{b} choose {a}] = {}", qbinomial_eval_root(a, b, order)?);
        }
    }
    Ok(())
}
