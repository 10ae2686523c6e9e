//! Guess a presentation from an entry oracle alone.

use num_bigint::BigInt;
use recmat::catalog::preset;
use recmat::solve::{infer_from_oracle, InferenceCaps};
use recmat::{Field, Scalar};

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn main() -> recmat::Result<()> {
    let q = Field::Rational;
    let parity = |s: u64, t: u64| {
        let c = binom(s + t, s);
        Scalar::from_int(q, if c.bit(0) { 1 } else { 0 })
    };
    let a = infer_from_oracle(q, parity, 5, InferenceCaps::default())?;
    println!("binomials mod 2: dim {}, equals P: {}", a.dim(), a.equal(&preset("P")?)?);
    println!("{a}");
    Ok(())
}
