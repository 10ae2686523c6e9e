//! Parse compact notation and round-trip through JSON.

use recmat::recmat::parse_notation;
use recmat::{Field, Presentation};

fn main() -> recmat::Result<()> {
    let p = parse_notation(Field::Rational, "P = 1, (P, P; P, 0)")?;
    let json = p.to_json();
    println!("{json}");
    let back = Presentation::from_json(&json)?;
    println!("round trip equal: {}", back.equal(&p)?);
    Ok(())
}
