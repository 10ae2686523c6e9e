//! Presentations of the binomial matrices and their factors, written out
//! with exact coefficients, and brute-force constructors for the finite
//! matrices they describe.

mod brute;

pub use brute::{
    brute_det, brute_matrix, triangular_row_check, triangular_row_checks, BruteKind, BruteParams,
    Gamma, RowCheck,
};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::recmat::{parse_notation, Presentation, TensorElement};
use crate::scalar::{Field, Scalar};

const P: &str = "P = 1, (P, P; P, 0)";
const L_P: &str = "L = 1, (L, 0; L, L)";
const D_P: &str = "D = 1, (D; -D)";
const LINV_P: &str = "Li = 1, (Li, 0; -Li, Li)";

const V: &str = "
V1 = 1, (V1, V2; V2, i*V1)
V2 = 1, (V1, -i*V1 + (1+i)*V2; -i*V1 + (1+i)*V2, -V1)
";

const L_V: &str = "
L1 = 1, (L1, 0; L3, L4)
L2 = 0, (0, -i*L2; -L1 + L3, -i*L2 - i*L4)
L3 = 1, (L1, L2; -i*L1 + (1+i)*L3, L2 + (1+i)*L4)
L4 = 1, (L1, 0; (1-i)*L1 + i*L3, L4)
";

const D_V: &str = "
D1 = 1, (D1; D2)
D2 = -1+i, (D3; 2*D1 - D2 + 2*D3)
D3 = -1+i, (D3; -D2)
";

const Z: &str = "
Z1 = 1, (Z1, Z2; Z3, 0)
Z2 = 1, (Z1, Z2; -Z3, 0)
Z3 = 1, (Z1, -Z2; Z3, 0)
";

const L_Z: &str = "
L1 = 1, (L1, 0; L3, L4)
L2 = 2, (-2/3*L1, 2*L2; 2/3*L3, 2*L4)
L3 = 1, (L1, L2; L3, L4)
L4 = 1, (L1, 0; 1/3*L3, L4)
";

const D_Z: &str = "
D1 = 1, (D1; D2)
D2 = -1, (3*D1; 1/3*D2)
";

const M_Z: &str = "
M1 = 1, (M1, 0; M3, M4)
M2 = -2, (2*M1, 2*M2; 2*M3, 2*M4)
M3 = -1, (M1, M2; 1/3*M3, -1/3*M4)
M4 = 1, (M1, 0; 1/3*M3, M4)
";

const U_Z: &str = "
U1 = 1, (0, U2; U3, U1 - U2 - U3)
U2 = 1, (0, U2; -U3, -U1 + U2 + U3)
U3 = 1, (0, -U2; U3, -U1 + U2 + U3)
";

const E_Z: &str = "
E1 = 1, (E1; E2)
E2 = -1, (1/3*E1; 3*E2)
";

const J: &str = "
J1 = 1, (J1, J2; J2t, 0)
J2 = 1, (J3, J4; J5, 0)
J2t = 1, (J3t, J5t; J4t, 0)
J3 = 1, (J1, J2; -J2t, 0)
J3t = 1, (J1, -J2; J2t, 0)
J4 = 1, (J3, J4; -J5, 0)
J4t = 1, (J3t, -J5t; J4t, 0)
J5 = -1, (J3t, J5t; -J4t, 0)
J5t = -1, (J3, -J4; J5, 0)
";

const L_J: &str = "
L1 = 1, (L1, 0; L2, L3)
L2 = 1, (L4, L5; L6, L7)
L3 = 1, (L8, 0; L9, L10)
L4 = 1, (L1, L11; L2, L3)
L5 = 2, (L12, L13; 0, 0)
L6 = 1, (L4, L14; L6, L7)
L7 = 1, (L8 - L12, L15; L9, L10)
L8 = 1, (L1, 0; 1/3*L2, L3)
L9 = 1/3, (L4, 3*L5; 1/3*L6, L7)
L10 = 1, (L8, 0; 1/3*L9, L10)
L11 = 2, (L16, L13; L17, L18)
L12 = 4/3, (L19, 4*L5; 0, 0)
L13 = 4, (2/3*L12, 2*L13; 0, 0)
L14 = 0, (L12 + L16, L20; L17, L18)
L15 = 2, (-2/3*L12 + L16, L13; 1/3*L17, L18)
L16 = -2/3, (-2/3*L1, 2*L11; 2/3*L2, 2*L3)
L17 = 2/3, (-2/3*L4, -4*L5 + 2*L14; 2/3*L6, 2*L7)
L18 = 2, (-2/3*L8 - 2/3*L12, 2*L15; 2/3*L9, 2*L10)
L19 = 8/3, (2*L19, 8/3*L5; 0, 0)
L20 = -4, (4/3*L12 - 2/3*L16, -2*L13 + 2*L20; 2/3*L17, 2*L18)
";

const D_J: &str = "
D1 = 1, (D1; D2)
D2 = -1, (D3; D4)
D3 = 3, (3*D1; 1/3*D2)
D4 = -1/3, (3*D3; 1/3*D4)
";

const T: &str = "
L1 = 1, (L1, 0; L2, L3)
L2 = 1, (L1, 0; L2, -L3)
L3 = 1, (L1, 0; -L2, L3)
";

const MINV_T: &str = "
M1 = 1, (M1, 0; M1 - M2 - M3, M3)
M2 = 1, (M1, 0; -M1 + M2 + M3, -M3)
M3 = 1, (M1, 0; -M1 + M2 + M3, M3)
";

const HILBERT: &str = "
A = 1, (A + I, 0; 0, A + I)
I = 1, (I, 0; 0, I)
";

const PARITY: &str = "
E = 1, (O, 0; 0, O)
O = 0, (E, 0; 0, E)
";

const ALL_ONES: &str = "X = 1, (X, X; X, X)";

/// Names accepted by [`preset`], each loading to a single presentation.
pub const PRESETS: &[&str] = &[
    "P", "L_P", "D_P", "Linv_P", "V", "V2", "L_V", "D_V", "Z", "L_Z", "D_Z", "M_Z", "U_Z", "E_Z",
    "J", "L_J", "D_J", "T", "Minv_T", "Identity", "Hilbert", "Even", "Odd", "AllOnes",
];

/// Names accepted by [`tensor_preset`].
pub const TENSOR_PRESETS: &[&str] = &["Zprime", "Lprime", "Dprime", "Mprime", "Lprime_M", "Dprime_M"];

fn text_of(name: &str) -> Option<(Field, &'static str)> {
    let q = Field::Rational;
    Some(match name {
        "P" => (q, P),
        "L_P" => (q, L_P),
        "D_P" => (q, D_P),
        "Linv_P" => (q, LINV_P),
        "V" | "V2" => (Field::Gaussian, V),
        "L_V" => (Field::Gaussian, L_V),
        "D_V" => (Field::Gaussian, D_V),
        "Z" => (q, Z),
        "L_Z" => (q, L_Z),
        "D_Z" => (q, D_Z),
        "M_Z" => (q, M_Z),
        "U_Z" => (q, U_Z),
        "E_Z" => (q, E_Z),
        "J" => (q, J),
        "L_J" => (q, L_J),
        "D_J" => (q, D_J),
        "T" => (q, T),
        "Minv_T" => (q, MINV_T),
        "Hilbert" => (q, HILBERT),
        "Even" | "Odd" => (q, PARITY),
        "AllOnes" => (q, ALL_ONES),
        _ => return None,
    })
}

/// Loads a named presentation, with its first state designated (second
/// state for `V2` and `Odd`).
pub fn preset(name: &str) -> Result<Presentation> {
    if name == "Identity" {
        return Ok(Presentation::identity(Field::Rational));
    }
    let (field, text) = text_of(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    let p = parse_notation(field, text)?;
    Ok(match name {
        "V2" | "Odd" => p.state(1),
        _ => p,
    })
}

/// Loads a preset over an explicit field; the presets written over `Q`
/// reduce to `F_p` for primes not dividing a denominator.
pub fn preset_over(name: &str, field: Field) -> Result<Presentation> {
    if name == "Identity" {
        return Ok(Presentation::identity(field));
    }
    let native = preset(name)?;
    if native.field() == field {
        return Ok(native);
    }
    match (native.field(), field) {
        (Field::Rational, _) => {
            let (_, text) = text_of(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
            let p = parse_notation(field, text)?;
            Ok(match name {
                "V2" | "Odd" => p.state(1),
                _ => p,
            })
        }
        (from, to) => Err(Error::FieldMismatch(from, to)),
    }
}

/// The rational and Gaussian reductions appearing with `M′`.
fn tensor_factors(gamma: Gamma) -> Result<(Presentation, Presentation, Presentation)> {
    Ok(match gamma {
        Gamma::Mod2 => (preset("P")?, preset("L_P")?, preset("D_P")?),
        Gamma::Beeblebrox => (preset("Z")?, preset("L_Z")?, preset("D_Z")?),
    })
}

fn ints(rows: &[&[i64]]) -> DenseMatrix {
    DenseMatrix::from_ints(Field::Rational, rows)
}

/// `Z′ = Z ⊗ X`, `L′ = L ⊗ L_X`, `D′ = D ⊗ D_X` for the reduction of
/// q-binomials at `q = −1`.
pub fn zprime() -> Result<[TensorElement; 3]> {
    Ok([
        TensorElement::new(preset("Z")?, ints(&[&[1, 1], &[1, 0]]))?,
        TensorElement::new(preset("L_Z")?, ints(&[&[1, 0], &[1, 1]]))?,
        TensorElement::new(preset("D_Z")?, ints(&[&[1, 0], &[0, -1]]))?,
    ])
}

/// `M′(x, y) = M ⊗ X`, `L′ = L ⊗ L_X`, `D′ = D ⊗ D_X` at a rational
/// specialization, with `M, L, D` from `P` (mod 2) or `Z` (`χ_B`).
pub fn mprime(x: &BigRational, y: &BigRational, gamma: Gamma) -> Result<[TensorElement; 3]> {
    let one = BigRational::one();
    let q = x * x - x - x + y;
    if *y == one {
        return Err(Error::SingularSpecialization("y = 1".into()));
    }
    if q.is_zero() {
        return Err(Error::SingularSpecialization("x^2 - 2x + y = 0".into()));
    }
    let s = |v: BigRational| Scalar::Rational(v);
    let z = || BigRational::zero();
    let o = || BigRational::one();
    let m = DenseMatrix::from_rows(
        Field::Rational,
        vec![
            vec![s(o()), s(o()), s(o()), s(o())],
            vec![s(o()), s(y.clone()), s(x.clone()), s(z())],
            vec![s(o()), s(x.clone()), s(z()), s(z())],
            vec![s(o()), s(z()), s(z()), s(z())],
        ],
    )?;
    let one_minus_y = &one - y;
    let l = DenseMatrix::from_rows(
        Field::Rational,
        vec![
            vec![s(o()), s(z()), s(z()), s(z())],
            vec![s(o()), s(o()), s(z()), s(z())],
            vec![s(o()), s((&one - x) / &one_minus_y), s(o()), s(z())],
            vec![s(o()), s(&one / &one_minus_y), s((y - x) / &q), s(o())],
        ],
    )?;
    let d = DenseMatrix::diagonal(
        Field::Rational,
        &[
            s(o()),
            s(y - &one),
            s(&q / &one_minus_y),
            s(-(x * x) / &q),
        ],
    );
    let (mm, ll, dd) = tensor_factors(gamma)?;
    Ok([
        TensorElement::new(mm, m)?,
        TensorElement::new(ll, l)?,
        TensorElement::new(dd, d)?,
    ])
}

/// Catalog pairs `(X, Y)` with `X·Y = Id`: the states of `L_Z` against
/// `M_Z` (with `L₂⁻¹ = −½M₃`, `L₃⁻¹ = −½M₂`), of `Z` against `U_Z`, and of
/// `D_Z` against `E_Z`.
pub fn inverse_pairs() -> Result<Vec<(String, Presentation, Presentation)>> {
    let q = Field::Rational;
    let half = Scalar::ratio(q, -1, 2)?;
    let (l, m) = (preset("L_Z")?, preset("M_Z")?);
    let (z, u) = (preset("Z")?, preset("U_Z")?);
    let (d, e) = (preset("D_Z")?, preset("E_Z")?);
    Ok(vec![
        ("L1 M1".into(), l.state(0), m.state(0)),
        ("L2 (-1/2 M3)".into(), l.state(1), m.state(2).scale(&half)?),
        ("L3 (-1/2 M2)".into(), l.state(2), m.state(1).scale(&half)?),
        ("L4 M4".into(), l.state(3), m.state(3)),
        ("Z1 U1".into(), z.state(0), u.state(0)),
        ("Z2 U3".into(), z.state(1), u.state(2)),
        ("Z3 U2".into(), z.state(2), u.state(1)),
        ("D1 E1".into(), d.state(0), e.state(0)),
        ("D2 E2".into(), d.state(1), e.state(1)),
    ])
}

/// The specialization `(x, y) = (2, 11)`.
pub fn default_xy() -> (BigRational, BigRational) {
    (BigRational::from_integer(2.into()), BigRational::from_integer(11.into()))
}

/// Loads a tensor preset; `M′` and its factors use `(2, 11)` and `χ_B`.
pub fn tensor_preset(name: &str) -> Result<TensorElement> {
    let (x, y) = default_xy();
    let [a, b, c] = match name {
        "Zprime" | "Lprime" | "Dprime" => zprime()?,
        "Mprime" | "Lprime_M" | "Dprime_M" => mprime(&x, &y, Gamma::Beeblebrox)?,
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(match name {
        "Zprime" | "Mprime" => a,
        "Lprime" | "Lprime_M" => b,
        _ => c,
    })
}

/// The lower triangular bidiagonal element with constant subdiagonal `−ω`
/// over `F_p`.
pub fn bidiagonal(p: u64, omega: u64) -> Result<Presentation> {
    let field = Field::prime(p)?;
    let w = Scalar::residue(omega as i64, p)?;
    parse_notation(
        field,
        &format!("A1 = 1, (A1, 0; A2, A1)\nA2 = -{}, (0, A2; 0, 0)", w),
    )
}

/// An element of multiplicative order exactly `n` in `F_p`, if any.
pub fn root_of_order(n: u64, p: u64) -> Result<Option<u64>> {
    Field::prime(p)?;
    if n == 0 || (p - 1) % n != 0 {
        return Ok(None);
    }
    let pow = |b: u64, e: u64| pow_mod(b, e, p);
    let divisors: Vec<u64> = (1..n).filter(|d| n % d == 0).collect();
    Ok((2..p).map(|g| pow(g, (p - 1) / n)).find(|&w| {
        pow(w, n) == 1 && divisors.iter().all(|&d| pow(w, d) != 1)
    }))
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut r, mut b, p) = (1u128, b as u128 % p as u128, p as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u64
}

/// Multiplicative order of 2 modulo an odd `n > 1`.
pub fn order_of_two(n: u64) -> u64 {
    let mut x = 2 % n;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % n;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(p: &Presentation, n: usize) -> Vec<Vec<String>> {
        let m = p.materialize(n);
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    #[test]
    fn all_presets_load() {
        for name in PRESETS {
            preset(name).unwrap();
        }
        for name in TENSOR_PRESETS {
            tensor_preset(name).unwrap();
        }
        assert!(matches!(preset("Q"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn small_windows() {
        assert_eq!(level(&preset("P").unwrap(), 1), [["1", "1"], ["1", "0"]]);
        let d = preset("D_Z").unwrap().materialize(2).diag();
        let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        assert_eq!(d, ["1", "-1", "3", "-1/3"]);
        let h = preset("Hilbert").unwrap().materialize(3);
        assert_eq!(h, DenseMatrix::identity(Field::Rational, 8).scale(&Scalar::from_int(Field::Rational, 4)).unwrap());
    }

    #[test]
    fn singular_specializations() {
        let one = BigRational::one();
        let two = &one + &one;
        assert!(matches!(
            mprime(&two, &one, Gamma::Mod2),
            Err(Error::SingularSpecialization(_))
        ));
        let x = BigRational::from_integer(3.into());
        let y = BigRational::from_integer((-3).into());
        assert!(matches!(
            mprime(&x, &y, Gamma::Mod2),
            Err(Error::SingularSpecialization(_))
        ));
    }

    #[test]
    fn roots_in_prime_fields() {
        assert_eq!(root_of_order(5, 11).unwrap().map(|w| w != 1), Some(true));
        assert_eq!(root_of_order(7, 10).ok(), None);
        assert_eq!(root_of_order(3, 11).unwrap(), None);
        assert_eq!(order_of_two(5), 4);
        assert_eq!(order_of_two(7), 3);
    }

    #[test]
    fn inverse_pairs_multiply_to_identity() {
        let id = Presentation::identity(Field::Rational);
        for (label, x, y) in inverse_pairs().unwrap() {
            let p = x.mul(&y).unwrap().minimize();
            assert!(p.equal(&id).unwrap(), "{label}");
        }
    }
}
