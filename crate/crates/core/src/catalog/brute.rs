//! Finite matrices built entry by entry from exact binomial coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binom::{chi_b, chi_j};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BruteKind {
    /// `C(s+t, s) mod 2`.
    Mod2,
    /// `i^{v_2(C(s+t, s))}`.
    Valuation,
    /// `χ_B(C(s+t, s))`.
    Beeblebrox,
    /// `χ_J(C(s+t, s))`.
    Jacobi,
    /// `C(s+t, s)`.
    Fermat,
    /// `C(s+t, s)_q` at an integer `q`.
    PascalQ,
    /// `χ_B(C(s+t, s)_{−1})`.
    ZPrime,
    /// `ψ(C(s+t, s)_i)` with values in `{0, ±1, ±x, ±y}`.
    MPrime,
    /// Lower triangular `χ_B(C(s, t))`.
    TriangularBeeblebrox,
}

impl BruteKind {
    pub const ALL: [BruteKind; 9] = [
        BruteKind::Mod2,
        BruteKind::Valuation,
        BruteKind::Beeblebrox,
        BruteKind::Jacobi,
        BruteKind::Fermat,
        BruteKind::PascalQ,
        BruteKind::ZPrime,
        BruteKind::MPrime,
        BruteKind::TriangularBeeblebrox,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BruteKind::Mod2 => "mod2",
            BruteKind::Valuation => "valuation",
            BruteKind::Beeblebrox => "beeblebrox",
            BruteKind::Jacobi => "jacobi",
            BruteKind::Fermat => "fermat",
            BruteKind::PascalQ => "pascal-q",
            BruteKind::ZPrime => "zprime",
            BruteKind::MPrime => "mprime",
            BruteKind::TriangularBeeblebrox => "triangular-beeblebrox",
        }
    }

    pub fn field(&self) -> Field {
        match self {
            BruteKind::Valuation => Field::Gaussian,
            _ => Field::Rational,
        }
    }
}

impl FromStr for BruteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BruteKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for BruteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The reduction `γ` applied to integer parts in `M′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gamma {
    Mod2,
    Beeblebrox,
}

impl Gamma {
    pub fn apply(&self, a: &BigInt) -> i8 {
        match self {
            Gamma::Mod2 => a.bit(0) as i8,
            Gamma::Beeblebrox => chi_b(a),
        }
    }
}

impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mod2" => Ok(Gamma::Mod2),
            "beeblebrox" => Ok(Gamma::Beeblebrox),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

/// Parameters of the `pascal-q` and `mprime` kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteParams {
    pub q: i64,
    pub x: BigRational,
    pub y: BigRational,
    pub gamma: Gamma,
}

impl Default for BruteParams {
    fn default() -> Self {
        let (x, y) = super::default_xy();
        BruteParams {
            q: 2,
            x,
            y,
            gamma: Gamma::Beeblebrox,
        }
    }
}

/// Fills `m[s][t] = f(C(s+t, s))` from successive rows of Pascal's triangle.
fn from_pascal(n: usize, field: Field, f: impl Fn(&BigInt) -> Scalar) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(field, n, n);
    let mut row = vec![BigInt::one()];
    for r in 0..(2 * n).saturating_sub(1) {
        for s in r.saturating_sub(n - 1)..=r.min(n - 1) {
            m.set(s, r - s, f(&row[s]));
        }
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigInt::one());
        row = next;
    }
    m
}

/// `m[s][t] = C(s+t, s)_q` through `q^s m[s][t−1] + m[s−1][t]`.
fn q_pascal(n: usize, q: &Scalar) -> Vec<Vec<Scalar>> {
    let field = q.field();
    let mut powers = vec![Scalar::one(field)];
    for s in 1..n {
        powers.push(&powers[s - 1] * q);
    }
    let mut m = vec![vec![Scalar::one(field); n]; n];
    for s in 1..n {
        for t in 1..n {
            m[s][t] = &(&powers[s] * &m[s][t - 1]) + &m[s - 1][t];
        }
    }
    m
}

fn integer_part(x: &BigRational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::OutOfRange(format!("{x} is not an integer")))
    }
}

/// `ψ(a + bi)` for the values taken by `C(s+t, s)_i`.
fn psi(xi: &Scalar, p: &BruteParams) -> Result<Scalar> {
    let g = xi.as_gaussian().expect("Gaussian value");
    let (a, b) = (integer_part(&g.re)?, integer_part(&g.im)?);
    let q = Field::Rational;
    let scaled = |c: i8, v: &BigRational| Scalar::Rational(v * BigRational::from_integer(c.into()));
    if b.is_zero() && !a.is_negative() {
        Ok(Scalar::from_int(q, p.gamma.apply(&a) as i64))
    } else if a.is_zero() && b.is_positive() {
        Ok(scaled(p.gamma.apply(&b), &p.x))
    } else if a == b && a.is_positive() {
        Ok(scaled(p.gamma.apply(&a), &p.y))
    } else {
        Err(Error::OutOfRange(format!("{xi} outside N, iN and (1+i)N")))
    }
}

/// The leading `n × n` matrix of the given kind.
pub fn brute_matrix(kind: BruteKind, n: usize, params: &BruteParams) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange("size must be at least 1".into()));
    }
    let q = Field::Rational;
    let int = |v: i8| Scalar::from_int(q, v as i64);
    Ok(match kind {
        BruteKind::Mod2 => from_pascal(n, q, |c| int(c.bit(0) as i8)),
        BruteKind::Beeblebrox => from_pascal(n, q, |c| int(chi_b(c))),
        BruteKind::Jacobi => from_pascal(n, q, |c| int(chi_j(c))),
        BruteKind::Fermat => from_pascal(n, q, |c| Scalar::from_bigint(q, c)),
        BruteKind::Valuation => {
            let powers = [
                Scalar::one(Field::Gaussian),
                Scalar::i(),
                Scalar::from_int(Field::Gaussian, -1),
                -Scalar::i(),
            ];
            from_pascal(n, Field::Gaussian, |c| {
                let v = c.trailing_zeros().expect("nonzero binomial");
                powers[(v % 4) as usize].clone()
            })
        }
        BruteKind::PascalQ => {
            let m = q_pascal(n, &Scalar::from_int(q, params.q));
            DenseMatrix::from_rows(q, m)?
        }
        BruteKind::ZPrime => {
            let m = q_pascal(n, &Scalar::from_int(q, -1));
            let rows = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| int(chi_b(&v.to_rational().expect("rational").to_integer())))
                        .collect()
                })
                .collect();
            DenseMatrix::from_rows(q, rows)?
        }
        BruteKind::MPrime => {
            let one = BigRational::one();
            let two = &one + &one;
            if params.y == one || &params.x * &params.x - &two * &params.x + &params.y == BigRational::zero() {
                return Err(Error::SingularSpecialization(format!(
                    "(x, y) = ({}, {})",
                    params.x, params.y
                )));
            }
            let m = q_pascal(n, &Scalar::i());
            let rows = m
                .iter()
                .map(|r| r.iter().map(|v| psi(v, params)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            DenseMatrix::from_rows(q, rows)?
        }
        BruteKind::TriangularBeeblebrox => {
            let mut m = DenseMatrix::zeros(q, n, n);
            let mut row = vec![1u8];
            for s in 0..n {
                for (t, c) in row.iter().enumerate() {
                    m.set(s, t, int(chi_b(&BigInt::from(*c))));
                }
                row = pascal_next_mod4(&row);
            }
            m
        }
    })
}

fn pascal_next_mod4(row: &[u8]) -> Vec<u8> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(1);
    next.extend(row.windows(2).map(|w| (w[0] + w[1]) % 4));
    next.push(1);
    next
}

/// Determinant of the leading `n × n` matrix.
pub fn brute_det(kind: BruteKind, n: usize, params: &BruteParams) -> Result<Scalar> {
    brute_matrix(kind, n, params)?.det()
}

/// Signs in one row of the triangular Beeblebrox matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub row: u64,
    pub plus: u64,
    pub minus: u64,
}

impl RowCheck {
    /// No `−1` at all, or as many `−1` as `+1` with a power of two of each.
    pub fn holds(&self) -> bool {
        self.minus == 0 || (self.plus == self.minus && self.minus.is_power_of_two())
    }
}

fn count_row(n: u64, row: &[u8]) -> RowCheck {
    let plus = row.iter().filter(|&&c| c == 1).count() as u64;
    let minus = row.iter().filter(|&&c| c == 3).count() as u64;
    RowCheck { row: n, plus, minus }
}

/// Counts of `±1` in row `n` of `χ_B(C(n, k))`.
pub fn triangular_row_check(n: u64) -> RowCheck {
    let mut row = vec![1u8];
    for _ in 0..n {
        row = pascal_next_mod4(&row);
    }
    count_row(n, &row)
}

/// Row checks for all rows `0..rows`.
pub fn triangular_row_checks(rows: u64) -> Vec<RowCheck> {
    let mut out = Vec::with_capacity(rows as usize);
    let mut row = vec![1u8];
    for n in 0..rows {
        out.push(count_row(n, &row));
        row = pascal_next_mod4(&row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: &DenseMatrix) -> Vec<Vec<String>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    #[test]
    fn small_matrices() {
        let p = BruteParams::default();
        let z = brute_matrix(BruteKind::Beeblebrox, 3, &p).unwrap();
        assert_eq!(ints(&z), [["1", "1", "1"], ["1", "0", "-1"], ["1", "-1", "0"]]);
        let m = brute_matrix(BruteKind::Mod2, 2, &p).unwrap();
        assert_eq!(ints(&m), [["1", "1"], ["1", "0"]]);
        let v = brute_matrix(BruteKind::Valuation, 2, &p).unwrap();
        assert_eq!(ints(&v), [["1", "1"], ["1", "0+1i"]]);
        assert_eq!(brute_det(BruteKind::Beeblebrox, 3, &p).unwrap().to_string(), "-3");
        assert_eq!(brute_det(BruteKind::Jacobi, 2, &p).unwrap().to_string(), "-1");
        assert_eq!(brute_det(BruteKind::Fermat, 5, &p).unwrap().to_string(), "1");
    }

    #[test]
    fn q_kinds() {
        let p = BruteParams::default();
        // C(2,1)_q = 1 + q, C(4,2)_q = 1 + q + 2q^2 + q^3 + q^4
        let m = brute_matrix(BruteKind::PascalQ, 3, &p).unwrap();
        assert_eq!(m.get(1, 1).to_string(), "3");
        assert_eq!(m.get(2, 2).to_string(), "35");
        let z = brute_matrix(BruteKind::ZPrime, 4, &p).unwrap();
        assert_eq!(z.get(1, 1).to_string(), "0");
        assert_eq!(z.get(2, 1).to_string(), "1");
        assert_eq!(z.get(2, 2).to_string(), "0");
        let m = brute_matrix(BruteKind::MPrime, 4, &p).unwrap();
        assert_eq!(m.get(1, 1).to_string(), "11");
        assert_eq!(m.get(1, 2).to_string(), "2");
        assert_eq!(m.get(3, 1).to_string(), "0");
    }

    #[test]
    fn triangular_rows() {
        assert_eq!(triangular_row_check(3), RowCheck { row: 3, plus: 2, minus: 2 });
        assert_eq!(triangular_row_check(2), RowCheck { row: 2, plus: 2, minus: 0 });
        assert_eq!(triangular_row_check(0), RowCheck { row: 0, plus: 1, minus: 0 });
        assert!(triangular_row_checks(256).iter().all(RowCheck::holds));
        let t = brute_matrix(BruteKind::TriangularBeeblebrox, 4, &BruteParams::default()).unwrap();
        assert_eq!(ints(&t)[3], ["1", "-1", "-1", "1"]);
    }
}
