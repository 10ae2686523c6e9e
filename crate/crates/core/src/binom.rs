//! Binomial coefficients and their reductions: Lucas and Kummer formulas,
//! the characters `χ_B` (mod 4) and `χ_J` (mod 8), the folding sequence,
//! the `±3^Z` sequences `f` and `g`, q-binomials and closed determinant
//! formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::recmat::Factored;
use crate::scalar::{is_prime, Field, Scalar};

pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!("binomial({n}, {k})")));
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(c)
}

pub fn digit_sum(mut n: u64, base: u64) -> u64 {
    assert!(base >= 2, "base must be at least 2");
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    let p128 = p as u128;
    for i in 0..k {
        num = num * ((n - i) as u128) % p128;
        den = den * ((i + 1) as u128) % p128;
    }
    // den is a unit since all factors are below p
    let inv = Scalar::from_int(Field::Prime(p), den as i64)
        .inv()
        .expect("unit")
        .as_residue()
        .expect("prime field")
        .value();
    (num * inv as u128 % p128) as u64
}

/// `C(n,k) mod p` as the product of digitwise binomials in base `p`.
pub fn lucas_mod_p(mut n: u64, mut k: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k > n {
        return Ok(0);
    }
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let c = small_binomial_mod(n % p, k % p, p);
        if c == 0 {
            return Ok(0);
        }
        acc = ((acc as u128 * c as u128) % p as u128) as u64;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// `v_p(C(s+t, s))`: the number of carries when adding `s` and `t` in
/// base `p`.
pub fn kummer_valuation(mut s: u64, mut t: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut carries = 0;
    let mut carry = 0;
    while s > 0 || t > 0 || carry > 0 {
        let d = s % p + t % p + carry;
        carry = u64::from(d >= p);
        carries += carry;
        s /= p;
        t /= p;
    }
    Ok(carries)
}

/// `v_p(x!) = (x − ds_p(x)) / (p − 1)`.
pub fn factorial_valuation(x: u64, p: u64) -> u64 {
    (x - digit_sum(x, p)) / (p - 1)
}

/// Character modulo 4: `0` on even numbers, `±1` on `±1 mod 4`.
pub fn chi_b(x: &BigInt) -> i8 {
    chi_b_residue(residue(x, 4))
}

/// Character modulo 8: `0` on even numbers, `1` on `±1`, `−1` on `±3`.
pub fn chi_j(x: &BigInt) -> i8 {
    chi_j_residue(residue(x, 8))
}

fn residue(x: &BigInt, m: u32) -> u32 {
    let m = BigInt::from(m);
    let r = ((x % &m) + &m) % &m;
    u32::try_from(r).expect("small residue")
}

pub fn chi_b_residue(r: u32) -> i8 {
    match r % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

pub fn chi_j_residue(r: u32) -> i8 {
    match r % 8 {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// `χ_B(C(n,k))` by the four-case recursion on the last binary digits.
pub fn chi_b_binomial(n: u64, k: u64) -> Result<i8> {
    if k > n {
        return Err(Error::OutOfRange(format!("binomial({n}, {k})")));
    }
    let (mut n, mut k) = (n, k);
    let mut sign = 1i8;
    while k > 0 {
        let (n0, k0) = (n & 1, k & 1);
        let (n1, k1) = (n >> 1, k >> 1);
        match (n0, k0) {
            (0, 1) => return Ok(0),
            (0, 0) => {}
            (1, 0) => {
                if k1 & 1 == 1 {
                    sign = -sign;
                }
            }
            _ => {
                if (n1 & 1 == 1) && ((k1 + 1) & 1 == 1) {
                    sign = -sign;
                }
            }
        }
        n = n1;
        k = k1;
    }
    Ok(sign)
}

/// Regular paperfolding sequence: `f(2^n) = 1`, `f(2^n + a) = −f(2^n − a)`.
pub fn folding(k: u64) -> Result<i8> {
    if k == 0 {
        return Err(Error::OutOfRange("folding sequence starts at 1".into()));
    }
    let mut k = k;
    let mut sign = 1i8;
    loop {
        let top = 1u64 << (63 - k.leading_zeros());
        if k == top {
            return Ok(sign);
        }
        // f(top + a) = −f(top − a)
        k = 2 * top - k;
        sign = -sign;
    }
}

/// `f(n)` as `(sign, exponent of 3)` by the recursion
/// `f(2^a + b) = 3f(b)` if `2b < 2^a`, else `f(b)/3`.
pub fn beeblebrox_f_exponent(n: u64) -> (i8, i64) {
    let mut n = n;
    let mut e = 0i64;
    loop {
        match n {
            0 => return (1, e),
            1 => return (-1, e),
            _ => {
                let top = 1u64 << (63 - n.leading_zeros());
                let b = n - top;
                e += if 2 * b < top { 1 } else { -1 };
                n = b;
            }
        }
    }
}

/// `f(n) = (−1)^n ∏ 3^{(1 − 2ν_i)ν_{i+1}}` over the binary digits `ν_i`.
pub fn beeblebrox_f_closed_exponent(n: u64) -> (i8, i64) {
    let mut e = 0i64;
    for i in 0..63 {
        let (a, b) = ((n >> i) & 1, (n >> (i + 1)) & 1);
        e += (1 - 2 * a as i64) * b as i64;
    }
    (if n % 2 == 0 { 1 } else { -1 }, e)
}

pub fn beeblebrox_f(n: u64) -> BigRational {
    let (s, e) = beeblebrox_f_exponent(n);
    signed_power_of_three(s, e)
}

pub fn beeblebrox_f_closed(n: u64) -> BigRational {
    let (s, e) = beeblebrox_f_closed_exponent(n);
    signed_power_of_three(s, e)
}

/// Exponent table of `g`, indexed by the residue mod 8.
pub const E_TABLE: [i64; 8] = [0, 0, 1, -1, 0, -2, 3, -1];

/// `g(n) = (−1)^n ∏_k 3^{e(⌊n/2^k⌋)}` as `(sign, exponent of 3)`.
pub fn jacobi_g_exponent(n: u64) -> (i8, i64) {
    let mut e = 0;
    let mut m = n;
    while m > 0 {
        e += E_TABLE[(m % 8) as usize];
        m >>= 1;
    }
    (if n % 2 == 0 { 1 } else { -1 }, e)
}

pub fn jacobi_g(n: u64) -> BigRational {
    let (s, e) = jacobi_g_exponent(n);
    signed_power_of_three(s, e)
}

fn signed_power_of_three(sign: i8, e: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(3), e.unsigned_abs() as usize);
    let v = if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    };
    if sign < 0 {
        -v
    } else {
        v
    }
}

/// Integer polynomial with ascending coefficients, trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Horner evaluation at `q`.
    pub fn eval(&self, q: &Scalar) -> Scalar {
        let field = q.field();
        let mut acc = Scalar::zero(field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Scalar::from_bigint(field, c);
        }
        acc
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn add_shifted(&mut self, other: &Self, shift: usize) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += c;
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if c.is_one() => "q".to_string(),
                1 => format!("{c}q"),
                _ if c.is_one() => format!("q^{i}"),
                _ => format!("{c}q^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Row `n` of q-binomials, from `C(n,k)_q = q^k C(n−1,k)_q + C(n−1,k−1)_q`.
pub fn qbinomial_row(n: u64) -> Vec<IntPolynomial> {
    let mut row = vec![IntPolynomial::from_i64(&[1])];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut p = IntPolynomial::new(Vec::new());
            if k < m {
                p.add_shifted(&row[k], k);
            }
            if k > 0 {
                p.add_shifted(&row[k - 1], 0);
            }
            next.push(p);
        }
        row = next;
    }
    row
}

pub fn qbinomial_poly(n: u64, k: u64) -> Result<IntPolynomial> {
    if k > n {
        return Err(Error::OutOfRange(format!("q-binomial({n}, {k})")));
    }
    Ok(qbinomial_row(n).swap_remove(k as usize))
}

/// The root of unity `1`, `−1` or `i` of the given order, in `Q(i)`.
pub fn root_of_unity(order: u32) -> Result<Scalar> {
    let g = Field::Gaussian;
    match order {
        1 => Ok(Scalar::one(g)),
        2 => Ok(Scalar::from_int(g, -1)),
        4 => Ok(Scalar::i()),
        o => Err(Error::UnsupportedOrder(o)),
    }
}

/// `C(a,b)_ω = C(⌊a/n⌋, ⌊b/n⌋) · C(a mod n, b mod n)_ω` for a primitive
/// `n`-th root of unity `ω`, `n ∈ {1, 2, 4}`.
pub fn qbinomial_eval_root(a: u64, b: u64, order: u32) -> Result<Scalar> {
    let g = Field::Gaussian;
    let small: fn(usize, usize) -> Scalar = match order {
        1 => |_, _| Scalar::one(Field::Gaussian),
        2 => |a, b| {
            let t = [[1, 0], [1, 1]];
            Scalar::from_int(Field::Gaussian, t[a][b])
        },
        4 => |a, b| {
            let i = || Scalar::i();
            let one = || Scalar::one(Field::Gaussian);
            let zero = || Scalar::zero(Field::Gaussian);
            let table = [
                [one(), zero(), zero(), zero()],
                [one(), one(), zero(), zero()],
                [one(), &one() + &i(), one(), zero()],
                [one(), i(), i(), one()],
            ];
            table[a][b].clone()
        },
        o => return Err(Error::UnsupportedOrder(o)),
    };
    if b > a {
        return Err(Error::OutOfRange(format!("q-binomial({a}, {b})")));
    }
    let n = order as u64;
    let (ra, rb) = ((a % n) as usize, (b % n) as usize);
    let tail = small(ra, rb);
    if tail.is_zero() {
        return Ok(tail);
    }
    let head = binomial(a / n, b / n)?;
    Ok(&Scalar::from_bigint(g, &head) * &tail)
}

/// Kinds of character-reduced binomial matrices with a closed determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetKind {
    Mod2,
    Valuation,
    Beeblebrox,
    Jacobi,
}

impl DetKind {
    pub const ALL: [DetKind; 4] = [
        DetKind::Mod2,
        DetKind::Valuation,
        DetKind::Beeblebrox,
        DetKind::Jacobi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DetKind::Mod2 => "mod2",
            DetKind::Valuation => "valuation",
            DetKind::Beeblebrox => "beeblebrox",
            DetKind::Jacobi => "jacobi",
        }
    }

    pub fn field(&self) -> Field {
        match self {
            DetKind::Valuation => Field::Gaussian,
            _ => Field::Rational,
        }
    }
}

impl FromStr for DetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for DetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn parity_sign(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed-form determinant of the `n × n` matrix of the given kind.
pub fn det_formula(kind: DetKind, n: u64) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::OutOfRange("size must be at least 1".into()));
    }
    let field = kind.field();
    match kind {
        DetKind::Mod2 => Ok(Scalar::from_int(field, mod2_sign(n))),
        DetKind::Valuation => {
            let m = n / 2;
            let (sign, last) = if n % 2 == 0 {
                (parity_sign(m), 2 * m - 1)
            } else {
                (parity_sign(m + digit_sum(m, 2)), 2 * m)
            };
            let mut acc = Scalar::from_int(field, sign);
            let one = Scalar::one(field);
            let i = Scalar::i();
            for k in 1..=last {
                let f = Scalar::from_int(field, folding(k)? as i64);
                acc = &acc * &(&one - &(&f * &i));
            }
            Ok(acc)
        }
        DetKind::Beeblebrox | DetKind::Jacobi => {
            let f = det_formula_factored(kind, n)?;
            Ok(Scalar::from_rational(field, &f.to_rational(u64::MAX).expect("bounded"))?)
        }
    }
}

fn mod2_sign(n: u64) -> i64 {
    let m = n / 2;
    if n % 2 == 0 {
        parity_sign(m)
    } else {
        parity_sign(m + digit_sum(m, 2))
    }
}

/// Closed-form determinant in factored form, for the rational kinds.
pub fn det_formula_factored(kind: DetKind, n: u64) -> Result<Factored> {
    if n == 0 {
        return Err(Error::OutOfRange("size must be at least 1".into()));
    }
    let per_term: fn(u64) -> (i8, i64) = match kind {
        DetKind::Mod2 => return Ok(Factored::from_i64(mod2_sign(n))),
        DetKind::Valuation => return Err(Error::UnknownKind("valuation is not rational".into())),
        DetKind::Beeblebrox => beeblebrox_f_closed_exponent,
        DetKind::Jacobi => jacobi_g_exponent,
    };
    let mut negative = false;
    let mut e: i128 = 0;
    for k in 0..n {
        let (s, x) = per_term(k);
        negative ^= s < 0;
        e += x as i128;
    }
    let three = Factored::from_i64(3);
    let magnitude = if e >= 0 {
        three.pow(e as u128).expect("fits")
    } else {
        Factored::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)))
            .expect("1/3")
            .pow((-e) as u128)
            .expect("fits")
    };
    let sign = Factored::from_i64(if negative { -1 } else { 1 });
    Ok(sign.mul(&magnitude).expect("fits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(7, 3).unwrap(), BigInt::from(35));
        assert_eq!(binomial(30, 15).unwrap(), BigInt::from(155117520));
        assert!(binomial(2, 3).is_err());
        assert_eq!([digit_sum(0, 2), digit_sum(5, 2), digit_sum(7, 2)], [0, 2, 3]);
        assert_eq!(lucas_mod_p(3, 1, 2).unwrap(), 1);
        assert_eq!(lucas_mod_p(4, 2, 2).unwrap(), 0);
        assert_eq!(lucas_mod_p(10, 5, 3).unwrap(), 0);
        assert_eq!(lucas_mod_p(10, 5, 4), Err(Error::NotPrime(4)));
        assert_eq!(kummer_valuation(1, 1, 2).unwrap(), 1);
        assert_eq!(kummer_valuation(2, 2, 2).unwrap(), 1);
        assert_eq!(kummer_valuation(3, 1, 2).unwrap(), 2);
    }

    #[test]
    fn characters() {
        let b = |x: i64| chi_b(&BigInt::from(x));
        let j = |x: i64| chi_j(&BigInt::from(x));
        assert_eq!([b(1), b(3), b(6), b(-1)], [1, -1, 0, -1]);
        assert_eq!([j(7), j(3), j(4), j(9)], [1, -1, 0, 1]);
        assert_eq!(chi_b_binomial(2, 1).unwrap(), 0);
        assert_eq!(chi_b_binomial(3, 1).unwrap(), -1);
        assert_eq!(chi_b_binomial(7, 3).unwrap(), -1);
        assert!(chi_b_binomial(1, 2).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(folding(1).unwrap(), 1);
        assert_eq!(folding(3).unwrap(), -1);
        assert_eq!(folding(6).unwrap(), -1);
        assert!(folding(0).is_err());
        let first: Vec<i8> = (1..=8).map(|k| folding(k).unwrap()).collect();
        assert_eq!(first, [1, 1, -1, 1, 1, -1, -1, 1]);
        assert_eq!(beeblebrox_f(0), r(1, 1));
        assert_eq!(beeblebrox_f(2), r(3, 1));
        assert_eq!(beeblebrox_f(7), r(-1, 9));
        assert_eq!(beeblebrox_f_closed(7), r(-1, 9));
        assert_eq!(jacobi_g(0), r(1, 1));
        assert_eq!(jacobi_g(1), r(-1, 1));
        assert_eq!(jacobi_g(2), r(3, 1));
    }

    #[test]
    fn q_binomials() {
        assert_eq!(qbinomial_poly(5, 0).unwrap(), IntPolynomial::from_i64(&[1]));
        assert_eq!(qbinomial_poly(2, 1).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(
            qbinomial_poly(4, 2).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 2, 1, 1])
        );
        assert_eq!(qbinomial_poly(4, 2).unwrap().to_string(), "1 + q + 2q^2 + q^3 + q^4");
        let g = Field::Gaussian;
        assert_eq!(qbinomial_eval_root(2, 1, 4).unwrap(), Scalar::parse("1+i", g).unwrap());
        assert_eq!(qbinomial_eval_root(3, 1, 4).unwrap(), Scalar::i());
        assert_eq!(qbinomial_eval_root(5, 1, 4).unwrap(), Scalar::one(g));
        assert_eq!(qbinomial_eval_root(5, 1, 3), Err(Error::UnsupportedOrder(3)));
    }

    #[test]
    fn determinant_formulas() {
        let q = Field::Rational;
        assert_eq!(det_formula(DetKind::Mod2, 2).unwrap(), Scalar::from_int(q, -1));
        assert_eq!(det_formula(DetKind::Beeblebrox, 3).unwrap(), Scalar::from_int(q, -3));
        assert_eq!(
            det_formula(DetKind::Valuation, 3).unwrap(),
            Scalar::parse("-2i", Field::Gaussian).unwrap()
        );
        assert_eq!(det_formula(DetKind::Beeblebrox, 5).unwrap(), Scalar::from_int(q, 3));
        assert_eq!("fermat".parse::<DetKind>(), Err(Error::UnknownKind("fermat".into())));
    }
}
