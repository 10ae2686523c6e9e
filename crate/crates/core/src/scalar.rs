//! Exact field elements.
//!
//! Three ground fields are supported: the rationals `Q`, the Gaussian
//! rationals `Q(i)` and prime fields `F_p`. Values of different fields never
//! mix; the checked operations report [`Error::FieldMismatch`], the operator
//! impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Gaussian,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Short tag used in files and on the command line: `Q`, `Qi`, `Fp:<p>`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Gaussian => "Qi".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            "Qi" => Ok(Field::Gaussian),
            t => {
                let rest = t
                    .strip_prefix("Fp:")
                    .ok_or_else(|| Error::parse(0, format!("unknown field tag `{t}`")))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::parse(3, format!("bad modulus `{rest}`")))?;
                Field::prime(p)
            }
        }
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

/// A residue class modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn new(value: u64, modulus: u64) -> Self {
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    fn mul(self, other: Residue) -> Residue {
        let v = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Residue::new(v as u64, self.modulus)
    }

    fn add(self, other: Residue) -> Residue {
        let v = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Residue::new(v as u64, self.modulus)
    }

    fn neg(self) -> Residue {
        if self.value == 0 {
            self
        } else {
            Residue::new(self.modulus - self.value, self.modulus)
        }
    }

    fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Option<Residue> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// An exact element of one of the supported fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(Gaussian),
    Prime(Residue),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Gaussian => Scalar::Gaussian(Gaussian {
                re: BigRational::zero(),
                im: BigRational::zero(),
            }),
            Field::Prime(p) => Scalar::Prime(Residue::new(0, p)),
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Gaussian => Scalar::Gaussian(Gaussian {
                re: BigRational::from_integer(n.clone()),
                im: BigRational::zero(),
            }),
            Field::Prime(p) => Scalar::Prime(Residue::new(reduce_mod(n, p), p)),
        }
    }

    /// Embeds a rational; in `F_p` the denominator must be invertible.
    pub fn from_rational(field: Field, q: &BigRational) -> Result<Scalar> {
        match field {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Gaussian => Ok(Scalar::Gaussian(Gaussian {
                re: q.clone(),
                im: BigRational::zero(),
            })),
            Field::Prime(p) => {
                let num = Residue::new(reduce_mod(q.numer(), p), p);
                let den = Residue::new(reduce_mod(q.denom(), p), p)
                    .inv()
                    .ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime(num.mul(den)))
            }
        }
    }

    pub fn ratio(field: Field, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_rational(
            field,
            &BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Gaussian(Gaussian { re, im })
    }

    /// The imaginary unit of `Q(i)`.
    pub fn i() -> Scalar {
        Scalar::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn residue(value: i64, p: u64) -> Result<Scalar> {
        let field = Field::prime(p)?;
        Ok(Scalar::from_int(field, value))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gaussian(_) => Field::Gaussian,
            Scalar::Prime(r) => Field::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(g) => g.re.is_zero() && g.im.is_zero(),
            Scalar::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::Prime(r) => r.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&Gaussian> {
        match self {
            Scalar::Gaussian(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<Residue> {
        match self {
            Scalar::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// Rational value of a rational scalar, or of a Gaussian with zero
    /// imaginary part.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Gaussian(g) if g.im.is_zero() => Some(g.re.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
            ArithOp::Div => self.checked_div(other),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Gaussian(g) => {
                let norm = &g.re * &g.re + &g.im * &g.im;
                if norm.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::gaussian(&g.re / &norm, -(&g.im / &norm)))
            }
            Scalar::Prime(r) => r.inv().map(Scalar::Prime).ok_or(Error::DivisionByZero),
        }
    }

    /// Integer power; negative exponents require a non-zero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        if let Scalar::Prime(r) = base {
            return Ok(Scalar::Prime(r.pow(e)));
        }
        let mut acc = Scalar::one(self.field());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Complex conjugate (identity outside `Q(i)`).
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gaussian(g) => Scalar::gaussian(g.re.clone(), -g.im.clone()),
            other => other.clone(),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q.clone()),
            Scalar::Gaussian(g) => Scalar::gaussian(-g.re.clone(), -g.im.clone()),
            Scalar::Prime(r) => Scalar::Prime(r.neg()),
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::gaussian(&a.re + &b.re, &a.im + &b.im)
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Scalar::Prime(a.add(*b))
            }
            _ => panic!("{}", Error::FieldMismatch(self.field(), other.field())),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                if a.is_zero() || b.is_zero() {
                    Scalar::Rational(BigRational::zero())
                } else {
                    Scalar::Rational(a * b)
                }
            }
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                if b.im.is_zero() {
                    Scalar::gaussian(&a.re * &b.re, &a.im * &b.re)
                } else if a.im.is_zero() {
                    Scalar::gaussian(&a.re * &b.re, &a.re * &b.im)
                } else {
                    Scalar::gaussian(
                        &a.re * &b.re - &a.im * &b.im,
                        &a.re * &b.im + &a.im * &b.re,
                    )
                }
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Scalar::Prime(a.mul(*b))
            }
            _ => panic!("{}", Error::FieldMismatch(self.field(), other.field())),
        }
    }

    /// `self += a * b`, skipping work when either factor vanishes.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_unchecked(&a.mul_unchecked(b));
    }

    /// Parses the canonical text form (see [`Scalar`]'s `Display`) in the
    /// given field. Non-canonical input such as `2/4` is accepted and
    /// normalized.
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        let mut p = Parser::new(text);
        let value = match field {
            Field::Rational => {
                let q = p.signed_rational()?;
                Scalar::Rational(q)
            }
            Field::Gaussian => {
                let g = p.gaussian()?;
                Scalar::Gaussian(g)
            }
            Field::Prime(_) => {
                let q = p.signed_rational()?;
                Scalar::from_rational(field, &q)
                    .map_err(|_| Error::parse(0, "denominator not invertible"))?
            }
        };
        p.finish()?;
        Ok(value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Gaussian(g) => {
                if g.im.is_zero() {
                    write!(f, "{}", fmt_rational(&g.re))
                } else {
                    let sign = if g.im.is_negative() { '-' } else { '+' };
                    write!(
                        f,
                        "{}{}{}i",
                        fmt_rational(&g.re),
                        sign,
                        fmt_rational(&g.im.abs())
                    )
                }
            }
            Scalar::Prime(r) => write!(f, "{}", r.value),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.trim().as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "trailing characters"))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    /// `digits ['/' digits]`, no sign.
    fn magnitude(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn signed_rational(&mut self) -> Result<BigRational> {
        let neg = self.sign().unwrap_or(false);
        let q = self.magnitude()?;
        Ok(if neg { -q } else { q })
    }

    /// `[±]re [±im i]`, `[±][im]i`.
    fn gaussian(&mut self) -> Result<Gaussian> {
        let neg = self.sign().unwrap_or(false);
        let first = if self.peek() == Some(b'i') {
            BigRational::one()
        } else {
            self.magnitude()?
        };
        let first = if neg { -first } else { first };
        if self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok(Gaussian {
                re: BigRational::zero(),
                im: first,
            });
        }
        let at = self.pos;
        match self.sign() {
            None => Ok(Gaussian {
                re: first,
                im: BigRational::zero(),
            }),
            Some(neg_im) => {
                let im = if self.peek() == Some(b'i') {
                    BigRational::one()
                } else {
                    self.magnitude()?
                };
                if self.peek() != Some(b'i') {
                    return Err(Error::parse(at, "imaginary part must end with `i`"));
                }
                self.pos += 1;
                Ok(Gaussian {
                    re: first,
                    im: if neg_im { -im } else { im },
                })
            }
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = Residue::new(a, n).pow(d).value;
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
