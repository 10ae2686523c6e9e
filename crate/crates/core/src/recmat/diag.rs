//! Diagonal entries of convergent diagonal recurrence matrices and their
//! prefix products (determinants through an LDLᵗ factor).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Presentation;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec};
use crate::scalar::{is_prime, Field, Scalar};

/// Largest `n` for which prefix products are computed entry by entry.
const DIRECT_LIMIT: u64 = 1 << 24;

/// Trial division bound when factoring coefficients.
const TRIAL_LIMIT: u64 = 1 << 16;

/// A rational number as `sign · ∏ p^e`, with possibly huge exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    sign: i8,
    exps: BTreeMap<u64, i128>,
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            sign: 1,
            exps: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Factored {
            sign: 0,
            exps: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Exponent of the prime `p`.
    pub fn exponent(&self, p: u64) -> i128 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, i128)> + '_ {
        self.exps.iter().map(|(p, e)| (*p, *e))
    }

    /// Factors a rational whose numerator and denominator have no prime
    /// factor above the trial bound other than one 64-bit prime.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            return Some(Self::zero());
        }
        let mut f = Factored {
            sign: if q.is_negative() { -1 } else { 1 },
            exps: BTreeMap::new(),
        };
        f.absorb(&q.numer().abs(), 1)?;
        f.absorb(q.denom(), -1)?;
        Some(f)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n))).expect("small integer")
    }

    fn absorb(&mut self, n: &BigInt, sign: i128) -> Option<()> {
        let mut big = n.clone();
        let mut p = 2u64;
        while big.to_u64().is_none() {
            if p > TRIAL_LIMIT {
                return None;
            }
            let bp = BigInt::from(p);
            while (&big % &bp).is_zero() {
                *self.exps.entry(p).or_insert(0) += sign;
                big /= &bp;
            }
            p += 1;
        }
        let mut n = big.to_u64()?;
        while p * p <= n && p <= TRIAL_LIMIT {
            while n % p == 0 {
                *self.exps.entry(p).or_insert(0) += sign;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            if !is_prime(n) {
                return None;
            }
            *self.exps.entry(n).or_insert(0) += sign;
        }
        self.exps.retain(|_, e| *e != 0);
        Some(())
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero());
        }
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            let slot = exps.entry(*p).or_insert(0);
            *slot = slot.checked_add(*e)?;
        }
        exps.retain(|_, e| *e != 0);
        Some(Factored {
            sign: self.sign * other.sign,
            exps,
        })
    }

    pub fn pow(&self, e: u128) -> Option<Self> {
        if e == 0 {
            return Some(Self::one());
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let e = i128::try_from(e).ok()?;
        let mut exps = BTreeMap::new();
        for (p, x) in &self.exps {
            exps.insert(*p, x.checked_mul(e)?);
        }
        let sign = if self.sign < 0 && e % 2 == 1 { -1 } else { 1 };
        Some(Factored { sign, exps })
    }

    /// Exact value when the result has at most `max_bits` bits.
    pub fn to_rational(&self, max_bits: u64) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let mut bits = 0f64;
        for (p, e) in &self.exps {
            bits += (*p as f64).log2() * (*e as f64).abs();
        }
        if bits > max_bits as f64 {
            return None;
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.exps {
            let power = num_traits::pow(BigInt::from(*p), e.unsigned_abs() as usize);
            if *e > 0 {
                num *= power;
            } else {
                den *= power;
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        Some(BigRational::new(num, den))
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        if self.exps.is_empty() {
            return write!(f, "{sign}1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{sign}{}", parts.join("*"))
    }
}

/// A prefix product, exact or in factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductValue {
    Exact(Scalar),
    Factored(Factored),
}

impl ProductValue {
    /// The value as a scalar, unless it is too large to expand.
    pub fn to_scalar(&self, field: Field) -> Option<Scalar> {
        match self {
            ProductValue::Exact(s) => Some(s.clone()),
            ProductValue::Factored(f) => {
                Scalar::from_rational(field, &f.to_rational(1 << 26)?).ok()
            }
        }
    }

    /// Factored form, when the value is a factorable rational.
    pub fn factored(&self) -> Option<Factored> {
        match self {
            ProductValue::Factored(f) => Some(f.clone()),
            ProductValue::Exact(s) => Factored::from_rational(&s.to_rational()?),
        }
    }
}

impl fmt::Display for ProductValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductValue::Exact(s) => write!(f, "{s}"),
            ProductValue::Factored(x) => write!(f, "{x}"),
        }
    }
}

/// Walks the diagonal of a convergent diagonal element.
#[derive(Clone, Debug)]
pub struct DiagonalWalker {
    p: Presentation,
}

/// `S_νν e_j = c · e_{j'}` for monomial shift matrices.
type Child = Option<(Factored, usize)>;

impl DiagonalWalker {
    /// Checks that the element is diagonal (`ρ(0,1)` and `ρ(1,0)` vanish on
    /// its closure) and convergent.
    pub fn new(p: &Presentation) -> Result<Self> {
        let m = p.minimize();
        if m.dim() == 0 {
            return Ok(DiagonalWalker { p: m });
        }
        if !m.shift_matrix(0, 1).is_zero() || !m.shift_matrix(1, 0).is_zero() {
            return Err(Error::NotDiagonal);
        }
        let s = m.shift_matrix(0, 0).apply(m.field(), m.select());
        if s != m.select() {
            return Err(Error::NotConvergent);
        }
        Ok(DiagonalWalker { p: m })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    /// Diagonal entry `k` of the infinite matrix.
    pub fn entry(&self, k: u64) -> Scalar {
        let p = &self.p;
        if p.dim() == 0 {
            return Scalar::zero(p.field());
        }
        let mut v = p.select().to_vec();
        let bits = 64 - k.leading_zeros();
        for b in (0..bits).rev() {
            let nu = ((k >> b) & 1) as usize;
            v = p.shift_matrix(nu, nu).apply(p.field(), &v);
        }
        dot(p.init(), &v)
    }

    /// `∏_{k<n}` of the diagonal entries. Rational elements whose diagonal
    /// shifts are monomial use a subtree-collapsing walk valid for any
    /// `n < 2^64`; other elements are limited to `n ≤ 2^24`.
    pub fn prefix_product(&self, n: u64) -> Result<ProductValue> {
        if let Some(f) = self.monomial_product(n) {
            return Ok(ProductValue::Factored(f));
        }
        if n > DIRECT_LIMIT {
            return Err(Error::CapExceeded(format!(
                "direct diagonal product limited to n <= {DIRECT_LIMIT}"
            )));
        }
        let field = self.p.field();
        if self.p.dim() == 0 {
            let v = if n == 0 { Scalar::one(field) } else { Scalar::zero(field) };
            return Ok(ProductValue::Exact(v));
        }
        let bits = 64 - n.leading_zeros() as usize;
        let mut acc = Scalar::one(field);
        self.direct(self.p.select(), bits, 0, n, &mut acc);
        Ok(ProductValue::Exact(acc))
    }

    /// Multiplies into `acc` the entries `k < n` of the subtree rooted at
    /// `v`, whose leaves are `offset .. offset + 2^depth`.
    fn direct(&self, v: &[Scalar], depth: usize, offset: u64, n: u64, acc: &mut Scalar) {
        if offset >= n || acc.is_zero() {
            return;
        }
        let p = &self.p;
        if depth == 0 {
            *acc = &*acc * &dot(p.init(), v);
            return;
        }
        if is_zero_vec(v) {
            *acc = Scalar::zero(p.field());
            return;
        }
        let half = 1u64 << (depth - 1);
        for nu in 0..2 {
            let w = p.shift_matrix(nu, nu).apply(p.field(), v);
            self.direct(&w, depth - 1, offset + nu as u64 * half, n, acc);
        }
    }

    fn monomial_product(&self, n: u64) -> Option<Factored> {
        let p = &self.p;
        if p.field() != Field::Rational || p.dim() == 0 {
            return None;
        }
        let (s0, s1) = (p.shift_matrix(0, 0), p.shift_matrix(1, 1));
        if !s0.is_monomial() || !s1.is_monomial() {
            return None;
        }
        let factor = |s: &Scalar| Factored::from_rational(s.as_rational()?);
        let a = p.dim();
        let mut children: [Vec<Child>; 2] = [Vec::with_capacity(a), Vec::with_capacity(a)];
        for (nu, s) in [s0, s1].into_iter().enumerate() {
            for j in 0..a {
                let child = match s.column(j).first() {
                    None => None,
                    Some((i, c)) => Some((factor(c)?, *i)),
                };
                children[nu].push(child);
            }
        }
        let bits = 64 - n.leading_zeros() as usize;
        // full[m][j]: product over the 2^m leaves below state j
        let mut full: Vec<Vec<Factored>> = vec![p.init().iter().map(factor).collect::<Option<_>>()?];
        for m in 1..bits.max(1) {
            let leaves = 1u128 << (m - 1);
            let mut row = Vec::with_capacity(a);
            for j in 0..a {
                let mut acc = Factored::one();
                for ch in &children {
                    let part = match &ch[j] {
                        None => Factored::zero(),
                        Some((c, i)) => c.pow(leaves)?.mul(&full[m - 1][*i])?,
                    };
                    acc = acc.mul(&part)?;
                }
                row.push(acc);
            }
            full.push(row);
        }
        let subtree = |node: &Child, depth: usize| -> Option<Factored> {
            match node {
                None => Some(Factored::zero()),
                Some((c, j)) => c.pow(1u128 << depth)?.mul(&full[depth][*j]),
            }
        };
        let start = p.select().iter().position(|x| !x.is_zero())?;
        if !p.select()[start].is_one() {
            return None;
        }
        let mut node: Child = Some((Factored::one(), start));
        let mut acc = Factored::one();
        for b in (0..bits).rev() {
            let go = |node: &Child, nu: usize| -> Option<Child> {
                Some(match node {
                    None => None,
                    Some((c, j)) => match &children[nu][*j] {
                        None => None,
                        Some((d, i)) => Some((c.mul(d)?, *i)),
                    },
                })
            };
            let left = go(&node, 0)?;
            if (n >> b) & 1 == 1 {
                acc = acc.mul(&subtree(&left, b)?)?;
                node = go(&node, 1)?;
            } else {
                node = left;
            }
        }
        Some(acc)
    }
}

impl Presentation {
    /// Diagonal entry `k` of a convergent diagonal element.
    pub fn diag_entry(&self, k: u64) -> Result<Scalar> {
        Ok(DiagonalWalker::new(self)?.entry(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_arithmetic() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let a = Factored::from_rational(&q(-12, 5)).unwrap();
        assert_eq!(a.to_string(), "-2^2*3*5^-1");
        let b = a.pow(3).unwrap();
        assert_eq!(b.to_rational(64).unwrap(), q(-1728, 125));
        assert_eq!(a.mul(&Factored::zero()).unwrap(), Factored::zero());
        assert_eq!(a.pow(2).unwrap().sign(), 1);
        let big = Factored::from_i64(3).pow(1 << 100).unwrap();
        assert_eq!(big.exponent(3), 1 << 100);
        assert!(big.to_rational(1 << 20).is_none());
    }
}
