//! Elements of the form `A ⊗ X` with a constant `2^K × 2^K` matrix `X`.
//! Level `n + K` of `A ⊗ X` is `A[n] ⊗ X`; the pair is never expanded into
//! a single presentation.

use super::{DiagonalWalker, Presentation};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    factor: Presentation,
    constant: DenseMatrix,
    order: usize,
}

impl TensorElement {
    pub fn new(factor: Presentation, constant: DenseMatrix) -> Result<Self> {
        let n = constant.rows();
        if !constant.is_square() || !n.is_power_of_two() {
            return Err(Error::NonDyadicSize(n));
        }
        if factor.field() != constant.field() {
            return Err(Error::FieldMismatch(factor.field(), constant.field()));
        }
        Ok(TensorElement {
            factor,
            constant,
            order: n.trailing_zeros() as usize,
        })
    }

    pub fn factor(&self) -> &Presentation {
        &self.factor
    }

    pub fn constant(&self) -> &DenseMatrix {
        &self.constant
    }

    /// `K` with `X` of size `2^K`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Level `level ≥ K`: `A[level − K] ⊗ X`.
    pub fn window(&self, level: usize) -> Result<DenseMatrix> {
        if level < self.order {
            return Err(Error::OutOfRange(format!(
                "level {level} below the constant's order {}",
                self.order
            )));
        }
        self.factor
            .materialize(level - self.order)
            .kron(&self.constant)
    }

    /// Leading `m × m` corner, for a convergent factor.
    pub fn leading(&self, m: usize) -> Result<DenseMatrix> {
        let need = m.max(1).next_power_of_two().trailing_zeros() as usize;
        Ok(self.window(need.max(self.order))?.leading(m))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.factor.mul(&other.factor)?,
            self.constant.mul(&other.constant)?,
        )
    }

    /// Sums are of product form only when one of the two factors agrees.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.constant == other.constant {
            return Self::new(self.factor.add(&other.factor)?, self.constant.clone());
        }
        if self.order == other.order && self.factor.equal(&other.factor)? {
            return Self::new(self.factor.clone(), self.constant.add(&other.constant)?);
        }
        Err(Error::DimensionMismatch(
            "sum of tensor elements is not a single product".into(),
        ))
    }

    pub fn transpose(&self) -> Self {
        TensorElement {
            factor: self.factor.transpose(),
            constant: self.constant.transpose(),
            order: self.order,
        }
    }

    /// Exact equality of the products `A ⊗ X` and `B ⊗ Y` for non-zero
    /// constants of the same size: `X` and `Y` must be proportional and
    /// `A`, `B` inversely so.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        if self.order != other.order {
            return Ok(false);
        }
        let pivot = self
            .constant
            .entries()
            .iter()
            .position(|x| !x.is_zero());
        let Some(k) = pivot else {
            return Ok(other.constant.is_zero() || other.factor.is_zero().is_zero());
        };
        let a = &self.constant.entries()[k];
        let b = &other.constant.entries()[k];
        if b.is_zero() {
            return Ok(self.factor.is_zero().is_zero() && other.factor.is_zero().is_zero());
        }
        // X = λ Y with λ = a / b
        let lambda = a.checked_div(b)?;
        if self.constant != other.constant.scale(&lambda)? {
            return Ok(self.factor.is_zero().is_zero() && other.factor.is_zero().is_zero());
        }
        other.factor.equal(&self.factor.scale(&lambda)?)
    }

    /// Diagonal entry `k` when the factor is convergent diagonal and the
    /// constant is diagonal.
    pub fn diag_entry(&self, k: u64) -> Result<Scalar> {
        if !self.constant.is_diagonal() {
            return Err(Error::NotDiagonal);
        }
        let walker = DiagonalWalker::new(&self.factor)?;
        let r = (k & ((1u64 << self.order) - 1)) as usize;
        Ok(&walker.entry(k >> self.order) * self.constant.get(r, r))
    }

    /// Products `∏_{k<m}` of diagonal entries for `m = 1..=n`.
    pub fn diag_prefix_products(&self, n: usize) -> Result<Vec<Scalar>> {
        if !self.constant.is_diagonal() {
            return Err(Error::NotDiagonal);
        }
        let walker = DiagonalWalker::new(&self.factor)?;
        let size = 1usize << self.order;
        let mut out = Vec::with_capacity(n);
        let mut acc = Scalar::one(self.factor.field());
        for k in 0..n {
            let d = &walker.entry((k / size) as u64) * self.constant.get(k % size, k % size);
            acc = &acc * &d;
            out.push(acc.clone());
        }
        Ok(out)
    }
}
