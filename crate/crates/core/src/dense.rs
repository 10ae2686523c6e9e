//! Exact dense matrices.
//!
//! Determinants go through fraction-free (Bareiss) elimination on an
//! integral copy of the matrix. The elimination runs in `i128` as long as
//! every intermediate fits and switches to big integers from the first
//! overflow on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.field(), field);
                data.push(v);
            }
        }
        DenseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                data.push(v);
            }
        }
        Ok(DenseMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Integer matrix, handy in tests.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        Self::from_fn(field, rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            Scalar::from_int(field, rows[i][j])
        })
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        let data = self.data.iter().map(|a| a * c).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<Scalar>) -> Self {
        DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (r, c) = (other.rows, other.cols);
        Ok(Self::from_fn(
            self.field,
            self.rows * r,
            self.cols * c,
            |i, j| self.get(i / r, j / c) * other.get(i % r, j % c),
        ))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Leading `n×n` corner.
    pub fn leading(&self, n: usize) -> Self {
        self.submatrix(0, 0, n, n)
    }

    /// Quarter block `(s, t)` of an even-sized square matrix.
    pub fn quarter(&self, s: usize, t: usize) -> Result<Self> {
        if self.rows % 2 == 1 || self.cols % 2 == 1 {
            return Err(Error::OddSize(self.rows));
        }
        let (h, w) = (self.rows / 2, self.cols / 2);
        Ok(self.submatrix(s * h, t * w, h, w))
    }

    /// Assembles a matrix from four equally sized quarters.
    pub fn from_quarters(q: [&DenseMatrix; 4]) -> Self {
        let (h, w) = (q[0].rows, q[0].cols);
        Self::from_fn(q[0].field, 2 * h, 2 * w, |i, j| {
            q[(i / h) * 2 + j / w].get(i % h, j % w).clone()
        })
    }

    /// Rows congruent to `s` and columns congruent to `t` modulo 2.
    pub fn left_shift_window(&self, s: usize, t: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("window must be square".into()));
        }
        if self.rows % 2 == 1 {
            return Err(Error::OddSize(self.rows));
        }
        let h = self.rows / 2;
        Ok(Self::from_fn(self.field, h, h, |i, j| {
            self.get(2 * i + s, 2 * j + t).clone()
        }))
    }

    /// Determinants of all leading principal submatrices, sizes `1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<Scalar>> {
        self.require_square()?;
        let n = self.rows;
        let mut minors = match self.field {
            Field::Prime(p) => prime_minors(self, p),
            Field::Rational => {
                let (den, ints) = self.integral_rational();
                let raw = bareiss_int(&ints, n);
                scale_back(self.field, raw, &den)
            }
            Field::Gaussian => {
                let (den, ints) = self.integral_gaussian();
                let raw = bareiss_gauss(&ints, n);
                scale_back(self.field, raw, &den)
            }
        };
        // elimination without pivoting stops at the first vanishing minor
        for k in minors.len() + 1..=n {
            minors.push(self.leading(k).det_pivoted());
        }
        Ok(minors)
    }

    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(Scalar::one(self.field));
        }
        let d = match self.field {
            Field::Prime(p) => prime_minors(self, p).into_iter().nth(self.rows - 1),
            Field::Rational => {
                let (den, ints) = self.integral_rational();
                scale_back(self.field, bareiss_int(&ints, self.rows), &den)
                    .into_iter()
                    .nth(self.rows - 1)
            }
            Field::Gaussian => {
                let (den, ints) = self.integral_gaussian();
                scale_back(self.field, bareiss_gauss(&ints, self.rows), &den)
                    .into_iter()
                    .nth(self.rows - 1)
            }
        };
        Ok(d.unwrap_or_else(|| self.det_pivoted()))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )))
        }
    }

    /// Plain Gaussian elimination with row exchanges.
    fn det_pivoted(&self) -> Scalar {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one(self.field);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Scalar::zero(self.field);
            };
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("non-zero pivot");
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let factor = a.get(i, k) * &inv;
                for j in k..n {
                    let v = a.get(i, j) - &(&factor * a.get(k, j));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Scales by the lcm of all denominators; returns it with the integers.
    fn integral_rational(&self) -> (BigInt, Vec<BigInt>) {
        let mut den = BigInt::one();
        for v in &self.data {
            let q = v.as_rational().expect("rational field");
            den = den.lcm(q.denom());
        }
        let ints = self
            .data
            .iter()
            .map(|v| {
                let q = v.as_rational().expect("rational field");
                q.numer() * (&den / q.denom())
            })
            .collect();
        (den, ints)
    }

    fn integral_gaussian(&self) -> (BigInt, Vec<(BigInt, BigInt)>) {
        let mut den = BigInt::one();
        for v in &self.data {
            let g = v.as_gaussian().expect("gaussian field");
            den = den.lcm(g.re.denom()).lcm(g.im.denom());
        }
        let scale = |q: &BigRational| q.numer() * (&den / q.denom());
        let ints = self
            .data
            .iter()
            .map(|v| {
                let g = v.as_gaussian().expect("gaussian field");
                (scale(&g.re), scale(&g.im))
            })
            .collect();
        (den, ints)
    }

    /// Inverse by Gauss–Jordan elimination with row exchanges.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Self::identity(self.field, n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or(Error::DivisionByZero)?;
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    b.data.swap(k * n + j, p * n + j);
                }
            }
            let inv = a.get(k, k).inv()?;
            for j in 0..n {
                if !a.get(k, j).is_zero() {
                    let v = a.get(k, j) * &inv;
                    a.set(k, j, v);
                }
                if !b.get(k, j).is_zero() {
                    let v = b.get(k, j) * &inv;
                    b.set(k, j, v);
                }
            }
            let prow_a: Vec<(usize, Scalar)> = (0..n)
                .filter(|&j| !a.get(k, j).is_zero())
                .map(|j| (j, a.get(k, j).clone()))
                .collect();
            let prow_b: Vec<(usize, Scalar)> = (0..n)
                .filter(|&j| !b.get(k, j).is_zero())
                .map(|j| (j, b.get(k, j).clone()))
                .collect();
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let factor = -a.get(i, k);
                for (j, v) in &prow_a {
                    a.data[i * n + j].add_mul(&factor, v);
                }
                for (j, v) in &prow_b {
                    b.data[i * n + j].add_mul(&factor, v);
                }
            }
        }
        Ok(b)
    }

    /// `A = L·U` with `L` unipotent lower triangular, no pivoting.
    /// A vanishing pivot at step `k` reports [`Error::SingularMinorAt`]`(k+1)`.
    pub fn lu(&self) -> Result<(Self, Self)> {
        self.require_square()?;
        let n = self.rows;
        let mut u = self.clone();
        let mut l = Self::identity(self.field, n);
        for k in 0..n {
            let pivot = u.get(k, k).clone();
            if pivot.is_zero() {
                return Err(Error::SingularMinorAt(k + 1));
            }
            let inv = pivot.inv()?;
            let prow: Vec<(usize, Scalar)> = (k..n)
                .filter(|&j| !u.get(k, j).is_zero())
                .map(|j| (j, u.get(k, j).clone()))
                .collect();
            for i in k + 1..n {
                if u.get(i, k).is_zero() {
                    continue;
                }
                let factor = u.get(i, k) * &inv;
                let neg = -&factor;
                for (j, v) in &prow {
                    u.data[i * n + j].add_mul(&neg, v);
                }
                l.set(i, k, factor);
            }
        }
        Ok((l, u))
    }

    /// `A = L·D·Lᵗ` for symmetric `A`, no pivoting. Returns `L` and the
    /// diagonal of `D`.
    pub fn ldlt(&self) -> Result<(Self, Vec<Scalar>)> {
        if *self != self.transpose() {
            return Err(Error::DimensionMismatch("matrix is not symmetric".into()));
        }
        let (l, u) = self.lu()?;
        Ok((l, u.diag()))
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(Scalar::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

fn prime_minors(m: &DenseMatrix, p: u64) -> Vec<Scalar> {
    let n = m.rows;
    let field = Field::Prime(p);
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|v| v.as_residue().expect("prime field").value())
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut minors = Vec::with_capacity(n);
    let mut acc = 1u64;
    for k in 0..n {
        let pivot = a[k * n + k];
        if pivot == 0 {
            minors.push(Scalar::zero(field));
            break;
        }
        acc = mulm(acc, pivot);
        minors.push(Scalar::from_int(field, acc as i64));
        let inv = Scalar::from_int(field, pivot as i64)
            .inv()
            .expect("non-zero")
            .as_residue()
            .expect("prime")
            .value();
        for i in k + 1..n {
            let f = mulm(a[i * n + k], inv);
            if f == 0 {
                continue;
            }
            for j in k + 1..n {
                let t = mulm(f, a[k * n + j]);
                a[i * n + j] = (a[i * n + j] + p - t) % p;
            }
        }
    }
    minors
}

/// Converts integral minors back: the `k`-th minor was scaled by `den^k`.
fn scale_back(field: Field, raw: Vec<Scalar>, den: &BigInt) -> Vec<Scalar> {
    if den.is_one() {
        return raw;
    }
    let d = Scalar::from_bigint(field, den).inv().expect("positive");
    let mut f = d.clone();
    raw.into_iter()
        .map(|m| {
            let v = &m * &f;
            f = &f * &d;
            v
        })
        .collect()
}

/// Ring interface for fraction-free elimination. `step` returns
/// `(p·x − a·b) / prev`, or `None` when the representation overflows.
trait Bareiss: Clone {
    fn vanishes(&self) -> bool;
    fn step(p: &Self, x: &Self, a: &Self, b: &Self, prev: &Self) -> Option<Self>;
}

impl Bareiss for i128 {
    fn vanishes(&self) -> bool {
        *self == 0
    }

    fn step(p: &i128, x: &i128, a: &i128, b: &i128, prev: &i128) -> Option<i128> {
        let t = p.checked_mul(*x)?.checked_sub(a.checked_mul(*b)?)?;
        Some(t / prev)
    }
}

impl Bareiss for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn step(p: &BigInt, x: &BigInt, a: &BigInt, b: &BigInt, prev: &BigInt) -> Option<BigInt> {
        Some((p * x - a * b) / prev)
    }
}

type GI = (i128, i128);
type GB = (BigInt, BigInt);

fn gi_mul(a: &GI, b: &GI) -> Option<GI> {
    let re = a.0.checked_mul(b.0)?.checked_sub(a.1.checked_mul(b.1)?)?;
    let im = a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?;
    Some((re, im))
}

impl Bareiss for GI {
    fn vanishes(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    fn step(p: &GI, x: &GI, a: &GI, b: &GI, prev: &GI) -> Option<GI> {
        let px = gi_mul(p, x)?;
        let ab = gi_mul(a, b)?;
        let t = (px.0.checked_sub(ab.0)?, px.1.checked_sub(ab.1)?);
        if prev.1 == 0 {
            return Some((t.0 / prev.0, t.1 / prev.0));
        }
        let num = gi_mul(&t, &(prev.0, -prev.1))?;
        let norm = prev.0.checked_mul(prev.0)?.checked_add(prev.1.checked_mul(prev.1)?)?;
        Some((num.0 / norm, num.1 / norm))
    }
}

impl Bareiss for GB {
    fn vanishes(&self) -> bool {
        Zero::is_zero(&self.0) && Zero::is_zero(&self.1)
    }

    fn step(p: &GB, x: &GB, a: &GB, b: &GB, prev: &GB) -> Option<GB> {
        let re = &p.0 * &x.0 - &p.1 * &x.1 - (&a.0 * &b.0 - &a.1 * &b.1);
        let im = &p.0 * &x.1 + &p.1 * &x.0 - (&a.0 * &b.1 + &a.1 * &b.0);
        if Zero::is_zero(&prev.1) {
            return Some((re / &prev.0, im / &prev.0));
        }
        let norm = &prev.0 * &prev.0 + &prev.1 * &prev.1;
        let nre = &re * &prev.0 + &im * &prev.1;
        let nim = &im * &prev.0 - &re * &prev.1;
        Some((nre / &norm, nim / norm))
    }
}

/// Resumable elimination state: current step, next row to update, whether
/// the step's pivot was already recorded.
struct Progress<R> {
    k: usize,
    row: usize,
    recorded: bool,
    prev: R,
    minors: Vec<R>,
}

enum Outcome {
    Done,
    Overflow,
}

fn run<R: Bareiss>(a: &mut [R], n: usize, st: &mut Progress<R>) -> Outcome {
    let mut tmp: Vec<R> = Vec::with_capacity(n);
    while st.k < n {
        let k = st.k;
        if !st.recorded {
            let pivot = a[k * n + k].clone();
            let zero = pivot.vanishes();
            st.minors.push(pivot);
            st.recorded = true;
            if zero {
                return Outcome::Done;
            }
            st.row = k + 1;
        }
        let pivot = a[k * n + k].clone();
        while st.row < n {
            let i = st.row;
            tmp.clear();
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                match R::step(&pivot, &a[i * n + j], &aik, &a[k * n + j], &st.prev) {
                    Some(v) => tmp.push(v),
                    None => return Outcome::Overflow,
                }
            }
            for (j, v) in (k + 1..n).zip(tmp.drain(..)) {
                a[i * n + j] = v;
            }
            st.row += 1;
        }
        st.prev = pivot;
        st.k += 1;
        st.recorded = false;
    }
    Outcome::Done
}

fn bareiss_int(ints: &[BigInt], n: usize) -> Vec<Scalar> {
    let field = Field::Rational;
    let small: Option<Vec<i128>> = ints.iter().map(ToPrimitive::to_i128).collect();
    let big_progress = match small {
        Some(mut a) => {
            let mut st = Progress {
                k: 0,
                row: 0,
                recorded: false,
                prev: 1i128,
                minors: Vec::new(),
            };
            match run(&mut a, n, &mut st) {
                Outcome::Done => {
                    let minors = st
                        .minors
                        .into_iter()
                        .map(|m| Scalar::from_bigint(field, &BigInt::from(m)))
                        .collect();
                    return minors;
                }
                Outcome::Overflow => {
                    let big: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
                    let st = Progress {
                        k: st.k,
                        row: st.row,
                        recorded: st.recorded,
                        prev: BigInt::from(st.prev),
                        minors: st.minors.into_iter().map(BigInt::from).collect(),
                    };
                    (big, st)
                }
            }
        }
        None => (
            ints.to_vec(),
            Progress {
                k: 0,
                row: 0,
                recorded: false,
                prev: BigInt::one(),
                minors: Vec::new(),
            },
        ),
    };
    let (mut a, mut st) = big_progress;
    run(&mut a, n, &mut st);
    let minors = st
        .minors
        .iter()
        .map(|m| Scalar::from_bigint(field, m))
        .collect();
    minors
}

fn gauss_scalar(re: &BigInt, im: &BigInt) -> Scalar {
    Scalar::gaussian(
        BigRational::from_integer(re.clone()),
        BigRational::from_integer(im.clone()),
    )
}

fn bareiss_gauss(ints: &[GB], n: usize) -> Vec<Scalar> {
    let small: Option<Vec<GI>> = ints
        .iter()
        .map(|(r, i)| Some((r.to_i128()?, i.to_i128()?)))
        .collect();
    let (mut a, mut st) = match small {
        Some(mut a) => {
            let mut st = Progress {
                k: 0,
                row: 0,
                recorded: false,
                prev: (1i128, 0i128),
                minors: Vec::new(),
            };
            match run(&mut a, n, &mut st) {
                Outcome::Done => {
                    let minors = st
                        .minors
                        .into_iter()
                        .map(|(r, i)| gauss_scalar(&BigInt::from(r), &BigInt::from(i)))
                        .collect();
                    return minors;
                }
                Outcome::Overflow => {
                    let lift = |(r, i): GI| (BigInt::from(r), BigInt::from(i));
                    let big: Vec<GB> = a.into_iter().map(lift).collect();
                    let st = Progress {
                        k: st.k,
                        row: st.row,
                        recorded: st.recorded,
                        prev: lift(st.prev),
                        minors: st.minors.into_iter().map(lift).collect(),
                    };
                    (big, st)
                }
            }
        }
        None => (
            ints.to_vec(),
            Progress {
                k: 0,
                row: 0,
                recorded: false,
                prev: (BigInt::one(), BigInt::zero()),
                minors: Vec::new(),
            },
        ),
    };
    run(&mut a, n, &mut st);
    let minors = st.minors.iter().map(|(r, i)| gauss_scalar(r, i)).collect();
    minors
}

/// `p`-adic valuation of a non-zero rational.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = q.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = q.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(Q, n, d).unwrap()
    }

    #[test]
    fn fermat_minors_are_one() {
        let m = DenseMatrix::from_fn(Q, 8, 8, |i, j| {
            let mut c = BigInt::one();
            for r in 0..i {
                c = c * BigInt::from(i + j - r) / BigInt::from(r + 1);
            }
            Scalar::from_bigint(Q, &c)
        });
        for d in m.leading_minors().unwrap() {
            assert!(d.is_one());
        }
    }

    #[test]
    fn rational_minors_rescale() {
        let m = DenseMatrix::from_fn(Q, 2, 2, |i, j| q(1, (i + j + 1) as i64));
        let minors = m.leading_minors().unwrap();
        assert_eq!(minors, vec![q(1, 1), q(1, 12)]);
    }

    #[test]
    fn zero_leading_minor_falls_back() {
        let m = DenseMatrix::from_ints(Q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let minors = m.leading_minors().unwrap();
        assert_eq!(minors, vec![q(0, 1), q(-1, 1), q(-2, 1)]);
        assert_eq!(m.det().unwrap(), q(-2, 1));
    }

    #[test]
    fn gaussian_determinant() {
        let g = Field::Gaussian;
        let i = Scalar::i();
        let one = Scalar::one(g);
        let m = DenseMatrix::from_rows(g, vec![vec![one.clone(), one.clone()], vec![one, i]])
            .unwrap();
        assert_eq!(m.det().unwrap(), Scalar::parse("-1+1i", g).unwrap());
    }

    #[test]
    fn overflow_switches_to_big_integers() {
        // Hilbert-like integer matrix with huge intermediate values
        let n = 12;
        let m = DenseMatrix::from_fn(Q, n, n, |i, j| {
            Scalar::from_bigint(Q, &BigInt::from(3u32).pow((i * j) as u32 + 40))
        });
        let fast = m.det().unwrap();
        assert_eq!(fast, m.det_pivoted());
    }

    #[test]
    fn prime_field_minors() {
        let f = Field::Prime(7);
        let m = DenseMatrix::from_ints(f, &[&[2, 1], &[1, 1]]);
        let minors = m.leading_minors().unwrap();
        assert_eq!(minors[1], Scalar::one(f));
    }

    #[test]
    fn inverse_and_lu() {
        let m = DenseMatrix::from_ints(Q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(Q, 3));
        let (l, d) = m.ldlt().unwrap();
        let back = l
            .mul(&DenseMatrix::diagonal(Q, &d))
            .unwrap()
            .mul(&l.transpose())
            .unwrap();
        assert_eq!(back, m);
        let singular = DenseMatrix::from_ints(Q, &[&[1, 1], &[1, 1]]);
        assert_eq!(singular.lu(), Err(Error::SingularMinorAt(2)));
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn windows() {
        let m = DenseMatrix::from_fn(Q, 4, 4, |i, j| Scalar::from_int(Q, (4 * i + j) as i64));
        assert_eq!(
            m.left_shift_window(1, 0).unwrap(),
            DenseMatrix::from_ints(Q, &[&[4, 6], &[12, 14]])
        );
        assert_eq!(
            m.quarter(0, 1).unwrap(),
            DenseMatrix::from_ints(Q, &[&[2, 3], &[6, 7]])
        );
        let parts = [
            &m.quarter(0, 0).unwrap(),
            &m.quarter(0, 1).unwrap(),
            &m.quarter(1, 0).unwrap(),
            &m.quarter(1, 1).unwrap(),
        ];
        assert_eq!(DenseMatrix::from_quarters(parts), m);
        let odd = DenseMatrix::zeros(Q, 3, 3);
        assert_eq!(odd.left_shift_window(0, 0), Err(Error::OddSize(3)));
    }
}
