//! Incremental row echelon form over a field.

use crate::scalar::{Field, Scalar};

/// Sparse column/row vector entry list.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = Scalar::one(field);
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().or(b.first()).map(Scalar::field);
    let mut acc = match field {
        Some(f) => Scalar::zero(f),
        None => return Scalar::zero(Field::Rational),
    };
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

/// Vectors inserted one at a time, kept in echelon form.
///
/// Rows are reduced only against earlier rows and normalized to a unit
/// pivot at their first non-zero position, so reduction of a new vector is
/// a single pass in insertion order. Each row also remembers how it is
/// written in terms of the inserted (original) vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    values: Vec<Scalar>,
    // row = Σ combo[j] · original_j, dense over the originals so far
    combo: Vec<Scalar>,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Reduces `v`; returns the residual and the coefficients `c` with
    /// `v = Σ c_j original_j + residual`.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        debug_assert_eq!(v.len(), self.len);
        let mut res = v.to_vec();
        let mut coeffs = zero_vec(self.field, self.rows.len());
        for row in &self.rows {
            let c = res[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            let neg = -&c;
            for (k, x) in row.values.iter().enumerate().skip(row.pivot) {
                if !x.is_zero() {
                    res[k].add_mul(&neg, x);
                }
            }
            for (j, x) in row.combo.iter().enumerate() {
                coeffs[j].add_mul(&c, x);
            }
        }
        (res, coeffs)
    }

    /// Coordinates of `v` in the inserted vectors, if it lies in their span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (res, coeffs) = self.reduce(v);
        if is_zero_vec(&res) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Inserts `v` if it is independent; returns its index among the
    /// originals. Otherwise returns its coordinates as `Err`.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<usize, Vec<Scalar>> {
        let (mut res, coeffs) = self.reduce(v);
        let Some(pivot) = res.iter().position(|x| !x.is_zero()) else {
            return Err(coeffs);
        };
        let index = self.rows.len();
        let inv = res[pivot].inv().expect("non-zero pivot");
        for x in res.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // residual = v − Σ coeffs_j original_j
        let mut combo: Vec<Scalar> = coeffs.iter().map(|c| -&(c * &inv)).collect();
        combo.push(inv);
        for row in &mut self.rows {
            row.combo.push(Scalar::zero(self.field));
        }
        self.rows.push(Row {
            pivot,
            values: res,
            combo,
        });
        Ok(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(Field::Rational, x)).collect()
    }

    #[test]
    fn coordinates_refer_to_inserted_vectors() {
        let mut e = Echelon::new(Field::Rational, 3);
        assert_eq!(e.insert(&v(&[0, 2, 1])), Ok(0));
        assert_eq!(e.insert(&v(&[1, 1, 0])), Ok(1));
        let c = e.coordinates(&v(&[3, 7, 2])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(e.coordinates(&v(&[0, 0, 1])).is_none());
        assert_eq!(e.insert(&v(&[2, 4, 1])), Err(v(&[1, 2])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn later_rows_do_not_disturb_earlier_pivots() {
        let mut e = Echelon::new(Field::Rational, 3);
        e.insert(&v(&[1, 1, 1])).unwrap();
        e.insert(&v(&[1, 2, 3])).unwrap();
        e.insert(&v(&[1, 0, 5])).unwrap();
        let target = v(&[4, -3, 17]);
        let c = e.coordinates(&target).unwrap();
        let originals = [v(&[1, 1, 1]), v(&[1, 2, 3]), v(&[1, 0, 5])];
        let mut back = zero_vec(Field::Rational, 3);
        for (cj, o) in c.iter().zip(&originals) {
            for k in 0..3 {
                back[k].add_mul(cj, &o[k]);
            }
        }
        assert_eq!(back, target);
    }
}
