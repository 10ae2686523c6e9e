//! Worked examples for scalars, presentations and the catalog, checked
//! against direct big-integer oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use recmat::catalog::{brute_det, brute_matrix, preset, triangular_row_check, BruteKind, BruteParams};
use recmat::dense::DenseMatrix;
use recmat::{Field, Presentation, Scalar};

const Q: Field = Field::Rational;

fn q(n: i64) -> Scalar {
    Scalar::from_int(Q, n)
}

fn ratio(a: i64, b: i64) -> Scalar {
    Scalar::ratio(Q, a, b).unwrap()
}

/// `C(n, k)` by the multiplicative formula.
fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// χ_B: `0` on even numbers, `±1` on `±1 mod 4`.
fn chi_b_oracle(x: &BigInt) -> i64 {
    match x.mod_floor(&BigInt::from(4)).to_string().as_str() {
        "1" => 1,
        "3" => -1,
        _ => 0,
    }
}

#[test]
fn scalar_arithmetic() {
    let g = Field::Gaussian;
    let one = Scalar::one(g);
    let i = Scalar::i();
    assert_eq!(&(&one + &i) * &(&one - &i), Scalar::from_int(g, 2));
    let inv = (&i - &one).inv().unwrap();
    assert_eq!(inv.to_string(), "-1/2-1/2i");
    let f7 = Field::prime(7).unwrap();
    assert_eq!(&Scalar::residue(3, 7).unwrap() * &Scalar::residue(5, 7).unwrap(), Scalar::one(f7));
    assert_eq!(ratio(-1, 3).to_string(), "-1/3");
    assert_eq!(Scalar::parse("2/4", Q).unwrap(), ratio(1, 2));
    assert_eq!((&i - &one).to_string(), "-1+1i");
    assert!(q(1).checked_add(&one).is_err());
    assert!(Field::prime(9).is_err());
}

#[test]
fn materialize_catalog() {
    let p = preset("P").unwrap();
    assert_eq!(p.materialize(1), DenseMatrix::from_ints(Q, &[&[1, 1], &[1, 0]]));
    let z = preset("Z").unwrap();
    let expected = DenseMatrix::from_fn(Q, 4, 4, |s, t| q(chi_b_oracle(&binom((s + t) as u64, s as u64))));
    assert_eq!(z.materialize(2), expected);
    assert_eq!(
        z.materialize(2),
        DenseMatrix::from_ints(Q, &[&[1, 1, 1, 1], &[1, 0, -1, 0], &[1, -1, 0, 0], &[1, 0, 0, 0]])
    );
    assert!(Presentation::zero(Q).materialize(3).is_zero());
    assert_eq!(
        preset("D_Z").unwrap().materialize(2).diag(),
        vec![q(1), q(-1), q(3), ratio(-1, 3)]
    );
}

#[test]
fn single_entries() {
    let z = preset("Z").unwrap();
    assert_eq!(z.entry(2, 2, 1).unwrap(), q(-1));
    assert_eq!(z.entry(20, 3, 5).unwrap(), q(chi_b_oracle(&binom(8, 3))));
    assert_eq!(z.entry(20, 3, 5).unwrap(), q(0));
    let p = preset("P").unwrap();
    for k in [0u64, 1, 513, 1023] {
        assert_eq!(p.entry(10, 0, k).unwrap(), q(1));
    }
    for (s, t) in [(37u64, 91u64), (500, 12), (1000, 23)] {
        assert_eq!(z.entry(11, s, t).unwrap(), q(chi_b_oracle(&binom(s + t, s))));
    }
}

#[test]
fn shifts_and_convergence() {
    let p = preset("P").unwrap();
    assert!(p.shift(0, 0).equal(&p).unwrap());
    assert!(p.shift(1, 1).is_zero().is_zero());
    let z = preset("Z").unwrap();
    assert!(z.shift(0, 1).equal(&z.state(1)).unwrap());
}

#[test]
fn scaling_and_sums() {
    let f = Q;
    let id = Presentation::identity(f);
    assert_eq!(id.scale(&q(5)).unwrap().materialize(3), DenseMatrix::identity(f, 8).scale(&q(5)).unwrap());
    let p = preset("P").unwrap();
    assert!(p.scale(&q(0)).unwrap().equal(&Presentation::zero(f)).unwrap());
    let even = preset("Even").unwrap();
    let odd = preset("Odd").unwrap();
    assert_eq!(even.complexity(), 2);
    let sum = even.add(&odd).unwrap();
    assert!(sum.equal(&id).unwrap());
    assert_eq!(sum.minimize().dim(), 1);
    assert!(even.mul(&odd).unwrap().is_zero().is_zero());
    assert!(p.add(&Presentation::zero(f)).unwrap().equal(&p).unwrap());
    let z = preset("Z").unwrap();
    assert!(z.add(&z.scale(&q(-1)).unwrap()).unwrap().is_zero().is_zero());
}

#[test]
fn products_and_transposes() {
    let id = Presentation::identity(Q);
    let (l, li) = (preset("L_P").unwrap(), preset("Linv_P").unwrap());
    assert!(l.mul(&li).unwrap().equal(&id).unwrap());
    let d = preset("D_P").unwrap();
    assert!(d.mul(&d).unwrap().equal(&id).unwrap());
    let z = preset("Z").unwrap();
    assert!(z.transpose().equal(&z).unwrap());
    assert!(z.state(1).transpose().equal(&z.state(2)).unwrap());
    assert!(l.transpose().transpose().equal(&l).unwrap());
}

#[test]
fn complexities() {
    assert_eq!(preset("Z").unwrap().minimize().dim(), 3);
    assert_eq!(preset("J").unwrap().minimize().dim(), 9);
    assert_eq!(preset("L_J").unwrap().minimize().dim(), 20);
    assert_eq!(preset("D_J").unwrap().minimize().dim(), 4);
    for name in recmat::catalog::PRESETS {
        let x = preset(name).unwrap();
        assert!(x.minimize().equal(&x).unwrap(), "{name}");
    }
}

#[test]
fn zero_witness() {
    let z = preset("Z").unwrap();
    let p = preset("P").unwrap();
    assert!(!z.equal(&p).unwrap());
    let w = z.sub(&p).unwrap().is_zero().witness.unwrap();
    assert_eq!(w.level, 2);
    // Z is symmetric and P too, so the witness may sit on either side.
    assert!((w.row, w.col) == (2, 1) || (w.row, w.col) == (1, 2));
    assert_eq!(w.value, q(-2));
}

#[test]
fn left_shift_windows() {
    let z = preset("Z").unwrap().materialize(2);
    assert_eq!(z.left_shift_window(0, 0).unwrap(), DenseMatrix::from_ints(Q, &[&[1, 1], &[1, 0]]));
    assert_eq!(z.left_shift_window(1, 0).unwrap(), DenseMatrix::from_ints(Q, &[&[1, -1], &[1, 0]]));
    let m = DenseMatrix::from_ints(Q, &[&[1, 2], &[3, 4]]);
    assert_eq!(m.left_shift_window(1, 0).unwrap(), DenseMatrix::from_ints(Q, &[&[3]]));
}

#[test]
fn brute_catalog() {
    let p = BruteParams::default();
    assert_eq!(
        brute_matrix(BruteKind::Beeblebrox, 3, &p).unwrap(),
        DenseMatrix::from_ints(Q, &[&[1, 1, 1], &[1, 0, -1], &[1, -1, 0]])
    );
    assert_eq!(brute_matrix(BruteKind::Mod2, 2, &p).unwrap(), DenseMatrix::from_ints(Q, &[&[1, 1], &[1, 0]]));
    let g = Field::Gaussian;
    let v = brute_matrix(BruteKind::Valuation, 2, &p).unwrap();
    assert_eq!(v.get(1, 1), &Scalar::i());
    assert_eq!(v.get(0, 1), &Scalar::one(g));
    assert_eq!(brute_det(BruteKind::Beeblebrox, 3, &p).unwrap(), q(-3));
    assert_eq!(brute_det(BruteKind::Jacobi, 2, &p).unwrap(), q(-1));
    assert_eq!(brute_det(BruteKind::Fermat, 5, &p).unwrap(), q(1));
}

#[test]
fn triangular_rows() {
    let r3 = triangular_row_check(3);
    assert_eq!((r3.plus, r3.minus), (2, 2));
    assert!(r3.holds());
    let r2 = triangular_row_check(2);
    assert_eq!((r2.plus, r2.minus), (2, 0));
    let r0 = triangular_row_check(0);
    assert_eq!((r0.plus, r0.minus), (1, 0));
}

#[test]
fn zprime_window_matches_q_binomials() {
    let z = recmat::catalog::tensor_preset("Zprime").unwrap();
    // C(s+t, s) at q = -1 by the q-Pascal rule, then χ_B.
    let n = 8;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for s in 0..n {
        for t in 0..n {
            m[s][t] = if s == 0 || t == 0 {
                BigInt::one()
            } else {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                &m[s][t - 1] * sign + &m[s - 1][t]
            };
        }
    }
    let expected = DenseMatrix::from_fn(Q, n, n, |s, t| q(chi_b_oracle(&m[s][t])));
    assert_eq!(z.window(3).unwrap(), expected);
}
