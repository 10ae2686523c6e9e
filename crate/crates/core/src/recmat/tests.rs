use proptest::prelude::*;

use super::*;
use crate::catalog::preset;

fn q(n: i64) -> Scalar {
    Scalar::from_int(Field::Rational, n)
}

fn random_presentation(dim: usize, init: Vec<i64>, shifts: Vec<i64>, select: Vec<i64>) -> Presentation {
    let f = Field::Rational;
    let mats: Vec<DenseMatrix> = (0..4)
        .map(|x| {
            DenseMatrix::from_fn(f, dim, dim, |i, j| q(shifts[x * dim * dim + i * dim + j]))
        })
        .collect();
    Presentation::from_dense(
        f,
        init.into_iter().map(q).collect(),
        [&mats[0], &mats[1], &mats[2], &mats[3]],
        select.into_iter().map(q).collect(),
        (0..dim).map(|i| format!("X{i}")).collect(),
    )
    .unwrap()
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|d| {
        (
            prop::collection::vec(-2i64..=2, d),
            prop::collection::vec(-1i64..=1, 4 * d * d),
            prop::collection::vec(-1i64..=1, d),
        )
            .prop_map(move |(i, s, v)| random_presentation(d, i, s, v))
    })
}

#[test]
fn identity_and_zero() {
    let f = Field::Rational;
    assert_eq!(Presentation::identity(f).materialize(3), DenseMatrix::identity(f, 8));
    assert!(Presentation::zero(f).materialize(2).is_zero());
    assert!(Presentation::zero(f).is_zero().is_zero());
    assert_eq!(Presentation::identity(f).complexity(), 1);
}

#[test]
fn pascal_entries() {
    let p = preset("P").unwrap();
    let m = p.materialize(4);
    for i in 0..16u64 {
        for j in 0..16u64 {
            let expected = i64::from(i & j == 0);
            assert_eq!(m.get(i as usize, j as usize), &q(expected));
        }
    }
    assert_eq!(p.entry(40, 1 << 39, 1 << 39).unwrap(), q(0));
    assert_eq!(p.entry(40, 1 << 39, (1 << 39) - 1).unwrap(), q(1));
    assert!(matches!(p.entry(2, 4, 0), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn convergence() {
    assert!(preset("P").unwrap().is_convergent());
    assert!(!preset("Odd").unwrap().is_convergent());
}

#[test]
fn witness_for_difference() {
    let z = preset("Z").unwrap();
    let p = preset("P").unwrap();
    let check = z.sub(&p).unwrap().is_zero();
    let w = check.witness.expect("Z differs from P");
    let diff = z.materialize(w.level).sub(&p.materialize(w.level)).unwrap();
    assert_eq!(diff.get(w.row as usize, w.col as usize), &w.value);
    assert!(!w.value.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocks_are_shifts(a in arb_presentation(), s in 0usize..2, t in 0usize..2) {
        for level in 1..5 {
            let whole = a.materialize(level);
            prop_assert_eq!(whole.quarter(s, t).unwrap(), a.shift(s, t).materialize(level - 1));
        }
    }

    #[test]
    fn entry_matches_materialize(a in arb_presentation()) {
        let m = a.materialize(3);
        for i in 0..8u64 {
            for j in 0..8u64 {
                prop_assert_eq!(&a.entry(3, i, j).unwrap(), m.get(i as usize, j as usize));
            }
        }
    }

    #[test]
    fn minimize_preserves_and_is_idempotent(a in arb_presentation()) {
        let m = a.minimize();
        prop_assert!(m.dim() <= a.dim());
        prop_assert!(m.equal(&a).unwrap());
        for level in 0..5 {
            prop_assert_eq!(m.materialize(level), a.materialize(level));
        }
        let mm = m.minimize();
        prop_assert_eq!(mm.dim(), m.dim());
    }

    #[test]
    fn complexity_bounds(a in arb_presentation(), b in arb_presentation()) {
        let (ca, cb) = (a.complexity(), b.complexity());
        prop_assert!(a.add(&b).unwrap().complexity() <= ca + cb);
        prop_assert!(a.mul(&b).unwrap().complexity() <= ca * cb);
        prop_assert_eq!(a.transpose().complexity(), ca);
    }

    #[test]
    fn arithmetic_is_levelwise(a in arb_presentation(), b in arb_presentation()) {
        for level in 0..4 {
            let (x, y) = (a.materialize(level), b.materialize(level));
            prop_assert_eq!(a.add(&b).unwrap().materialize(level), x.add(&y).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().materialize(level), x.mul(&y).unwrap());
            prop_assert_eq!(a.transpose().materialize(level), x.transpose());
        }
    }

    #[test]
    fn zero_test_agrees_with_windows(a in arb_presentation(), b in arb_presentation()) {
        let d = a.sub(&b).unwrap();
        let check = d.is_zero();
        let bound = a.dim() + b.dim();
        let windows_zero = (0..=bound).all(|l| d.materialize(l).is_zero());
        prop_assert_eq!(check.is_zero(), windows_zero);
    }

    #[test]
    fn json_round_trip(a in arb_presentation()) {
        let back = Presentation::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }
}
