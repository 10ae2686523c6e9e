//! Inference, inversion and factorization from data alone.

use num_bigint::BigInt;
use num_integer::Integer;
use recmat::catalog::preset;
use recmat::solve::{
    infer_from_oracle, infer_from_truncation, invert, lu_decompose, InferenceCaps, TruncatedSequence,
};
use recmat::{Error, Field, Scalar};

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

#[test]
fn truncations_recover_catalog() {
    let caps = InferenceCaps::default();
    let t = TruncatedSequence::from_fn(Field::Rational, 4, |s, t| {
        Scalar::from_int(Field::Rational, i64::from(s & t == 0))
    });
    let p = infer_from_truncation(&t, caps).unwrap();
    assert_eq!(p.dim(), 1);
    assert!(p.equal(&preset("P").unwrap()).unwrap());
    let z = preset("Z").unwrap();
    let inferred = infer_from_truncation(&TruncatedSequence::from_presentation(&z, 6), caps).unwrap();
    assert_eq!(inferred.dim(), 3);
    assert!(inferred.equal(&z).unwrap());
}

#[test]
fn short_truncations_need_more_data() {
    let z = preset("Z").unwrap();
    let t = TruncatedSequence::from_presentation(&z, 1);
    assert!(matches!(
        infer_from_truncation(&t, InferenceCaps::default()),
        Err(Error::InsufficientData { .. })
    ));
}

#[test]
fn hilbert_inverse_is_out_of_reach() {
    let h = preset("Hilbert").unwrap();
    assert!(matches!(invert(&h, InferenceCaps::default()), Err(Error::CapExceeded(_))));
}

#[test]
fn inverses() {
    let caps = InferenceCaps::default();
    let d = preset("D_P").unwrap();
    assert!(invert(&d, caps).unwrap().inverse.equal(&d).unwrap());
    let l1 = preset("L_Z").unwrap();
    let m1 = preset("M_Z").unwrap();
    let inv = invert(&l1, caps).unwrap();
    assert!(inv.inverse.equal(&m1).unwrap());
    assert_eq!(inv.certificates[0].identity, "A*B - Id");
    assert!(matches!(invert(&preset("AllOnes").unwrap(), caps), Err(Error::SingularAtLevel(1))));
}

#[test]
fn factorizations() {
    let caps = InferenceCaps::default();
    for (a, l, d) in [("P", "L_P", "D_P"), ("Z", "L_Z", "D_Z"), ("V", "L_V", "D_V")] {
        let lu = lu_decompose(&preset(a).unwrap(), true, caps).unwrap();
        assert!(lu.l.equal(&preset(l).unwrap()).unwrap(), "{a}");
        assert!(lu.second.equal(&preset(d).unwrap()).unwrap(), "{a}");
    }
    let lu = lu_decompose(&preset("Z").unwrap(), true, caps).unwrap();
    assert_eq!((lu.l.dim(), lu.second.dim()), (4, 2));
    assert!(matches!(
        lu_decompose(&preset("Odd").unwrap(), true, caps),
        Err(Error::NotConvergent)
    ));
}

#[test]
fn oracles() {
    let caps = InferenceCaps::default();
    let q = Field::Rational;
    let mod2 = infer_from_oracle(q, |s, t| Scalar::from_int(q, i64::from(s & t == 0)), 5, caps).unwrap();
    assert_eq!(mod2.dim(), 1);

    let g = Field::Gaussian;
    let val = infer_from_oracle(
        g,
        |s, t| {
            let v = binom(s + t, s).trailing_zeros().unwrap_or(0);
            Scalar::i().pow(v as i64).unwrap()
        },
        6,
        caps,
    )
    .unwrap();
    assert_eq!(val.dim(), 2);
    let v = preset("V").unwrap();
    assert!(val.equal(&v).unwrap());

    let jacobi = infer_from_oracle(
        q,
        |s, t| {
            let r = binom(s + t, s).mod_floor(&BigInt::from(8));
            let c = match r.to_string().as_str() {
                "1" | "7" => 1,
                "3" | "5" => -1,
                _ => 0,
            };
            Scalar::from_int(q, c)
        },
        7,
        caps,
    )
    .unwrap();
    assert_eq!(jacobi.dim(), 9);
    assert!(jacobi.equal(&preset("J").unwrap()).unwrap());
}

#[test]
fn oracle_validation_rejects_too_shallow() {
    let q = Field::Rational;
    let caps = InferenceCaps::default();
    assert!(matches!(
        infer_from_oracle(q, |_, _| Scalar::one(q), 2, caps),
        Err(Error::InsufficientData { .. })
    ));
}
