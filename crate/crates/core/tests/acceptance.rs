//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use recmat::binom::{
    chi_b, chi_b_binomial, det_formula, det_formula_factored, qbinomial_eval_root, qbinomial_row,
    root_of_unity, DetKind,
};
use recmat::catalog::{
    bidiagonal, brute_matrix, default_xy, inverse_pairs, mprime, order_of_two, preset,
    root_of_order, triangular_row_checks, zprime, BruteKind, BruteParams, Gamma,
};
use recmat::dense::rational_valuation;
use recmat::groups::{
    enumerate_relations, known_relators, mu1_expand, verify_relation, Group, GroupWord,
    RelationPoly, SearchCaps,
};
use recmat::recmat::{DiagonalWalker, Factored};
use recmat::solve::{
    infer_from_oracle, invert, ldlt_certificate, lu_decompose, tensor_ldlt, InferenceCaps,
};
use recmat::{Error, Field, Presentation, Scalar};

type Outcome = Result<String, String>;

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let el = t.elapsed();
    if el > limit {
        return Err(format!("{what} took {el:?}, limit {limit:?}"));
    }
    Ok(())
}

/// Brute leading minors of sizes `1..=max` against the closed form.
fn det_sweep(kind: DetKind, bk: BruteKind, max: usize, limit: Duration) -> Outcome {
    let t = Instant::now();
    let minors = brute_matrix(bk, max, &BruteParams::default())
        .and_then(|m| m.leading_minors())
        .map_err(e2s)?;
    for n in 1..=max {
        let f = det_formula(kind, n as u64).map_err(e2s)?;
        if f != minors[n - 1] {
            return fail(format!("n={n}: brute {} formula {f}", minors[n - 1]));
        }
    }
    within(t, limit, "sweep")?;
    Ok(format!("sizes 1..{max} in {:.2?}", t.elapsed()))
}

fn c1() -> Outcome {
    det_sweep(DetKind::Mod2, BruteKind::Mod2, 512, Duration::from_secs(60))
}

fn c2() -> Outcome {
    det_sweep(DetKind::Valuation, BruteKind::Valuation, 256, Duration::from_secs(120))
}

fn c3() -> Outcome {
    let detail = det_sweep(DetKind::Beeblebrox, BruteKind::Beeblebrox, 256, Duration::from_secs(120))?;
    let minors = brute_matrix(BruteKind::Beeblebrox, 256, &BruteParams::default())
        .and_then(|m| m.leading_minors())
        .map_err(e2s)?;
    for (k, d) in minors.iter().enumerate() {
        let f = d
            .to_rational()
            .and_then(|q| Factored::from_rational(&q))
            .ok_or_else(|| format!("n={}: {d} does not factor", k + 1))?;
        if f.is_zero() || f.factors().any(|(p, _)| p != 3) {
            return fail(format!("n={}: {d} is not ±3^k", k + 1));
        }
    }
    Ok(detail + ", all in ±3^Z")
}

fn c4() -> Outcome {
    det_sweep(DetKind::Jacobi, BruteKind::Jacobi, 128, Duration::from_secs(120))
}

fn c5() -> Outcome {
    let mut row = vec![BigInt::from(1)];
    let mut checked = 0u64;
    for n in 0..1024u64 {
        if n > 0 {
            let mut next = vec![BigInt::from(1)];
            next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::from(1));
            row = next;
        }
        for (k, c) in row.iter().enumerate() {
            let fast = chi_b_binomial(n, k as u64).map_err(e2s)?;
            if fast != chi_b(c) {
                return fail(format!("({n},{k}): recursion {fast}, exact {}", chi_b(c)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn c6() -> Outcome {
    let mut checked = 0;
    for order in [1u32, 2, 4] {
        let w = root_of_unity(order).map_err(e2s)?;
        for a in 0..64u64 {
            let polys = qbinomial_row(a);
            for b in 0..=a {
                let direct = polys[b as usize].eval(&w);
                let fast = qbinomial_eval_root(a, b, order).map_err(e2s)?;
                if direct != fast {
                    return fail(format!("order {order} ({a},{b}): {fast} vs {direct}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} evaluations at 1, -1, i"))
}

fn c7() -> Outcome {
    let mut parts = Vec::new();
    for (a, l, d) in [("P", "L_P", "D_P"), ("V", "L_V", "D_V"), ("Z", "L_Z", "D_Z"), ("J", "L_J", "D_J")] {
        let t = Instant::now();
        let c = ldlt_certificate(&preset(a).map_err(e2s)?, &preset(l).map_err(e2s)?, &preset(d).map_err(e2s)?)
            .map_err(|e| format!("{a}: {e}"))?;
        within(t, Duration::from_secs(10), a)?;
        parts.push(format!("{a} (dim {})", c.closure_dim));
    }
    let id = Presentation::identity(Field::Rational);
    let pairs = inverse_pairs().map_err(e2s)?;
    for (label, x, y) in &pairs {
        let p = x.mul(y).map_err(e2s)?.minimize();
        if !p.equal(&id).map_err(e2s)? {
            return fail(format!("{label} is not the identity"));
        }
    }
    Ok(format!("{}; {} inverse pairs", parts.join(", "), pairs.len()))
}

fn c8() -> Outcome {
    let caps = InferenceCaps::default();
    let pairs = inverse_pairs().map_err(e2s)?;
    for (label, x, expected) in &pairs {
        let inv = invert(x, caps).map_err(|e| format!("{label}: {e}"))?;
        if !inv.inverse.equal(expected).map_err(e2s)? {
            return fail(format!("{label}: inferred inverse differs from the catalog"));
        }
    }
    let lu = lu_decompose(&preset("Z").map_err(e2s)?, true, caps).map_err(e2s)?;
    let l_ok = lu.l.equal(&preset("L_Z").map_err(e2s)?).map_err(e2s)?;
    let d_ok = lu.second.equal(&preset("D_Z").map_err(e2s)?).map_err(e2s)?;
    if !(l_ok && d_ok) {
        return fail(format!("lu(Z): L matches {l_ok}, D matches {d_ok}"));
    }
    Ok(format!(
        "{} inverses; lu(Z) = (L_Z, D_Z) with dims {}, {}",
        pairs.len(),
        lu.l.dim(),
        lu.second.dim()
    ))
}

fn c9() -> Outcome {
    let mut dims = Vec::new();
    for (kind, expected) in [
        (BruteKind::Mod2, 1),
        (BruteKind::Valuation, 2),
        (BruteKind::Beeblebrox, 3),
        (BruteKind::Jacobi, 9),
    ] {
        let caps = InferenceCaps::default();
        let table = brute_matrix(kind, 1 << caps.max_data_level, &BruteParams::default()).map_err(e2s)?;
        let p = infer_from_oracle(kind.field(), |i, j| table.get(i as usize, j as usize).clone(), 7, caps)
            .map_err(|e| format!("{}: {e}", kind.name()))?;
        if p.dim() != expected {
            return fail(format!("{}: dimension {} instead of {expected}", kind.name(), p.dim()));
        }
        dims.push(format!("{} {}", kind.name(), p.dim()));
    }
    Ok(format!("{} at depth 7", dims.join(", ")))
}

fn c10() -> Outcome {
    let rels = known_relators();
    for (g, text) in &rels {
        let w = GroupWord::parse(*g, text).map_err(e2s)?;
        if verify_relation(&w).map_err(e2s)?.is_none() {
            return fail(format!("{g}: {text} does not hold"));
        }
    }
    let found = enumerate_relations(Group::GammaL, 4, SearchCaps::default()).map_err(e2s)?;
    let expected: Vec<GroupWord> = ["b d^-1 c a^-1", "c a^-1 c a^-1"]
        .iter()
        .map(|s| GroupWord::parse(Group::GammaL, s).map(|w| w.normalized()))
        .collect::<Result<_, _>>()
        .map_err(e2s)?;
    if found.len() != 2 || !expected.iter().all(|w| found.contains(w)) {
        let f: Vec<String> = found.iter().map(ToString::to_string).collect();
        return fail(format!("search found [{}]", f.join(", ")));
    }
    Ok(format!("{} relators certified; search returns the two length-4 relators", rels.len()))
}

fn c11() -> Outcome {
    let out = mu1_expand(&RelationPoly::parse("A A^-1 - 1").map_err(e2s)?);
    let target = RelationPoly::parse("C A^-1 - D B^-1").map_err(e2s)?;
    if !out.contains(&target) {
        return fail("C A^-1 - D B^-1 missing");
    }
    for p in &out {
        if p.certify().map_err(e2s)?.is_none() {
            return fail(format!("{p} does not vanish"));
        }
    }
    Ok(format!("{} outputs, all certified", out.len()))
}

fn c12() -> Outcome {
    let fermat = brute_matrix(BruteKind::Fermat, 20, &BruteParams::default())
        .and_then(|m| m.leading_minors())
        .map_err(e2s)?;
    let one = Scalar::one(Field::Rational);
    if let Some(k) = fermat.iter().position(|d| *d != one) {
        return fail(format!("Fermat n={}: {}", k + 1, fermat[k]));
    }
    for q in [2i64, 3] {
        let params = BruteParams {
            q,
            ..BruteParams::default()
        };
        let minors = brute_matrix(BruteKind::PascalQ, 10, &params)
            .and_then(|m| m.leading_minors())
            .map_err(e2s)?;
        for n in 1..=10u32 {
            let e: u32 = (0..n).map(|j| j * j).sum();
            let expected = Scalar::from_bigint(Field::Rational, &BigInt::from(q).pow(e));
            if minors[n as usize - 1] != expected {
                return fail(format!("q={q} n={n}: {}", minors[n as usize - 1]));
            }
        }
    }
    Ok("Fermat 1..20; P_q for q = 2, 3 and n <= 10".into())
}

fn c13() -> Outcome {
    let caps = InferenceCaps::default();
    let [z, _, _] = zprime().map_err(e2s)?;
    let tl = tensor_ldlt(&z, caps).map_err(e2s)?;
    let prods = tl.d.diag_prefix_products(128).map_err(e2s)?;
    let minors = brute_matrix(BruteKind::ZPrime, 128, &BruteParams::default())
        .and_then(|m| m.leading_minors())
        .map_err(e2s)?;
    if let Some(k) = (0..128).find(|&k| prods[k] != minors[k]) {
        return fail(format!("Z' n={}: tensor {} brute {}", k + 1, prods[k], minors[k]));
    }
    let (x, y) = default_xy();
    for gamma in [Gamma::Mod2, Gamma::Beeblebrox] {
        let [m, l, d] = mprime(&x, &y, gamma).map_err(e2s)?;
        for level in 2..=6 {
            let (mw, lw, dw) = (
                m.window(level).map_err(e2s)?,
                l.window(level).map_err(e2s)?,
                d.window(level).map_err(e2s)?,
            );
            let ldlt = lw.mul(&dw).and_then(|x| x.mul(&lw.transpose())).map_err(e2s)?;
            if ldlt != mw {
                return fail(format!("M' != L'D'L'^t at level {level} for {gamma:?}"));
            }
        }
        let params = BruteParams {
            gamma,
            ..BruteParams::default()
        };
        let minors = brute_matrix(BruteKind::MPrime, 64, &params)
            .and_then(|m| m.leading_minors())
            .map_err(e2s)?;
        for n in 1..=64usize {
            let q = minors[n - 1].to_rational().ok_or("non-rational determinant")?;
            let v5 = rational_valuation(&q, 5).ok_or("zero determinant")?;
            let v11 = rational_valuation(&q, 11).ok_or("zero determinant")?;
            if (v5 > 0) != (n % 4 == 2) || (v11 > 0) != (n % 4 == 3) {
                return fail(format!("{gamma:?} n={n}: det {q}"));
            }
        }
    }
    Ok("Z' sizes 1..128; M' windows to level 6 and factor pattern to n = 64 for both gamma".into())
}

fn c14() -> Outcome {
    let checks = triangular_row_checks(4096);
    match checks.iter().find(|c| !c.holds()) {
        Some(c) => fail(format!("row {}: +{} -{}", c.row, c.plus, c.minus)),
        None => Ok(format!("{} rows", checks.len())),
    }
}

fn c15() -> Outcome {
    let caps = InferenceCaps::default();
    let hilbert = invert(&preset("Hilbert").map_err(e2s)?, caps);
    let hilbert_msg = match hilbert {
        Err(Error::CapExceeded(m)) => m,
        other => return fail(format!("Hilbert: {other:?}")),
    };
    match invert(&preset("AllOnes").map_err(e2s)?, caps) {
        Err(Error::SingularAtLevel(1)) => {}
        other => return fail(format!("all-ones: {other:?}")),
    }
    Ok(format!("Hilbert: CapExceeded ({hilbert_msg}); all-ones: SingularAtLevel(1)"))
}

fn c16() -> Outcome {
    let mut parts = Vec::new();
    for (n, p) in [(5u64, 11u64), (7, 29), (9, 19)] {
        let w = root_of_order(n, p).map_err(e2s)?.ok_or(format!("no root of order {n} mod {p}"))?;
        let a = bidiagonal(p, w).map_err(e2s)?;
        let inv = invert(&a, InferenceCaps::default()).map_err(|e| format!("N={n}: {e}"))?;
        let c = inv.inverse.minimize().dim();
        let bound = 1 + order_of_two(n) as usize;
        if c < bound {
            return fail(format!("N={n}: complexity {c} < {bound}"));
        }
        parts.push(format!("N={n} over F_{p}: {c} >= {bound}"));
    }
    Ok(parts.join("; "))
}

fn c17() -> Outcome {
    let n = 1_000_000u64;
    let mut parts = Vec::new();
    for (kind, d) in [(DetKind::Mod2, "D_P"), (DetKind::Beeblebrox, "D_Z")] {
        let t = Instant::now();
        let walker = DiagonalWalker::new(&preset(d).map_err(e2s)?).map_err(e2s)?;
        let fast = walker.prefix_product(n).map_err(e2s)?.factored().ok_or("not factorable")?;
        within(t, Duration::from_secs(1), kind.name())?;
        let formula = det_formula_factored(kind, n).map_err(e2s)?;
        if fast != formula {
            return fail(format!("{}: fast {fast}, formula {formula}", kind.name()));
        }
        parts.push(format!("{} = {fast} in {:.2?}", kind.name(), t.elapsed()));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 17] = [
        ("mod-2 Pascal determinants, sizes 1..512", c1),
        ("Gaussian valuation determinants, sizes 1..256", c2),
        ("Beeblebrox determinants, sizes 1..256", c3),
        ("Jacobi determinants, sizes 1..128", c4),
        ("chi_B digit recursion, n < 1024", c5),
        ("q-binomials at roots of unity, a < 64", c6),
        ("LDL^t and inverse certificates", c7),
        ("inversion and LU inferred from presentations", c8),
        ("oracle inference dimensions", c9),
        ("group relators and relator search", c10),
        ("mu_1 expansion of A A^-1 - 1", c11),
        ("Fermat and q-Pascal determinants", c12),
        ("tensor products Z' and M'", c13),
        ("triangular Beeblebrox rows < 4096", c14),
        ("error paths: Hilbert and all-ones", c15),
        ("bidiagonal inverse complexity over F_p", c16),
        ("fast determinants at n = 10^6", c17),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| fail("panicked"));
        let el = t.elapsed();
        match res {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({el:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why} ({el:.2?})", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
