//! Guess-and-verify: presentations inferred from finitely many levels,
//! inverses and LU/LDLᵗ factors, each certified by an exact zero test.

use std::fmt;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Echelon, SparseVec};
use crate::recmat::{Presentation, ShiftMatrix, TensorElement, ZeroCheck, LETTERS};
use crate::scalar::{Field, Scalar};

/// Search bounds. `max_level` bounds the projection depth `n`,
/// `max_word_len` the length of shift words, `max_dim` the number of
/// states and `max_data_level` the deepest level ever requested from a
/// source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InferenceCaps {
    pub max_level: usize,
    pub max_word_len: usize,
    pub max_dim: usize,
    pub max_data_level: usize,
}

impl Default for InferenceCaps {
    fn default() -> Self {
        InferenceCaps {
            max_level: 16,
            max_word_len: 8,
            max_dim: 64,
            max_data_level: 10,
        }
    }
}

/// Levels `0..=K` of a matrix sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSequence {
    field: Field,
    levels: Vec<DenseMatrix>,
}

impl TruncatedSequence {
    pub fn new(levels: Vec<DenseMatrix>) -> Result<Self> {
        let field = levels
            .first()
            .map(DenseMatrix::field)
            .ok_or_else(|| Error::InsufficientData {
                needed: 0,
                available: 0,
            })?;
        for (k, m) in levels.iter().enumerate() {
            if m.rows() != 1 << k || m.cols() != 1 << k {
                return Err(Error::DimensionMismatch(format!(
                    "level {k} must be {0}x{0}",
                    1 << k
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
        }
        Ok(TruncatedSequence { field, levels })
    }

    /// Levels `0..=max_level` of a presentation.
    pub fn from_presentation(p: &Presentation, max_level: usize) -> Self {
        TruncatedSequence {
            field: p.field(),
            levels: (0..=max_level).map(|k| p.materialize(k)).collect(),
        }
    }

    /// Leading corners of the infinite matrix `(s, t) ↦ f(s, t)`.
    pub fn from_fn(field: Field, max_level: usize, f: impl Fn(u64, u64) -> Scalar) -> Self {
        let size = 1usize << max_level;
        let top = DenseMatrix::from_fn(field, size, size, |i, j| f(i as u64, j as u64));
        TruncatedSequence {
            field,
            levels: (0..=max_level).map(|k| top.leading(1 << k)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn levels(&self) -> &[DenseMatrix] {
        &self.levels
    }

    /// Highest level present.
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Lazily computed levels of a matrix sequence. `Ok(None)` marks the end
/// of the available data.
pub trait LevelSource {
    fn field(&self) -> Field;
    fn level(&mut self, k: usize) -> Result<Option<DenseMatrix>>;
}

impl LevelSource for TruncatedSequence {
    fn field(&self) -> Field {
        self.field
    }

    fn level(&mut self, k: usize) -> Result<Option<DenseMatrix>> {
        Ok(self.levels.get(k).cloned())
    }
}

/// Leading corners of `(s, t) ↦ f(s, t)`, without bound.
pub struct OracleSource<F> {
    field: Field,
    oracle: F,
}

impl<F: Fn(u64, u64) -> Scalar> OracleSource<F> {
    pub fn new(field: Field, oracle: F) -> Self {
        OracleSource { field, oracle }
    }
}

impl<F: Fn(u64, u64) -> Scalar> LevelSource for OracleSource<F> {
    fn field(&self) -> Field {
        self.field
    }

    fn level(&mut self, k: usize) -> Result<Option<DenseMatrix>> {
        let n = 1usize << k;
        Ok(Some(DenseMatrix::from_fn(self.field, n, n, |i, j| {
            (self.oracle)(i as u64, j as u64)
        })))
    }
}

/// Levelwise inverses `A[k]⁻¹`.
struct InverseSource<'a> {
    a: &'a Presentation,
}

impl LevelSource for InverseSource<'_> {
    fn field(&self) -> Field {
        self.a.field()
    }

    fn level(&mut self, k: usize) -> Result<Option<DenseMatrix>> {
        match self.a.materialize(k).inverse() {
            Ok(m) => Ok(Some(m)),
            Err(Error::DivisionByZero) => Err(Error::SingularAtLevel(k)),
            Err(e) => Err(e),
        }
    }
}

/// Which factor of a dense `A[k] = L·U` to serve. For convergent `A` the
/// factors of `A[k]` are corners of those of `A[k+1]`, so only the deepest
/// factorization is kept.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Factor {
    Lower,
    Upper,
    Diagonal,
}

struct FactorSource<'a> {
    a: &'a Presentation,
    which: Factor,
    top: Option<(usize, DenseMatrix, DenseMatrix)>,
}

impl LevelSource for FactorSource<'_> {
    fn field(&self) -> Field {
        self.a.field()
    }

    fn level(&mut self, k: usize) -> Result<Option<DenseMatrix>> {
        if self.top.as_ref().is_none_or(|(top, _, _)| *top < k) {
            let (l, u) = self.a.materialize(k).lu()?;
            self.top = Some((k, l, u));
        }
        let (_, l, u) = self.top.as_ref().expect("computed");
        let n = 1usize << k;
        Ok(Some(match self.which {
            Factor::Lower => l.leading(n),
            Factor::Upper => u.leading(n),
            Factor::Diagonal => DenseMatrix::diagonal(self.a.field(), &u.leading(n).diag()),
        }))
    }
}

/// Cache of source levels, enforcing the data cap.
struct Data<'a> {
    source: &'a mut dyn LevelSource,
    cache: Vec<DenseMatrix>,
    exhausted: bool,
    caps: InferenceCaps,
}

impl<'a> Data<'a> {
    fn new(source: &'a mut dyn LevelSource, caps: InferenceCaps) -> Self {
        Data {
            source,
            cache: Vec::new(),
            exhausted: false,
            caps,
        }
    }

    fn get(&mut self, k: usize) -> Result<&DenseMatrix> {
        if k > self.caps.max_data_level {
            return Err(Error::CapExceeded(format!(
                "data level {k} exceeds {}",
                self.caps.max_data_level
            )));
        }
        while self.cache.len() <= k {
            let next = self.cache.len();
            if self.exhausted {
                return Err(Error::InsufficientData {
                    needed: k,
                    available: next,
                });
            }
            match self.source.level(next)? {
                Some(m) => {
                    if m.rows() != 1 << next || m.cols() != 1 << next {
                        return Err(Error::DimensionMismatch(format!(
                            "source level {next} has size {}x{}",
                            m.rows(),
                            m.cols()
                        )));
                    }
                    self.cache.push(m);
                }
                None => self.exhausted = true,
            }
        }
        Ok(&self.cache[k])
    }

    /// `π_{≤n}` of the shifted element `ρ_w T`: the blocks of `T[l+|w|]`
    /// selected by `w`, for `l = 0..=n`.
    fn projection(&mut self, word: &[u8], n: usize) -> Result<Vec<Scalar>> {
        let (mut r, mut c) = (0usize, 0usize);
        for &x in word {
            let (s, t) = LETTERS[x as usize];
            r = (r << 1) | s;
            c = (c << 1) | t;
        }
        let mut out = Vec::with_capacity(((4usize << (2 * n)) - 1) / 3);
        for l in 0..=n {
            let m = self.get(l + word.len())?;
            let size = 1usize << l;
            for i in 0..size {
                out.extend_from_slice(&m.row(r * size + i)[c * size..(c + 1) * size]);
            }
        }
        Ok(out)
    }
}

struct Candidate {
    presentation: Presentation,
    words: Vec<Vec<u8>>,
}

/// Breadth-first search over shift words, keeping those whose projection
/// `π_{≤n}` is new. Words are only extended from kept words.
fn explore(data: &mut Data, field: Field, n: usize) -> Result<Candidate> {
    let caps = data.caps;
    let len = ((4usize << (2 * n)) - 1) / 3;
    let mut ech = Echelon::new(field, len);
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut init = Vec::new();
    let mut cols: [Vec<SparseVec>; 4] = Default::default();
    let root = data.projection(&[], n)?;
    if !is_zero_vec(&root) {
        ech.insert(&root).expect("non-zero");
        init.push(root[0].clone());
        words.push(Vec::new());
    }
    let mut i = 0;
    while i < words.len() {
        for x in 0..4u8 {
            let mut w = words[i].clone();
            w.push(x);
            if w.len() > caps.max_word_len {
                return Err(Error::CapExceeded(format!(
                    "word length {} exceeds {}",
                    w.len(),
                    caps.max_word_len
                )));
            }
            let v = data.projection(&w, n)?;
            let coords = match ech.insert(&v) {
                Ok(idx) => {
                    if idx + 1 > caps.max_dim {
                        return Err(Error::CapExceeded(format!(
                            "dimension exceeds {}",
                            caps.max_dim
                        )));
                    }
                    init.push(v[0].clone());
                    words.push(w);
                    vec![(idx, Scalar::one(field))]
                }
                Err(c) => c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            };
            cols[x as usize].push(coords);
        }
        i += 1;
    }
    let d = words.len();
    let shifts = cols.map(|c| ShiftMatrix::from_columns(d, c));
    let select = (0..d)
        .map(|j| {
            if j == 0 {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
        .collect();
    let names = words.iter().map(|w| word_label(w)).collect();
    let presentation = Presentation::new(field, init, shifts, select, names)?;
    Ok(Candidate {
        presentation,
        words,
    })
}

fn word_label(word: &[u8]) -> String {
    let mut s = String::from("T");
    for &x in word {
        let (a, b) = LETTERS[x as usize];
        s.push_str(&format!(".{a}{b}"));
    }
    s
}

fn flatten(p: &Presentation, n: usize) -> Vec<Scalar> {
    (0..=n)
        .flat_map(|l| p.materialize(l).entries().to_vec())
        .collect()
}

/// Every state agrees with the data two levels deeper than the search, so
/// each shift relation is tested on one level it was not fitted on.
fn stable(data: &mut Data, c: &Candidate, n: usize) -> Result<bool> {
    for (j, w) in c.words.iter().enumerate() {
        if flatten(&c.presentation.state(j), n) != data.projection(w, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn first_mismatch(p: &Presentation, level: usize, m: &DenseMatrix) -> Option<(usize, usize)> {
    let ours = p.materialize(level);
    let size = 1usize << level;
    (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .find(|&(i, j)| ours.get(i, j) != m.get(i, j))
}

fn infer(source: &mut dyn LevelSource, caps: InferenceCaps, validate_all: bool) -> Result<Presentation> {
    let field = source.field();
    let mut data = Data::new(source, caps);
    for n in 0..=caps.max_level {
        let candidate = explore(&mut data, field, n)?;
        if !stable(&mut data, &candidate, n + 2)? {
            continue;
        }
        if validate_all {
            // a finite truncation must be reproduced on every level it has
            let mut k = 0;
            let mut ok = true;
            while let Ok(m) = data.get(k) {
                let m = m.clone();
                if first_mismatch(&candidate.presentation, k, &m).is_some() {
                    ok = false;
                    break;
                }
                k += 1;
            }
            if !ok {
                continue;
            }
        }
        return Ok(candidate.presentation.minimize());
    }
    Err(Error::CapExceeded(format!(
        "projection depth exceeds {}",
        caps.max_level
    )))
}

/// Presentation of a sequence from finitely many levels: the span of the
/// projections `π_{≤n}(ρ_w T)` is searched with growing `n` until every
/// state found is confirmed at depth `n + 1`, and the result reproduces
/// every level of `T`.
pub fn infer_from_truncation(t: &TruncatedSequence, caps: InferenceCaps) -> Result<Presentation> {
    if t.levels.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            available: t.levels.len(),
        });
    }
    let mut source = t.clone();
    infer(&mut source, caps, true)
}

/// As [`infer_from_truncation`] over any level source, pulling levels on
/// demand.
pub fn infer_from_source(source: &mut dyn LevelSource, caps: InferenceCaps) -> Result<Presentation> {
    infer(source, caps, false)
}

/// Presentation of the infinite matrix `(s, t) ↦ oracle(s, t)`, validated
/// on the full `2^depth × 2^depth` window.
pub fn infer_from_oracle(
    field: Field,
    oracle: impl Fn(u64, u64) -> Scalar,
    depth: usize,
    caps: InferenceCaps,
) -> Result<Presentation> {
    if depth < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            available: depth,
        });
    }
    let mut source = OracleSource::new(field, &oracle);
    let p = infer(&mut source, caps, false)?;
    let size = 1usize << depth;
    let window = DenseMatrix::from_fn(field, size, size, |i, j| oracle(i as u64, j as u64));
    if let Some((row, col)) = first_mismatch(&p, depth, &window) {
        return Err(Error::ValidationMismatch {
            level: depth,
            row,
            col,
        });
    }
    Ok(p)
}

/// An identity `X = 0` proved by an exact zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub identity: String,
    pub closure_dim: usize,
    pub depth: usize,
}

impl Certificate {
    /// Runs the zero test on `x`; a non-zero entry becomes
    /// [`Error::ValidationMismatch`].
    pub fn check(identity: impl Into<String>, x: &Presentation) -> Result<Self> {
        let z: ZeroCheck = x.is_zero();
        if let Some(w) = z.witness {
            return Err(Error::ValidationMismatch {
                level: w.level,
                row: w.row as usize,
                col: w.col as usize,
            });
        }
        Ok(Certificate {
            identity: identity.into(),
            closure_dim: z.closure_dim,
            depth: z.depth,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = 0 (closure dim {}, depth {})",
            self.identity, self.closure_dim, self.depth
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inversion {
    pub inverse: Presentation,
    /// `A·B − Id` and `B·A − Id`.
    pub certificates: [Certificate; 2],
}

/// Inverse from the levelwise inverses `A[k]⁻¹`, certified on both sides.
pub fn invert(a: &Presentation, caps: InferenceCaps) -> Result<Inversion> {
    let mut source = InverseSource { a };
    let b = infer(&mut source, caps, false)?;
    let id = Presentation::identity(a.field());
    let right = Certificate::check("A*B - Id", &a.mul(&b)?.minimize().sub(&id)?)?;
    let left = Certificate::check("B*A - Id", &b.mul(a)?.minimize().sub(&id)?)?;
    Ok(Inversion {
        inverse: b,
        certificates: [right, left],
    })
}

/// `A = L·U`, or `A = L·D·Lᵗ` when `symmetric`; the second factor is `U`
/// or `D` accordingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuDecomposition {
    pub l: Presentation,
    pub second: Presentation,
    pub symmetric: bool,
    pub certificate: Certificate,
}

impl LuDecomposition {
    /// `det A(m)` as the product of the first `m` diagonal entries of the
    /// second factor.
    pub fn det_prefix(&self, m: u64) -> Result<crate::recmat::ProductValue> {
        crate::recmat::DiagonalWalker::new(&self.second)?.prefix_product(m)
    }
}

/// Infers `L` and `U` (or `D`) from dense factorizations of the levels
/// of a convergent `A`, then certifies `A − L·U = 0` (or `A − L·D·Lᵗ`).
pub fn lu_decompose(a: &Presentation, symmetric: bool, caps: InferenceCaps) -> Result<LuDecomposition> {
    if !a.is_convergent() {
        return Err(Error::NotConvergent);
    }
    if symmetric && !a.equal(&a.transpose())? {
        return Err(Error::DimensionMismatch("element is not symmetric".into()));
    }
    let mut ls = FactorSource {
        a,
        which: Factor::Lower,
        top: None,
    };
    let l = infer(&mut ls, caps, false)?;
    let mut ss = FactorSource {
        a,
        which: if symmetric {
            Factor::Diagonal
        } else {
            Factor::Upper
        },
        top: ls.top.take(),
    };
    let second = infer(&mut ss, caps, false)?;
    let certificate = if symmetric {
        ldlt_certificate(a, &l, &second)?
    } else {
        let lu = l.mul(&second)?.minimize();
        Certificate::check("A - L*U", &a.sub(&lu)?)?
    };
    Ok(LuDecomposition {
        l,
        second,
        symmetric,
        certificate,
    })
}

/// Certifies `A = L·D·Lᵗ`, minimizing the partial product to keep the
/// product state space small.
pub fn ldlt_certificate(a: &Presentation, l: &Presentation, d: &Presentation) -> Result<Certificate> {
    let ld = l.mul(d)?.minimize();
    let ldlt = ld.mul(&l.transpose())?.minimize();
    Certificate::check("A - L*D*L^t", &a.sub(&ldlt)?)
}

/// LDLᵗ of `A ⊗ X` as `(L ⊗ L_X)(D ⊗ D_X)(L ⊗ L_X)ᵗ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLdlt {
    pub l: TensorElement,
    pub d: TensorElement,
    pub certificate: Certificate,
}

pub fn tensor_ldlt(a: &TensorElement, caps: InferenceCaps) -> Result<TensorLdlt> {
    let lu = lu_decompose(a.factor(), true, caps)?;
    let (lx, dx) = a.constant().ldlt()?;
    let dx = DenseMatrix::diagonal(a.constant().field(), &dx);
    Ok(TensorLdlt {
        l: TensorElement::new(lu.l, lx)?,
        d: TensorElement::new(lu.second, dx)?,
        certificate: lu.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::preset;

    #[test]
    fn round_trip_small_presets() {
        for name in ["P", "Z", "D_Z", "L_P"] {
            let p = preset(name).unwrap();
            let t = TruncatedSequence::from_presentation(&p, 6);
            let q = infer_from_truncation(&t, InferenceCaps::default()).unwrap();
            assert!(q.equal(&p).unwrap(), "{name}");
            assert_eq!(q.dim(), p.minimize().dim(), "{name}");
        }
    }

    #[test]
    fn truncation_must_have_three_levels() {
        let t = TruncatedSequence::from_presentation(&preset("P").unwrap(), 1);
        assert!(matches!(
            infer_from_truncation(&t, InferenceCaps::default()),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn short_truncation_runs_out() {
        let t = TruncatedSequence::from_presentation(&preset("Z").unwrap(), 2);
        assert!(matches!(
            infer_from_truncation(&t, InferenceCaps::default()),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn inverses() {
        let caps = InferenceCaps::default();
        let d = preset("D_P").unwrap();
        assert!(invert(&d, caps).unwrap().inverse.equal(&d).unwrap());
        let ones = preset("AllOnes").unwrap();
        assert!(matches!(invert(&ones, caps), Err(Error::SingularAtLevel(1))));
    }

    #[test]
    fn pascal_ldlt() {
        let lu = lu_decompose(&preset("P").unwrap(), true, InferenceCaps::default()).unwrap();
        assert!(lu.l.equal(&preset("L_P").unwrap()).unwrap());
        assert!(lu.second.equal(&preset("D_P").unwrap()).unwrap());
    }

    #[test]
    fn non_convergent_is_rejected() {
        let odd = preset("Odd").unwrap();
        assert!(matches!(
            lu_decompose(&odd, true, InferenceCaps::default()),
            Err(Error::NotConvergent)
        ));
    }
}
