//! Recurrence matrices given by finite linear presentations.
//!
//! A presentation has `a` states `A_1..A_a`, each a sequence of
//! `2^n × 2^n` matrices. It stores the level-0 values of the states
//! (`init`), four shift matrices whose column `j` holds the coordinates of
//! the quarter-block sequence `ρ(s,t)A_j`, and a `select` vector naming
//! the element of interest `X = Σ select_j A_j`.
//!
//! Entry `(i, j)` of `X[n]` is `init · S(s_n,t_n) ··· S(s_1,t_1) · select`
//! where `(s_1,t_1)` are the most significant bits of `(i, j)`.

mod diag;
mod format;
mod notation;
mod tensor;

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;

pub use diag::{DiagonalWalker, Factored, ProductValue};
pub use format::PresentationFile;
pub use notation::parse_notation;
pub use tensor::TensorElement;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, unit_vec, zero_vec, Echelon, SparseVec};
use crate::scalar::{Field, Scalar};

/// Shift letters in closure order: `(0,0) < (0,1) < (1,0) < (1,1)`.
pub const LETTERS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn letter_index(s: usize, t: usize) -> usize {
    2 * s + t
}

/// Square matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMatrix {
    dim: usize,
    cols: Vec<SparseVec>,
}

impl ShiftMatrix {
    pub fn zeros(dim: usize) -> Self {
        ShiftMatrix {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn from_columns(dim: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert_eq!(cols.len(), dim);
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ShiftMatrix { dim, cols }
    }

    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("shift matrix must be square".into()));
        }
        let dim = m.rows();
        let cols = (0..dim)
            .map(|j| {
                (0..dim)
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (i, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        Ok(ShiftMatrix { dim, cols })
    }

    pub fn to_dense(&self, field: Field) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(field, self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.cols[j].iter().find(|(k, _)| *k == i).map(|(_, v)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Every column has at most one non-zero entry.
    pub fn is_monomial(&self) -> bool {
        self.cols.iter().all(|c| c.len() <= 1)
    }

    pub fn apply(&self, field: Field, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(field, self.dim);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, s) in &self.cols[j] {
                out[*i].add_mul(s, x);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, field: Field, row: &[Scalar]) -> Vec<Scalar> {
        self.cols
            .iter()
            .map(|col| {
                let mut acc = Scalar::zero(field);
                for (i, s) in col {
                    acc.add_mul(&row[*i], s);
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    init: Vec<Scalar>,
    shifts: [ShiftMatrix; 4],
    select: Vec<Scalar>,
    names: Vec<String>,
}

/// Outcome of [`Presentation::minimize_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Saturation {
    /// Dimension of the recursive closure, the complexity of the element.
    pub closure_dim: usize,
    /// First level `N` at which projection to levels `≤ N` is injective
    /// on the closure.
    pub level: usize,
}

/// A non-zero entry found while testing for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub level: usize,
    pub row: u64,
    pub col: u64,
    pub value: Scalar,
}

/// Result of [`Presentation::is_zero`]. When `witness` is `None` the
/// element vanishes: `init` is zero on a shift-stable space containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCheck {
    pub closure_dim: usize,
    pub depth: usize,
    pub witness: Option<Witness>,
}

impl ZeroCheck {
    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }
}

/// Breadth-first span of `start` under the shift matrices.
struct Closure {
    basis: Vec<Vec<Scalar>>,
    words: Vec<Vec<u8>>,
    /// coordinates of `S_x b_i`, indexed `[i][x]`; shorter vectors are
    /// implicitly zero padded
    images: Vec<[Vec<Scalar>; 4]>,
}

impl Closure {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn depth(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn image(&self, field: Field, i: usize, x: usize) -> Vec<Scalar> {
        let mut c = self.images[i][x].clone();
        c.resize(self.dim(), Scalar::zero(field));
        c
    }
}

impl Presentation {
    pub fn new(
        field: Field,
        init: Vec<Scalar>,
        shifts: [ShiftMatrix; 4],
        select: Vec<Scalar>,
        names: Vec<String>,
    ) -> Result<Self> {
        let a = init.len();
        let bad = |what: &str| Err(Error::DimensionMismatch(format!("{what} for {a} states")));
        if select.len() != a {
            return bad("select length");
        }
        if names.len() != a {
            return bad("state names");
        }
        if shifts.iter().any(|s| s.dim != a) {
            return bad("shift matrix size");
        }
        for v in init.iter().chain(&select).chain(
            shifts
                .iter()
                .flat_map(|s| s.cols.iter().flatten().map(|(_, v)| v)),
        ) {
            if v.field() != field {
                return Err(Error::FieldMismatch(field, v.field()));
            }
        }
        if shifts
            .iter()
            .any(|s| s.cols.iter().flatten().any(|(i, _)| *i >= a))
        {
            return bad("shift matrix row index");
        }
        Ok(Presentation {
            field,
            init,
            shifts,
            select,
            names,
        })
    }

    /// Builds a presentation from dense shift matrices.
    pub fn from_dense(
        field: Field,
        init: Vec<Scalar>,
        shifts: [&DenseMatrix; 4],
        select: Vec<Scalar>,
        names: Vec<String>,
    ) -> Result<Self> {
        let s = [
            ShiftMatrix::from_dense(shifts[0])?,
            ShiftMatrix::from_dense(shifts[1])?,
            ShiftMatrix::from_dense(shifts[2])?,
            ShiftMatrix::from_dense(shifts[3])?,
        ];
        Self::new(field, init, s, select, names)
    }

    /// The empty presentation of the zero element.
    pub fn zero(field: Field) -> Self {
        Presentation {
            field,
            init: Vec::new(),
            shifts: std::array::from_fn(|_| ShiftMatrix::zeros(0)),
            select: Vec::new(),
            names: Vec::new(),
        }
    }

    /// `I = 1,(I 0; 0 I)`.
    pub fn identity(field: Field) -> Self {
        let one = Scalar::one(field);
        let diag = ShiftMatrix::from_columns(1, vec![vec![(0, one.clone())]]);
        Presentation {
            field,
            init: vec![one.clone()],
            shifts: [diag.clone(), ShiftMatrix::zeros(1), ShiftMatrix::zeros(1), diag],
            select: vec![one],
            names: vec!["I".into()],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of states (not necessarily minimal).
    pub fn dim(&self) -> usize {
        self.init.len()
    }

    pub fn init(&self) -> &[Scalar] {
        &self.init
    }

    pub fn select(&self) -> &[Scalar] {
        &self.select
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn shift_matrix(&self, s: usize, t: usize) -> &ShiftMatrix {
        &self.shifts[letter_index(s, t)]
    }

    /// The same states with a different designated element.
    pub fn with_select(&self, select: Vec<Scalar>) -> Result<Self> {
        if select.len() != self.dim() {
            return Err(Error::DimensionMismatch("select length".into()));
        }
        let mut p = self.clone();
        p.select = select;
        Ok(p)
    }

    /// State `j` as the designated element.
    pub fn state(&self, j: usize) -> Self {
        let mut p = self.clone();
        p.select = unit_vec(self.field, self.dim(), j);
        p
    }

    pub fn state_by_name(&self, name: &str) -> Result<Self> {
        let j = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))?;
        Ok(self.state(j))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    fn apply(&self, x: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.shifts[x].apply(self.field, v)
    }

    /// The `2^level × 2^level` matrix of the designated element.
    pub fn materialize(&self, level: usize) -> DenseMatrix {
        let size = 1usize << level;
        let mut out = DenseMatrix::zeros(self.field, size, size);
        if self.dim() > 0 {
            self.fill(&self.select, level, &mut out, 0, 0);
        }
        out
    }

    fn fill(&self, v: &[Scalar], level: usize, out: &mut DenseMatrix, r0: usize, c0: usize) {
        if level == 0 {
            out.set(r0, c0, dot(&self.init, v));
            return;
        }
        let half = 1usize << (level - 1);
        for (x, (s, t)) in LETTERS.iter().enumerate() {
            let w = self.apply(x, v);
            if !is_zero_vec(&w) {
                self.fill(&w, level - 1, out, r0 + s * half, c0 + t * half);
            }
        }
    }

    /// Materializations of every state at `level`.
    pub fn materialize_states(&self, level: usize) -> Vec<DenseMatrix> {
        (0..self.dim())
            .map(|j| self.state(j).materialize(level))
            .collect()
    }

    /// Single entry of `X[level]`, walking the binary digits of `(i, j)`.
    pub fn entry(&self, level: usize, i: u64, j: u64) -> Result<Scalar> {
        let size = if level >= 64 { u64::MAX } else { (1u64 << level) - 1 };
        if i > size || j > size {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                size: size.saturating_add(1),
            });
        }
        if self.dim() == 0 {
            return Ok(Scalar::zero(self.field));
        }
        let mut v = self.select.clone();
        for bit in (0..level).rev() {
            let (s, t) = if bit >= 64 {
                (0, 0)
            } else {
                (((i >> bit) & 1) as usize, ((j >> bit) & 1) as usize)
            };
            v = self.apply(letter_index(s, t), &v);
        }
        Ok(dot(&self.init, &v))
    }

    /// `ρ(s,t)`: the sequence of `(s,t)` quarter blocks.
    pub fn shift(&self, s: usize, t: usize) -> Self {
        let mut p = self.clone();
        p.select = self.apply(letter_index(s, t), &self.select);
        p
    }

    /// Shift along a word of letters `0..4`, applied left to right.
    pub fn shift_word(&self, word: &[u8]) -> Self {
        let mut p = self.clone();
        for &x in word {
            p.select = self.apply(x as usize, &p.select);
        }
        p
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        if lambda.field() != self.field {
            return Err(Error::FieldMismatch(self.field, lambda.field()));
        }
        let mut p = self.clone();
        p.select = self.select.iter().map(|x| x * lambda).collect();
        Ok(p)
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        p.select = self.select.iter().map(|x| -x).collect();
        p
    }

    /// Sum, on the direct sum of the two state spaces.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let a = self.dim();
        let shifts = std::array::from_fn(|x| {
            let mut cols = self.shifts[x].cols.clone();
            cols.extend(other.shifts[x].cols.iter().map(|col| {
                col.iter().map(|(i, v)| (i + a, v.clone())).collect()
            }));
            ShiftMatrix {
                dim: a + other.dim(),
                cols,
            }
        });
        let concat = |x: &[Scalar], y: &[Scalar]| x.iter().chain(y).cloned().collect();
        Ok(Presentation {
            field: self.field,
            init: concat(&self.init, &other.init),
            shifts,
            select: concat(&self.select, &other.select),
            names: self.names.iter().chain(&other.names).cloned().collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product on pairs of states, `C_ij = A_i B_j`, with
    /// `ρ(s,t)(XY) = ρ(s,0)X·ρ(0,t)Y + ρ(s,1)X·ρ(1,t)Y`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (a, b) = (self.dim(), other.dim());
        let n = a * b;
        let mut init = Vec::with_capacity(n);
        let mut select = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        for i in 0..a {
            for j in 0..b {
                init.push(&self.init[i] * &other.init[j]);
                select.push(&self.select[i] * &other.select[j]);
                names.push(format!("{}*{}", self.names[i], other.names[j]));
            }
        }
        let shifts = std::array::from_fn(|x| {
            let (s, t) = LETTERS[x];
            let mut cols = Vec::with_capacity(n);
            for i in 0..a {
                for j in 0..b {
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for u in 0..2 {
                        let ca = self.shifts[letter_index(s, u)].column(i);
                        let cb = other.shifts[letter_index(u, t)].column(j);
                        for (k, xv) in ca {
                            for (l, yv) in cb {
                                acc.entry(k * b + l)
                                    .or_insert_with(|| Scalar::zero(self.field))
                                    .add_mul(xv, yv);
                            }
                        }
                    }
                    cols.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
                }
            }
            ShiftMatrix { dim: n, cols }
        });
        Ok(Presentation {
            field: self.field,
            init,
            shifts,
            select,
            names,
        })
    }

    /// Entrywise transpose at every level.
    pub fn transpose(&self) -> Self {
        let [s00, s01, s10, s11] = self.shifts.clone();
        Presentation {
            shifts: [s00, s10, s01, s11],
            ..self.clone()
        }
    }

    fn closure(&self, start: &[Scalar], check_init: bool) -> std::result::Result<Closure, Witness> {
        let field = self.field;
        let mut ech = Echelon::new(field, self.dim());
        let mut closure = Closure {
            basis: Vec::new(),
            words: Vec::new(),
            images: Vec::new(),
        };
        let mut queue = VecDeque::new();
        let push = |closure: &mut Closure,
                        ech: &mut Echelon,
                        v: Vec<Scalar>,
                        word: Vec<u8>|
         -> std::result::Result<std::result::Result<usize, Vec<Scalar>>, Witness> {
            match ech.insert(&v) {
                Ok(idx) => {
                    if check_init {
                        let value = dot(&self.init, &v);
                        if !value.is_zero() {
                            return Err(witness_at(&word, value));
                        }
                    }
                    closure.basis.push(v);
                    closure.words.push(word);
                    closure.images.push(Default::default());
                    Ok(Ok(idx))
                }
                Err(coords) => Ok(Err(coords)),
            }
        };
        if self.dim() == 0 || is_zero_vec(start) {
            return Ok(closure);
        }
        if let Ok(idx) = push(&mut closure, &mut ech, start.to_vec(), Vec::new())? {
            queue.push_back(idx);
        }
        while let Some(i) = queue.pop_front() {
            for x in 0..4 {
                let v = self.apply(x, &closure.basis[i]);
                let mut word = closure.words[i].clone();
                word.push(x as u8);
                let coords = match push(&mut closure, &mut ech, v, word)? {
                    Ok(idx) => {
                        queue.push_back(idx);
                        unit_vec(field, idx + 1, idx)
                    }
                    Err(coords) => coords,
                };
                closure.images[i][x] = coords;
            }
        }
        Ok(closure)
    }

    /// Exact zero test. The span of all shifts of the designated element
    /// is computed; the element is zero iff `init` vanishes on it.
    pub fn is_zero(&self) -> ZeroCheck {
        match self.closure(&self.select, true) {
            Ok(c) => ZeroCheck {
                closure_dim: c.dim(),
                depth: c.depth(),
                witness: None,
            },
            Err(w) => ZeroCheck {
                closure_dim: 0,
                depth: w.level,
                witness: Some(w),
            },
        }
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero().is_zero())
    }

    /// Convergent elements satisfy `ρ(0,0)X = X`: their levels are the
    /// growing corners of one infinite matrix.
    pub fn is_convergent(&self) -> bool {
        self.shift(0, 0)
            .equal(self)
            .expect("same field")
    }

    /// Minimal presentation of the designated element. Its states are
    /// `X = ρ_∅X, ρ_{w}X, …` for shift words `w` in breadth-first order,
    /// and `select` is the first unit vector.
    pub fn minimize(&self) -> Self {
        self.minimize_report().0
    }

    /// Complexity: dimension of the recursive closure.
    pub fn complexity(&self) -> usize {
        self.minimize_report().1.closure_dim
    }

    pub fn minimize_report(&self) -> (Self, Saturation) {
        let field = self.field;
        let zero = |level| {
            (
                Presentation::zero(field),
                Saturation {
                    closure_dim: 0,
                    level,
                },
            )
        };
        // span of the shifts of X
        let reach = self.closure(&self.select, false).expect("no init check");
        let d = reach.dim();
        if d == 0 {
            return zero(0);
        }
        let t: Vec<ShiftMatrix> = (0..4)
            .map(|x| {
                ShiftMatrix::from_columns(
                    d,
                    (0..d)
                        .map(|i| {
                            reach
                                .image(field, i, x)
                                .into_iter()
                                .enumerate()
                                .filter(|(_, v)| !v.is_zero())
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        let init0: Vec<Scalar> = reach.basis.iter().map(|b| dot(&self.init, b)).collect();
        if is_zero_vec(&init0) {
            return zero(0);
        }
        // functionals π₀∘ρ_w on the reachable space, by word length
        let mut fe = Echelon::new(field, d);
        let mut functionals = vec![init0.clone()];
        fe.insert(&init0).expect("non-zero");
        let mut frontier = vec![init0];
        let mut level = 0;
        loop {
            let mut next = Vec::new();
            for psi in &frontier {
                for tx in &t {
                    let phi = tx.apply_left(field, psi);
                    if fe.insert(&phi).is_ok() {
                        functionals.push(phi.clone());
                        next.push(phi);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level += 1;
            frontier = next;
        }
        let r = functionals.len();
        // quotient shifts U_x with f_i T_x = Σ_j U_x[i,j] f_j
        let quotient: [ShiftMatrix; 4] = std::array::from_fn(|x| {
            let mut cols: Vec<SparseVec> = vec![Vec::new(); r];
            for (i, f) in functionals.iter().enumerate() {
                let row = t[x].apply_left(field, f);
                let c = fe.coordinates(&row).expect("functionals are shift stable");
                for (j, v) in c.into_iter().enumerate() {
                    if !v.is_zero() {
                        cols[j].push((i, v));
                    }
                }
            }
            ShiftMatrix { dim: r, cols }
        });
        let q_select: Vec<Scalar> = functionals.iter().map(|f| f[0].clone()).collect();
        let q = Presentation {
            field,
            init: unit_vec(field, r, 0),
            shifts: quotient,
            select: q_select.clone(),
            names: vec![String::new(); r],
        };
        // re-express on the basis ρ_w X
        let fwd = q.closure(&q_select, false).expect("no init check");
        debug_assert_eq!(fwd.dim(), r);
        let shifts = std::array::from_fn(|x| {
            ShiftMatrix::from_columns(
                r,
                (0..r)
                    .map(|i| {
                        fwd.image(field, i, x)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .collect()
                    })
                    .collect(),
            )
        });
        let init = fwd.basis.iter().map(|b| b[0].clone()).collect();
        let names = fwd.words.iter().map(|w| word_name(w)).collect();
        (
            Presentation {
                field,
                init,
                shifts,
                select: unit_vec(field, r, 0),
                names,
            },
            Saturation {
                closure_dim: r,
                level,
            },
        )
    }

    /// Coordinates of `other` in the span of this presentation's states,
    /// if it lies there. The candidate found on finitely many levels is
    /// confirmed with an exact equality test.
    pub fn coordinates_of(&self, other: &Self) -> Result<Option<Vec<Scalar>>> {
        self.check_field(other)?;
        let a = self.dim();
        let level = self.observability_level();
        let target = flatten_levels(other, level);
        let mut ech = Echelon::new(self.field, target.len());
        let mut used = Vec::new();
        for j in 0..a {
            if ech.insert(&flatten_levels(&self.state(j), level)).is_ok() {
                used.push(j);
            }
        }
        let Some(c) = ech.coordinates(&target) else {
            return Ok(None);
        };
        let mut coords = zero_vec(self.field, a);
        for (k, j) in used.into_iter().enumerate() {
            coords[j] = c[k].clone();
        }
        let candidate = self.with_select(coords.clone())?;
        Ok(candidate.equal(other)?.then_some(coords))
    }

    /// Levels needed to tell apart all states (observability depth).
    fn observability_level(&self) -> usize {
        let field = self.field;
        let a = self.dim();
        if a == 0 {
            return 0;
        }
        let mut fe = Echelon::new(field, a);
        if is_zero_vec(&self.init) {
            return 0;
        }
        fe.insert(&self.init).expect("non-zero");
        let mut frontier = vec![self.init.clone()];
        let mut level = 0;
        loop {
            let mut next = Vec::new();
            for psi in &frontier {
                for s in &self.shifts {
                    let phi = s.apply_left(field, psi);
                    if fe.insert(&phi).is_ok() {
                        next.push(phi);
                    }
                }
            }
            if next.is_empty() {
                return level;
            }
            level += 1;
            frontier = next;
        }
    }
}

fn flatten_levels(p: &Presentation, level: usize) -> Vec<Scalar> {
    let mut out = Vec::new();
    for l in 0..=level {
        out.extend(p.materialize(l).entries().iter().cloned());
    }
    out
}

fn witness_at(word: &[u8], value: Scalar) -> Witness {
    let mut row = 0u64;
    let mut col = 0u64;
    for &x in word {
        let (s, t) = LETTERS[x as usize];
        row = (row << 1) | s as u64;
        col = (col << 1) | t as u64;
    }
    Witness {
        level: word.len(),
        row,
        col,
        value,
    }
}

/// `X` for the empty word, otherwise the letters as `st` pairs.
fn word_name(word: &[u8]) -> String {
    if word.is_empty() {
        return "X".to_string();
    }
    let letters: Vec<String> = word
        .iter()
        .map(|&x| {
            let (s, t) = LETTERS[x as usize];
            format!("{s}{t}")
        })
        .collect();
    format!("X.{}", letters.join("."))
}

impl fmt::Display for Presentation {
    /// One line per state in the `name = init, (b00, b01; b10, b11)`
    /// notation, followed by the designated element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |col: &SparseVec| -> String {
            if col.is_empty() {
                return "0".to_string();
            }
            let parts: Vec<String> = col
                .iter()
                .map(|(i, v)| {
                    let name = &self.names[*i];
                    if v.is_one() {
                        name.clone()
                    } else {
                        format!("({v})*{name}")
                    }
                })
                .collect();
            parts.join(" + ")
        };
        for j in 0..self.dim() {
            let b: Vec<String> = self.shifts.iter().map(|s| term(s.column(j))).collect();
            writeln!(
                f,
                "{} = {}, ({}, {}; {}, {})",
                self.names[j], self.init[j], b[0], b[1], b[2], b[3]
            )?;
        }
        let sel: Vec<(usize, Scalar)> = self
            .select
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        write!(f, "select {}", term(&sel))
    }
}

#[cfg(test)]
mod tests;
