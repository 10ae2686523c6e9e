//! Groups generated by invertible recurrence matrices: words, relation
//! certificates, relator search by fingerprints, and the letterwise
//! shift expansion of non-commutative polynomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::preset;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::recmat::Presentation;
use crate::scalar::{Field, Scalar};
use crate::solve::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// `⟨a, b, c, d⟩` with `a = L₁, b = L₂/2, c = L₃, d = L₄` from the LDLᵗ
    /// factor of `Z`.
    GammaL,
    /// `⟨a, b, c⟩` with `a = Z₁, b = Z₂, c = Z₃`.
    GammaZ,
    /// `⟨L1, L2, L3⟩` from the triangular Beeblebrox matrix.
    Triangular,
}

impl Group {
    pub fn name(&self) -> &'static str {
        match self {
            Group::GammaL => "gammaL",
            Group::GammaZ => "gammaZ",
            Group::Triangular => "triangular",
        }
    }

    pub fn alphabet(&self) -> &'static [&'static str] {
        match self {
            Group::GammaL => &["a", "b", "c", "d"],
            Group::GammaZ => &["a", "b", "c"],
            Group::Triangular => &["L1", "L2", "L3"],
        }
    }

    fn generator(&self, symbol: &str) -> Result<usize> {
        self.alphabet()
            .iter()
            .position(|s| *s == symbol)
            .ok_or_else(|| Error::UnknownGenerator(format!("{symbol} in {}", self.name())))
    }

    /// Generators followed by their inverses.
    pub fn generators(&self) -> Result<Generators> {
        let q = Field::Rational;
        let half = Scalar::ratio(q, 1, 2)?;
        let (gens, invs) = match self {
            Group::GammaL => {
                let l = preset("L_Z")?;
                let m = preset("M_Z")?;
                (
                    vec![
                        l.state(0),
                        l.state(1).scale(&half)?,
                        l.state(2),
                        l.state(3),
                    ],
                    vec![
                        m.state(0),
                        m.state(2).neg(),
                        m.state(1).scale(&-&half)?,
                        m.state(3),
                    ],
                )
            }
            Group::GammaZ => {
                let z = preset("Z")?;
                let u = preset("U_Z")?;
                (
                    vec![z.state(0), z.state(1), z.state(2)],
                    vec![u.state(0), u.state(2), u.state(1)],
                )
            }
            Group::Triangular => {
                let l = preset("T")?;
                let m = preset("Minv_T")?;
                (
                    (0..3).map(|j| l.state(j)).collect(),
                    (0..3).map(|j| m.state(j)).collect(),
                )
            }
        };
        Ok(Generators {
            group: *self,
            gens,
            invs,
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Group::GammaL, Group::GammaZ, Group::Triangular]
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generator presentations of a group and of their inverses.
#[derive(Clone, Debug)]
pub struct Generators {
    pub group: Group,
    pub gens: Vec<Presentation>,
    pub invs: Vec<Presentation>,
}

impl Generators {
    fn get(&self, (g, e): (usize, i8)) -> &Presentation {
        if e > 0 {
            &self.gens[g]
        } else {
            &self.invs[g]
        }
    }

    /// Product of the generators along a word, minimized after each step.
    pub fn evaluate(&self, word: &GroupWord) -> Result<Presentation> {
        let mut acc = Presentation::identity(Field::Rational);
        for &letter in &word.letters {
            acc = acc.mul(self.get(letter))?.minimize();
        }
        Ok(acc)
    }
}

/// A word in the generators of a group and their inverses; letters are
/// `(generator index, ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    pub group: Group,
    pub letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(group: Group, letters: Vec<(usize, i8)>) -> Result<Self> {
        let n = group.alphabet().len();
        if let Some(&(g, e)) = letters.iter().find(|(g, e)| *g >= n || e.abs() != 1) {
            return Err(Error::UnknownGenerator(format!("({g}, {e}) in {}", group.name())));
        }
        Ok(GroupWord { group, letters })
    }

    /// Parses words like `b d^-1 c a^-1`, `(a b^-1)^2` or `a^2 (c b)^-1`.
    /// Single-letter generators may be written without spaces.
    pub fn parse(group: Group, text: &str) -> Result<Self> {
        let tokens = tokenize(group, text)?;
        let mut pos = 0;
        let letters = parse_seq(group, &tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::parse(pos, "unbalanced `)`"));
        }
        Ok(GroupWord { group, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            group: self.group,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord {
            group: self.group,
            letters,
        }
    }

    /// Cancels adjacent inverse pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            if out.last() == Some(&(g, -e)) {
                out.pop();
            } else {
                out.push((g, e));
            }
        }
        GroupWord {
            group: self.group,
            letters: out,
        }
    }

    /// Reduces and then cancels inverse pairs across the ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut l = self.reduced().letters;
        while l.len() >= 2 {
            let (first, last) = (l[0], l[l.len() - 1]);
            if first.0 == last.0 && first.1 == -last.1 {
                l.pop();
                l.remove(0);
            } else {
                break;
            }
        }
        GroupWord {
            group: self.group,
            letters: l,
        }
    }

    /// Least rotation of the word or its inverse.
    pub fn normalized(&self) -> Self {
        let w = self.cyclically_reduced();
        let n = w.letters.len();
        let mut best = w.letters.clone();
        for cand in [w.letters.clone(), w.inverse().letters] {
            for r in 0..n.max(1) {
                let rot: Vec<(usize, i8)> = cand[r..].iter().chain(&cand[..r]).copied().collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        GroupWord {
            group: self.group,
            letters: best,
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.group.alphabet();
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e > 0 {
                    alphabet[g].to_string()
                } else {
                    format!("{}^-1", alphabet[g])
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Gen(usize),
    Open,
    Close,
    Power(i64),
}

fn tokenize(group: Group, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() || c == '*' || c == '.' => i += 1,
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '^' => {
                let mut j = i + 1;
                let start = j;
                if j < chars.len() && chars[j].1 == '-' {
                    j += 1;
                }
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().map(|(_, c)| c).collect();
                let e = s
                    .parse::<i64>()
                    .map_err(|_| Error::parse(pos, "expected an integer exponent"))?;
                out.push(Token::Power(e));
                i = j;
            }
            c if c.is_alphabetic() => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let sym: String = chars[i..j].iter().map(|(_, c)| c).collect();
                let g = group
                    .generator(&sym)
                    .map_err(|_| Error::UnknownGenerator(format!("{sym} in {}", group.name())))?;
                out.push(Token::Gen(g));
                i = j;
            }
            _ => return Err(Error::parse(pos, format!("unexpected `{c}`"))),
        }
    }
    Ok(out)
}

fn power(letters: &[(usize, i8)], e: i64) -> Vec<(usize, i8)> {
    let base: Vec<(usize, i8)> = if e < 0 {
        letters.iter().rev().map(|&(g, s)| (g, -s)).collect()
    } else {
        letters.to_vec()
    };
    base.iter()
        .cycle()
        .take(base.len() * e.unsigned_abs() as usize)
        .copied()
        .collect()
}

fn parse_seq(group: Group, tokens: &[Token], pos: &mut usize) -> Result<Vec<(usize, i8)>> {
    let mut out = Vec::new();
    while *pos < tokens.len() {
        let atom = match &tokens[*pos] {
            Token::Gen(g) => {
                *pos += 1;
                vec![(*g, 1)]
            }
            Token::Open => {
                *pos += 1;
                let inner = parse_seq(group, tokens, pos)?;
                if tokens.get(*pos) != Some(&Token::Close) {
                    return Err(Error::parse(*pos, "missing `)`"));
                }
                *pos += 1;
                inner
            }
            Token::Close => break,
            Token::Power(_) => return Err(Error::parse(*pos, "exponent without base")),
        };
        let atom = match tokens.get(*pos) {
            Some(Token::Power(e)) => {
                *pos += 1;
                power(&atom, *e)
            }
            _ => atom,
        };
        out.extend(atom);
    }
    Ok(out)
}

/// Relators of `Γ_L` implying all relations of length `≤ 12`.
pub const GAMMA_L_RELATORS: [&str; 8] = [
    "b d^-1 c a^-1",
    "c a^-1 c a^-1",
    "c a d^-1 a^-1 d^2 a^-1 b^-1",
    "c a d^-1 c^-1 b d a^-1 b^-1",
    "c d a^-2 d a d^-1 b^-1",
    "c a^2 d^-1 a^-2 d a d a^-2 b^-1",
    "d^2 a d^-2 b^-1 c a d a^-3",
    "c d a d^-2 a^-1 d a d a^-2 b^-1",
];

/// `(ab⁻¹)² = 1`, `ab = ca`, `a² = cb` in `Γ_Z`.
pub const GAMMA_Z_RELATORS: [&str; 3] = ["(a b^-1)^2", "a b (c a)^-1", "a^2 (c b)^-1"];

/// `L₂² = L₁L₃`, `L₂L₃ = L₁L₂`, `L₂L₁ = L₃L₂`.
pub const TRIANGULAR_RELATORS: [&str; 3] = ["L2^2 (L1 L3)^-1", "L2 L3 (L1 L2)^-1", "L2 L1 (L3 L2)^-1"];

/// The relator lists above with their groups.
pub fn known_relators() -> Vec<(Group, &'static str)> {
    let mut out: Vec<(Group, &'static str)> = GAMMA_L_RELATORS.iter().map(|s| (Group::GammaL, *s)).collect();
    out.extend(GAMMA_Z_RELATORS.iter().map(|s| (Group::GammaZ, *s)));
    out.extend(TRIANGULAR_RELATORS.iter().map(|s| (Group::Triangular, *s)));
    out
}

/// Evaluates a word to a minimized presentation.
pub fn evaluate_word(w: &GroupWord) -> Result<Presentation> {
    w.group.generators()?.evaluate(w)
}

/// Certifies `w = 1` exactly; `Ok(None)` when the word is not a relation.
pub fn verify_relation(w: &GroupWord) -> Result<Option<Certificate>> {
    verify_with(&w.group.generators()?, w)
}

fn verify_with(gens: &Generators, w: &GroupWord) -> Result<Option<Certificate>> {
    let x = gens.evaluate(w)?;
    let diff = x.sub(&Presentation::identity(Field::Rational))?;
    match Certificate::check(format!("{w} - 1"), &diff) {
        Ok(c) => Ok(Some(c)),
        Err(Error::ValidationMismatch { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Bounds for [`enumerate_relations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    /// Fingerprints are the windows of levels `0..=depth`.
    pub depth: usize,
    pub max_len: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            depth: 4,
            max_len: 8,
        }
    }
}

/// Relators of length `≤ max_len` up to rotation, inversion and
/// consequence: a relator is dropped when [`derivable`] rewrites it to the
/// empty word using the relators kept before it.
pub fn enumerate_relations(group: Group, max_len: usize, caps: SearchCaps) -> Result<Vec<GroupWord>> {
    let all = enumerate_all_relators(group, max_len, caps)?;
    let mut kept: Vec<GroupWord> = Vec::new();
    for r in all {
        if !derivable(&r, &kept, r.len() + 4, 20_000) {
            kept.push(r);
        }
    }
    Ok(kept)
}

/// Searches for a proof that `w = 1` follows from `relators`: repeatedly
/// replace a factor `u` of a rotation of `w` by `v⁻¹` whenever `u v` is a
/// rotation of a relator or its inverse, reducing cyclically after each
/// step. Words longer than `max_len` and states beyond `max_states` are
/// not explored, so `false` means no proof was found.
pub fn derivable(w: &GroupWord, relators: &[GroupWord], max_len: usize, max_states: usize) -> bool {
    let mut forms: Vec<Vec<(usize, i8)>> = Vec::new();
    for r in relators {
        for base in [r.letters.clone(), r.inverse().letters] {
            for k in 0..base.len() {
                let rot: Vec<_> = base[k..].iter().chain(&base[..k]).copied().collect();
                if !forms.contains(&rot) {
                    forms.push(rot);
                }
            }
        }
    }
    let start = w.normalized();
    if start.is_empty() {
        return true;
    }
    let mut seen: BTreeSet<GroupWord> = BTreeSet::from([start.clone()]);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let n = cur.letters.len();
        for k in 0..n {
            let rot: Vec<_> = cur.letters[k..].iter().chain(&cur.letters[..k]).copied().collect();
            for f in &forms {
                for cut in 1..=f.len() {
                    let (u, v) = f.split_at(cut);
                    if !rot.starts_with(u) {
                        continue;
                    }
                    let mut letters: Vec<_> = v.iter().rev().map(|&(g, e)| (g, -e)).collect();
                    letters.extend_from_slice(&rot[cut..]);
                    let next = GroupWord {
                        group: cur.group,
                        letters,
                    }
                    .normalized();
                    if next.is_empty() {
                        return true;
                    }
                    if next.len() <= max_len && seen.len() < max_states && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    false
}

/// All cyclically reduced relators of length `≤ max_len`, up to rotation
/// and inversion, in order of length. Two reduced words `u ≠ v` of length
/// `≤ ⌈max_len/2⌉` with equal fingerprints give a candidate `u v⁻¹`,
/// which is kept only once certified.
pub fn enumerate_all_relators(group: Group, max_len: usize, caps: SearchCaps) -> Result<Vec<GroupWord>> {
    if max_len > caps.max_len {
        return Err(Error::CapExceeded(format!(
            "relator length {max_len} exceeds {}",
            caps.max_len
        )));
    }
    let gens = group.generators()?;
    let windows = |p: &Presentation| -> Vec<DenseMatrix> {
        (0..=caps.depth).map(|l| p.materialize(l)).collect()
    };
    let letter_windows: Vec<Vec<DenseMatrix>> = (0..group.alphabet().len())
        .flat_map(|g| [(g, 1i8), (g, -1i8)])
        .map(|l| windows(gens.get(l)))
        .collect();
    let letter_index = |(g, e): (usize, i8)| 2 * g + usize::from(e < 0);
    let key = |ws: &[DenseMatrix]| -> String {
        ws.iter()
            .flat_map(|m| m.entries().iter().map(Scalar::to_string))
            .collect::<Vec<_>>()
            .join(",")
    };
    let half = max_len.div_ceil(2);
    let identity_windows: Vec<DenseMatrix> = (0..=caps.depth)
        .map(|l| DenseMatrix::identity(Field::Rational, 1 << l))
        .collect();
    let mut classes: HashMap<String, Vec<GroupWord>> = HashMap::new();
    let mut layer = vec![(GroupWord::new(group, Vec::new())?, identity_windows)];
    classes
        .entry(key(&layer[0].1))
        .or_default()
        .push(layer[0].0.clone());
    for _ in 0..half {
        let mut next = Vec::new();
        for (w, ws) in &layer {
            for g in 0..group.alphabet().len() {
                for e in [1i8, -1] {
                    if w.letters.last() == Some(&(g, -e)) {
                        continue;
                    }
                    let lw = &letter_windows[letter_index((g, e))];
                    let prod: Vec<DenseMatrix> = ws
                        .iter()
                        .zip(lw)
                        .map(|(a, b)| a.mul(b))
                        .collect::<Result<_>>()?;
                    let mut letters = w.letters.clone();
                    letters.push((g, e));
                    let word = GroupWord { group, letters };
                    classes.entry(key(&prod)).or_default().push(word.clone());
                    next.push((word, prod));
                }
            }
        }
        layer = next;
    }
    let mut found: BTreeSet<(usize, GroupWord)> = BTreeSet::new();
    let mut rejected: BTreeSet<GroupWord> = BTreeSet::new();
    for words in classes.values() {
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                let r = u.concat(&v.inverse()).normalized();
                if r.is_empty() || r.len() > max_len {
                    continue;
                }
                if found.iter().any(|(_, f)| *f == r) || rejected.contains(&r) {
                    continue;
                }
                if verify_with(&gens, &r)?.is_some() {
                    found.insert((r.len(), r));
                } else {
                    rejected.insert(r);
                }
            }
        }
    }
    Ok(found.into_iter().map(|(_, w)| w).collect())
}

/// Symbols of the free algebra on `A^{±1}, B^{±1}, C^{±1}, D^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub generator: usize,
    pub inverse: bool,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = ["A", "B", "C", "D"][self.generator];
        if self.inverse {
            write!(f, "{c}^-1")
        } else {
            f.write_str(c)
        }
    }
}

/// A non-commutative polynomial with rational coefficients in the eight
/// symbols; the empty monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationPoly {
    terms: BTreeMap<Vec<Symbol>, BigRational>,
}

impl RelationPoly {
    pub fn zero() -> Self {
        RelationPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigRational::one())
    }

    pub fn monomial(word: Vec<Symbol>, c: BigRational) -> Self {
        let mut p = RelationPoly::zero();
        p.add_term(word, c);
        p
    }

    /// The polynomial of a `Γ_L` word.
    pub fn from_word(w: &GroupWord) -> Result<Self> {
        if w.group != Group::GammaL {
            return Err(Error::UnknownGenerator(format!(
                "polynomials are over the gammaL alphabet, not {}",
                w.group
            )));
        }
        Ok(Self::monomial(
            w.letters
                .iter()
                .map(|&(g, e)| Symbol {
                    generator: g,
                    inverse: e < 0,
                })
                .collect(),
            BigRational::one(),
        ))
    }

    /// Parses sums like `A A^-1 - 1` or `2/3 B D^-1 - A C^-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = RelationPoly::zero();
        let mut negative = false;
        let mut current = String::new();
        let mut flush = |current: &mut String, negative: bool| -> Result<()> {
            let t = current.trim();
            if t.is_empty() {
                return Ok(());
            }
            let mut coeff = BigRational::one();
            let mut word = Vec::new();
            for part in t.split_whitespace() {
                if part.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    let v: BigRational = part
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad coefficient `{part}`")))?;
                    coeff *= v;
                    continue;
                }
                let w = GroupWord::parse(Group::GammaL, &part.to_lowercase())?;
                word.extend(w.letters.iter().map(|&(g, e)| Symbol {
                    generator: g,
                    inverse: e < 0,
                }));
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(word, coeff);
            current.clear();
            Ok(())
        };
        let mut prev = ' ';
        for c in text.chars() {
            match c {
                '+' | '-' if prev != '^' => {
                    flush(&mut current, negative)?;
                    negative = c == '-';
                }
                _ => current.push(c),
            }
            if !c.is_whitespace() {
                prev = c;
            }
        }
        flush(&mut current, negative)?;
        Ok(p)
    }

    fn add_term(&mut self, word: Vec<Symbol>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Symbol], &BigRational)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = RelationPoly::zero();
        for (w, v) in &self.terms {
            p.add_term(w.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = RelationPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                p.add_term(w, a * b);
            }
        }
        p
    }

    /// Value in the algebra generated by `Γ_L`.
    pub fn evaluate(&self) -> Result<Presentation> {
        let gens = Group::GammaL.generators()?;
        let q = Field::Rational;
        let mut acc = Presentation::zero(q);
        for (w, c) in &self.terms {
            let word = GroupWord {
                group: Group::GammaL,
                letters: w
                    .iter()
                    .map(|s| (s.generator, if s.inverse { -1 } else { 1 }))
                    .collect(),
            };
            let x = gens.evaluate(&word)?.scale(&Scalar::Rational(c.clone()))?;
            acc = acc.add(&x)?.minimize();
        }
        Ok(acc)
    }

    /// Certifies that the polynomial vanishes on `Γ_L`.
    pub fn certify(&self) -> Result<Option<Certificate>> {
        match Certificate::check(self.to_string(), &self.evaluate()?) {
            Ok(c) => Ok(Some(c)),
            Err(Error::ValidationMismatch { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Two monomials `u v⁻¹` and `w x⁻¹` with opposite coefficients, each
    /// a positive word followed by an inverse word of the same length.
    pub fn is_signed_difference(&self) -> bool {
        let balanced = |m: &[Symbol]| {
            let k = m.iter().take_while(|s| !s.inverse).count();
            m[k..].iter().all(|s| s.inverse) && 2 * k == m.len()
        };
        let terms: Vec<_> = self.terms.iter().collect();
        terms.len() == 2
            && terms[0].1 == &-terms[1].1
            && terms.iter().all(|(m, _)| balanced(m))
    }
}

impl fmt::Display for RelationPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let a = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word: Vec<String> = w.iter().map(Symbol::to_string).collect();
            match (a.is_one(), word.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&word.join(" "))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a} {}", word.join(" "))?,
            }
        }
        Ok(())
    }
}

type Block = [[RelationPoly; 2]; 2];

fn mu1_symbol(s: Symbol) -> Block {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let m = |g: usize, inv: bool, c: BigRational| {
        RelationPoly::monomial(
            vec![Symbol {
                generator: g,
                inverse: inv,
            }],
            c,
        )
    };
    let z = RelationPoly::zero;
    let (a, b, c, d) = (0, 1, 2, 3);
    match (s.generator, s.inverse) {
        (0, false) => [[m(a, false, r(1, 1)), z()], [m(c, false, r(1, 1)), m(d, false, r(1, 1))]],
        (0, true) => [[m(a, true, r(1, 1)), z()], [m(b, true, r(-1, 1)), m(d, true, r(1, 1))]],
        (1, false) => [
            [m(a, false, r(-1, 3)), m(b, false, r(2, 1))],
            [m(c, false, r(1, 3)), m(d, false, r(1, 1))],
        ],
        (1, true) => [
            [m(a, true, r(-1, 1)), m(c, true, r(2, 1))],
            [m(b, true, r(1, 3)), m(d, true, r(1, 3))],
        ],
        (2, false) => [
            [m(a, false, r(1, 1)), m(b, false, r(2, 1))],
            [m(c, false, r(1, 1)), m(d, false, r(1, 1))],
        ],
        (2, true) => [
            [m(a, true, r(-1, 1)), m(c, true, r(2, 1))],
            [m(b, true, r(1, 1)), m(d, true, r(-1, 1))],
        ],
        (3, false) => [[m(a, false, r(1, 1)), z()], [m(c, false, r(1, 3)), m(d, false, r(1, 1))]],
        (3, true) => [[m(a, true, r(1, 1)), z()], [m(b, true, r(-1, 3)), m(d, true, r(1, 1))]],
        _ => unreachable!("four generators"),
    }
}

fn block_mul(x: &Block, y: &Block) -> Block {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]))))
}

/// Applies the substitution `μ₁` letterwise and returns the non-zero
/// entries of the resulting `2 × 2` matrix, without repetition.
pub fn mu1_expand(r: &RelationPoly) -> Vec<RelationPoly> {
    let mut total: Block = Default::default();
    for (w, c) in &r.terms {
        let mut acc: Block = [
            [RelationPoly::one(), RelationPoly::zero()],
            [RelationPoly::zero(), RelationPoly::one()],
        ];
        for &s in w {
            acc = block_mul(&acc, &mu1_symbol(s));
        }
        for i in 0..2 {
            for j in 0..2 {
                total[i][j] = total[i][j].add(&acc[i][j].scale(c));
            }
        }
    }
    let mut out: Vec<RelationPoly> = Vec::new();
    for p in total.into_iter().flatten() {
        if !p.is_zero() && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Outcome of the checks on the triangular Beeblebrox group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularReport {
    /// `L1 L3 = L3 L1`.
    pub commute: bool,
    /// `L2² = L1 L3`, `L2 L3 = L1 L2`, `L2 L1 = L3 L2`.
    pub relations: [bool; 3],
    /// No `π₂(L1)^α π₂(L3)^β = Id` with `(α, β) ≠ 0` in the exponent box.
    pub free_abelian: bool,
    /// `π₂(L2)` is not of the form `π₂(L1)^α π₂(L3)^β` in the box.
    pub l2_outside: bool,
    pub exponent_bound: i64,
}

impl TriangularReport {
    pub fn passed(&self) -> bool {
        self.commute && self.relations.iter().all(|&r| r) && self.free_abelian && self.l2_outside
    }
}

fn dense_power(m: &DenseMatrix, inv: &DenseMatrix, e: i64) -> Result<DenseMatrix> {
    let base = if e < 0 { inv } else { m };
    let mut acc = DenseMatrix::identity(m.field(), m.rows());
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(base)?;
    }
    Ok(acc)
}

/// Exact checks that the triangular group is the affine group generated
/// by `(x, y) ↦ (x+2, y)`, `(y+1, x+1)`, `(x, y+2)`: the three relations,
/// commutation, and the 4 × 4 window test over `|α|, |β| ≤ bound`.
pub fn triangular_checks(bound: i64) -> Result<TriangularReport> {
    let g = Group::Triangular;
    let holds = |text: &str| -> Result<bool> {
        Ok(verify_relation(&GroupWord::parse(g, text)?)?.is_some())
    };
    let commute = holds("L1 L3 L1^-1 L3^-1")?;
    let relations = [
        holds(TRIANGULAR_RELATORS[0])?,
        holds(TRIANGULAR_RELATORS[1])?,
        holds(TRIANGULAR_RELATORS[2])?,
    ];
    let gens = g.generators()?;
    let pi2 = |p: &Presentation| p.materialize(2);
    let (l1, l2, l3) = (pi2(&gens.gens[0]), pi2(&gens.gens[1]), pi2(&gens.gens[2]));
    let (i1, i3) = (pi2(&gens.invs[0]), pi2(&gens.invs[2]));
    let id = DenseMatrix::identity(Field::Rational, 4);
    let mut free_abelian = true;
    let mut l2_outside = true;
    let p1: Vec<DenseMatrix> = (-bound..=bound)
        .map(|a| dense_power(&l1, &i1, a))
        .collect::<Result<_>>()?;
    let p3: Vec<DenseMatrix> = (-bound..=bound)
        .map(|b| dense_power(&l3, &i3, b))
        .collect::<Result<_>>()?;
    for (ia, x) in p1.iter().enumerate() {
        for (ib, y) in p3.iter().enumerate() {
            let prod = x.mul(y)?;
            let zero = ia as i64 == bound && ib as i64 == bound;
            if !zero && prod == id {
                free_abelian = false;
            }
            if prod == l2 {
                l2_outside = false;
            }
        }
    }
    Ok(TriangularReport {
        commute,
        relations,
        free_abelian,
        l2_outside,
        exponent_bound: bound,
    })
}

/// Determinants of `π_level` of the generators of `Γ_Z`.
pub fn gamma_z_determinants(level: usize) -> Result<[Scalar; 3]> {
    let gens = Group::GammaZ.generators()?;
    Ok([
        gens.gens[0].materialize(level).det()?,
        gens.gens[1].materialize(level).det()?,
        gens.gens[2].materialize(level).det()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = GroupWord::parse(Group::GammaL, "bd^-1ca^-1").unwrap();
        assert_eq!(w.to_string(), "b d^-1 c a^-1");
        let w = GroupWord::parse(Group::GammaZ, "(a b^-1)^2").unwrap();
        assert_eq!(w.to_string(), "a b^-1 a b^-1");
        let w = GroupWord::parse(Group::GammaZ, "a^2 (c b)^-1").unwrap();
        assert_eq!(w.to_string(), "a a b^-1 c^-1");
        let w = GroupWord::parse(Group::Triangular, "L2^2 (L1 L3)^-1").unwrap();
        assert_eq!(w.len(), 4);
        assert!(matches!(
            GroupWord::parse(Group::GammaZ, "d"),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn normalization() {
        let w = GroupWord::parse(Group::GammaL, "a^-1 b d^-1 c").unwrap();
        let v = GroupWord::parse(Group::GammaL, "b d^-1 c a^-1").unwrap();
        assert_eq!(w.normalized(), v.normalized());
        assert_eq!(v.inverse().normalized(), v.normalized());
        let r = GroupWord::parse(Group::GammaL, "a b b^-1 a^-1").unwrap();
        assert!(r.cyclically_reduced().is_empty());
    }

    #[test]
    fn generators_invert() {
        for g in [Group::GammaL, Group::GammaZ, Group::Triangular] {
            let gens = g.generators().unwrap();
            for (x, y) in gens.gens.iter().zip(&gens.invs) {
                let p = x.mul(y).unwrap().minimize();
                assert!(p.equal(&Presentation::identity(Field::Rational)).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn poly_parse() {
        let p = RelationPoly::parse("A A^-1 - 1").unwrap();
        assert_eq!(p.to_string(), "-1 + A A^-1");
        let q = RelationPoly::parse("2/3 B D^-1 - A C^-1").unwrap();
        assert_eq!(q.terms().count(), 2);
    }
    fn normal(g: Group, s: &str) -> GroupWord {
        GroupWord::parse(g, s).unwrap().normalized()
    }

    #[test]
    fn gamma_l_search() {
        let caps = SearchCaps::default();
        assert!(enumerate_relations(Group::GammaL, 2, caps).unwrap().is_empty());
        let found = enumerate_relations(Group::GammaL, 4, caps).unwrap();
        let expected = [normal(Group::GammaL, "b d^-1 c a^-1"), normal(Group::GammaL, "c a^-1 c a^-1")];
        assert_eq!(found.len(), 2);
        assert!(expected.iter().all(|w| found.contains(w)));
        let all = enumerate_all_relators(Group::GammaL, 4, caps).unwrap();
        assert!(all.contains(&normal(Group::GammaL, "(b d^-1)^2")));
        assert!(matches!(
            enumerate_relations(Group::GammaL, 10, caps),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn gamma_z_search() {
        let found = enumerate_relations(Group::GammaZ, 4, SearchCaps::default()).unwrap();
        assert!(found.contains(&normal(Group::GammaZ, "(a b^-1)^2")));
    }

    #[test]
    fn derivations() {
        let g = Group::GammaL;
        let rels = [normal(g, "b d^-1 c a^-1"), normal(g, "c a^-1 c a^-1")];
        assert!(derivable(&normal(g, "(b d^-1)^2"), &rels, 8, 1000));
        assert!(derivable(&normal(g, "b d^-1 a c^-1"), &rels, 8, 1000));
        assert!(!derivable(&normal(g, "c a^-1 c a^-1"), &rels[..1], 8, 1000));
    }

    #[test]
    fn mu1_identity_relation() {
        let out = mu1_expand(&RelationPoly::parse("A A^-1 - 1").unwrap());
        let expected = ["A A^-1 - 1", "D D^-1 - 1", "C A^-1 - D B^-1"]
            .map(|t| RelationPoly::parse(t).unwrap());
        assert_eq!(out.len(), 3);
        assert!(expected.iter().all(|p| out.contains(p)));
        assert!(mu1_expand(&RelationPoly::zero()).is_empty());
        for p in mu1_expand(&RelationPoly::parse("B B^-1 - 1").unwrap()) {
            assert!(p.certify().unwrap().is_some(), "{p}");
        }
    }

    #[test]
    fn mu1_keeps_signed_differences() {
        for p in mu1_expand(&RelationPoly::parse("B D^-1 - A C^-1").unwrap()) {
            assert!(p.is_signed_difference(), "{p}");
            assert!(p.certify().unwrap().is_some(), "{p}");
        }
    }

    #[test]
    fn triangular_report() {
        assert!(triangular_checks(10).unwrap().passed());
    }

    #[test]
    fn gamma_z_index_two() {
        let d = gamma_z_determinants(1).unwrap();
        assert_eq!(d[0], Scalar::from_int(Field::Rational, -1));
        assert_eq!(d[1], Scalar::from_int(Field::Rational, 1));
        assert_eq!(d[2], Scalar::from_int(Field::Rational, 1));
    }

    #[test]
    fn known_relators_certify() {
        for (g, text) in known_relators() {
            let w = GroupWord::parse(g, text).unwrap();
            assert!(verify_relation(&w).unwrap().is_some(), "{g}: {text}");
        }
        let w = GroupWord::parse(Group::GammaL, "a b").unwrap();
        assert!(verify_relation(&w).unwrap().is_none());
    }
}
