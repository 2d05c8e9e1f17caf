//! Coxeter systems: matrices, the word problem, finite-type detection,
//! nerves and ball enumeration.
//!
//! Elements of `W` are [`Word`]s of generator indices. The word problem is
//! solved exactly with braid-move search: a word is reduced iff no sequence
//! of braid moves produces two equal adjacent letters, and any two reduced
//! words for one element are connected by braid moves.

mod ball;
mod classify;
mod genset;
mod word;

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::complex::SimplicialComplex;

pub use ball::{Ball, DEFAULT_BALL_CAP};
pub use classify::FiniteType;
pub use genset::{GenSet, MAX_GENERATORS};
pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("coxeter matrix is empty")]
    Empty,
    #[error("coxeter matrix row {row} has {len} entries, expected {size}")]
    Ragged { row: usize, len: usize, size: usize },
    #[error("diagonal entry m({i},{i}) must be 1, found {value}")]
    BadDiagonal { i: usize, value: u32 },
    #[error("off-diagonal entry m({i},{j}) = {value} is invalid (need >= 2, or 0 for infinity)")]
    BadEntry { i: usize, j: usize, value: u32 },
    #[error("coxeter matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("{0} generators exceed the supported maximum of 64")]
    TooManyGenerators(usize),
    #[error("expected {expected} generator labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator index {index} out of range for a system with {size} generators")]
    GeneratorOutOfRange { index: usize, size: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
}

/// An entry `m(s,t)` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// File encoding: `0` stands for infinity.
    pub fn from_code(code: u32) -> Order {
        if code == 0 {
            Order::Infinite
        } else {
            Order::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Order::Finite(m) => m,
            Order::Infinite => 0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A symmetric Coxeter matrix with unit diagonal and off-diagonal entries
/// `>= 2` or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    size: usize,
    entries: Vec<Order>,
}

impl CoxeterMatrix {
    /// Builds a matrix from its file encoding (`0` = infinity).
    pub fn from_codes(rows: &[Vec<u32>]) -> Result<Self, CoxeterError> {
        let size = rows.len();
        if size == 0 {
            return Err(CoxeterError::Empty);
        }
        if size > MAX_GENERATORS {
            return Err(CoxeterError::TooManyGenerators(size));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(CoxeterError::Ragged { row, len: r.len(), size });
            }
        }
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let value = rows[i][j];
                if i == j {
                    if value != 1 {
                        return Err(CoxeterError::BadDiagonal { i, value });
                    }
                    entries.push(Order::Finite(1));
                } else {
                    if value == 1 {
                        return Err(CoxeterError::BadEntry { i, j, value });
                    }
                    if rows[j][i] != value {
                        return Err(CoxeterError::NotSymmetric { i, j });
                    }
                    entries.push(Order::from_code(value));
                }
            }
        }
        Ok(CoxeterMatrix { size, entries })
    }

    /// The matrix with every off-diagonal entry equal to `m`.
    pub fn uniform(size: usize, m: Order) -> Self {
        let entries = (0..size * size).map(|k| if k / size == k % size { Order::Finite(1) } else { m }).collect();
        CoxeterMatrix { size, entries }
    }

    /// Linear diagram `s0 - s1 - ...` with the given consecutive labels; all
    /// other pairs commute.
    pub fn linear(labels: &[u32]) -> Self {
        let size = labels.len() + 1;
        let mut m = CoxeterMatrix::uniform(size, Order::Finite(2));
        for (i, &l) in labels.iter().enumerate() {
            m.set(i, i + 1, Order::from_code(l));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, s: usize, t: usize) -> Order {
        self.entries[s * self.size + t]
    }

    /// Sets `m(s,t) = m(t,s)`. Panics on the diagonal.
    pub fn set(&mut self, s: usize, t: usize, m: Order) {
        assert_ne!(s, t, "diagonal entries are fixed at 1");
        self.entries[s * self.size + t] = m;
        self.entries[t * self.size + s] = m;
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j).code()).collect()).collect()
    }

    /// True if every off-diagonal entry is 2 or infinity.
    pub fn is_right_angled(&self) -> bool {
        (0..self.size)
            .all(|i| (0..self.size).all(|j| i == j || matches!(self.get(i, j), Order::Finite(2) | Order::Infinite)))
    }
}

/// A Coxeter system `(W, S)`: a Coxeter matrix together with generator labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    labels: Vec<String>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix, labels: Vec<String>) -> Result<Self, CoxeterError> {
        if labels.len() != matrix.size() {
            return Err(CoxeterError::LabelCount { expected: matrix.size(), got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CoxeterError::DuplicateLabel(l.clone()));
            }
        }
        Ok(CoxeterSystem { matrix, labels })
    }

    /// Labels generators `s0, s1, ...`.
    pub fn with_default_labels(matrix: CoxeterMatrix) -> Self {
        let labels = (0..matrix.size()).map(|i| format!("s{i}")).collect();
        CoxeterSystem { matrix, labels }
    }

    /// The dihedral system `I_2(m)` on generators `s, t`.
    pub fn dihedral(m: Order) -> Self {
        let mut matrix = CoxeterMatrix::uniform(2, Order::Finite(2));
        matrix.set(0, 1, m);
        CoxeterSystem { matrix, labels: vec!["s".into(), "t".into()] }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.size()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn m(&self, s: usize, t: usize) -> Order {
        self.matrix.get(s, t)
    }

    pub fn generator(&self, label: &str) -> Result<usize, CoxeterError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| CoxeterError::UnknownGenerator(label.to_string()))
    }

    pub fn all_generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn check_word(&self, w: &Word) -> Result<(), CoxeterError> {
        match w.letters().iter().find(|&&s| s >= self.rank()) {
            Some(&index) => Err(CoxeterError::GeneratorOutOfRange { index, size: self.rank() }),
            None => Ok(()),
        }
    }

    /// Parses a word written as whitespace-separated generator labels. When
    /// every label is a single character the separators may be omitted
    /// (`"sts"`). `"e"`, `"1"` and the empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, CoxeterError> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "1" {
            return Ok(Word::identity());
        }
        let tokens: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()).collect();
        let mut letters = Vec::new();
        let single_char = self.labels.iter().all(|l| l.chars().count() == 1);
        for tok in tokens {
            match self.generator(tok) {
                Ok(s) => letters.push(s),
                Err(e) if single_char => {
                    for c in tok.chars() {
                        let mut buf = [0u8; 4];
                        letters.push(self.generator(c.encode_utf8(&mut buf)).map_err(|_| e.clone())?);
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Word::new(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.letters().iter().map(|&s| self.labels[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn word_labels(&self, w: &Word) -> Vec<String> {
        w.letters().iter().map(|&s| self.labels[s].clone()).collect()
    }

    /// True iff the word is reduced (Tits' criterion).
    pub fn is_reduced(&self, w: &Word) -> Result<bool, CoxeterError> {
        self.check_word(w)?;
        Ok(word::braid_search(self, w).cancellation.is_none())
    }

    /// The ShortLex-least word representing the same element.
    ///
    /// Each letter triggers a search of the braid class of the partial
    /// product, so cost grows quickly with length in infinite groups. Words up
    /// to about 20 letters are cheap.
    pub fn normal_form(&self, w: &Word) -> Result<Word, CoxeterError> {
        self.check_word(w)?;
        let mut cur = Word::identity();
        for &s in w.letters() {
            cur = word::multiply_generator(self, &cur, s);
        }
        Ok(cur)
    }

    /// Product of two elements, in normal form. Inputs need not be reduced.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, CoxeterError> {
        self.normal_form(&u.concat(v))
    }

    /// Length of the element represented by `w`.
    pub fn length(&self, w: &Word) -> Result<usize, CoxeterError> {
        Ok(self.normal_form(w)?.len())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, CoxeterError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Exact finiteness test for the standard parabolic subgroup `W_T`, by
    /// classifying the connected components of the Coxeter diagram on `T`.
    pub fn is_spherical(&self, t: GenSet) -> bool {
        self.finite_type(t).is_some()
    }

    /// The finite types of the components of `W_T`, or `None` when `W_T` is
    /// infinite.
    pub fn finite_type(&self, t: GenSet) -> Option<Vec<FiniteType>> {
        classify::classify(self, t)
    }

    /// `|W_T|` when finite.
    pub fn parabolic_order(&self, t: GenSet) -> Option<u128> {
        let types = self.finite_type(t)?;
        types.iter().try_fold(1u128, |acc, ty| acc.checked_mul(ty.order()))
    }

    /// Cosine matrix on `T`: unit diagonal, `-cos(pi/m)` off the diagonal and
    /// `-1` for infinite entries. Rows follow increasing generator index.
    pub fn gram_matrix(&self, t: GenSet) -> DMatrix<f64> {
        let idx: Vec<usize> = t.iter().collect();
        DMatrix::from_fn(idx.len(), idx.len(), |a, b| {
            if a == b {
                1.0
            } else {
                match self.m(idx[a], idx[b]) {
                    Order::Finite(2) => 0.0,
                    Order::Finite(m) => -(PI / m as f64).cos(),
                    Order::Infinite => -1.0,
                }
            }
        })
    }

    /// The nerve `L(W,S)`: vertices `S`, simplices the nonempty spherical
    /// subsets.
    pub fn nerve(&self) -> SimplicialComplex {
        let mut nerve = SimplicialComplex::new(self.labels.clone());
        // Spherical subsets are closed under taking subsets, so every one is
        // reached by adding generators in increasing order.
        let mut frontier: Vec<GenSet> = (0..self.rank()).map(GenSet::singleton).collect();
        while let Some(t) = frontier.pop() {
            nerve.insert_simplex_unchecked(t.iter().collect());
            let top = t.iter().last().unwrap_or(0);
            for s in top + 1..self.rank() {
                let bigger = t.with(s);
                if self.is_spherical(bigger) {
                    frontier.push(bigger);
                }
            }
        }
        nerve
    }

    /// All elements of length at most `radius` (`None` = the whole group),
    /// in normal form. Fails once more than `cap` elements are produced.
    pub fn enumerate_ball(&self, radius: Option<usize>, cap: usize) -> Result<Ball, CoxeterError> {
        ball::enumerate(self, self.all_generators(), radius, cap)
    }

    /// The elements of the finite parabolic subgroup `W_T`.
    pub fn parabolic_elements(&self, t: GenSet, cap: usize) -> Result<Vec<Word>, CoxeterError> {
        Ok(ball::enumerate(self, t, None, cap)?.into_elements())
    }

    /// `w s` for `w` already in normal form.
    pub fn right_multiply(&self, w: &Word, s: usize) -> Word {
        word::multiply_generator(self, w, s)
    }

    /// True iff `l(ws) < l(w)`, for `w` in normal form.
    pub fn has_right_descent(&self, w: &Word, s: usize) -> bool {
        self.right_multiply(w, s).len() < w.len()
    }

    /// The minimal-length element of `w W_T` (`w` in normal form). It is
    /// unique, hence also the ShortLex-least element of the coset.
    pub fn min_coset_representative(&self, w: &Word, t: GenSet) -> Word {
        let mut cur = w.clone();
        'descend: loop {
            for s in t.iter() {
                let next = self.right_multiply(&cur, s);
                if next.len() < cur.len() {
                    cur = next;
                    continue 'descend;
                }
            }
            return cur;
        }
    }

    /// All elements of `w W_T`, sorted ShortLex. Fails past `cap` elements,
    /// which is the only way out when `W_T` is infinite.
    pub fn coset_elements(&self, w: &Word, t: GenSet, cap: usize) -> Result<Vec<Word>, CoxeterError> {
        let start = self.normal_form(w)?;
        let mut seen = std::collections::BTreeSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for s in t.iter() {
                let v = self.right_multiply(&u, s);
                if seen.insert(v.clone()) {
                    if seen.len() > cap {
                        return Err(CoxeterError::CapExceeded { cap });
                    }
                    stack.push(v);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// ShortLex-least representative of the coset `w W_T`, given the elements
    /// of `W_T`.
    pub fn coset_representative(&self, w: &Word, parabolic: &[Word]) -> Result<Word, CoxeterError> {
        let mut best: Option<Word> = None;
        for u in parabolic {
            let cand = self.multiply(w, u)?;
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        Ok(best.unwrap_or_else(|| w.clone()))
    }

    /// The coset `w W_T` as normal forms, sorted ShortLex.
    pub fn coset(&self, w: &Word, parabolic: &[Word]) -> Result<Vec<Word>, CoxeterError> {
        let mut out: Vec<Word> = parabolic.iter().map(|u| self.multiply(w, u)).collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}
