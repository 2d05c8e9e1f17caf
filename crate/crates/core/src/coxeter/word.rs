use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoxeterSystem, Order};

/// A word in the generators of a Coxeter system. Ordered ShortLex: shorter
/// words first, ties broken lexicographically by generator index.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(s: usize) -> Self {
        Word(vec![s])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn appended(&self, s: usize) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    /// The inverse element (generators are involutions).
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

pub(crate) struct BraidSearch {
    /// Every word reached before the search stopped.
    pub class: BTreeSet<Word>,
    /// A word in the class with equal adjacent letters at `(word, i)`,
    /// meaning `word[i] == word[i + 1]`.
    pub cancellation: Option<(Word, usize)>,
}

fn adjacent_pair(w: &[usize]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

/// Braid-move neighbours of `w`: each alternating block `sts..` of length
/// `m(s,t)` replaced by `tst..`.
fn braid_neighbours(sys: &CoxeterSystem, w: &[usize], out: &mut Vec<Vec<usize>>) {
    out.clear();
    for i in 0..w.len().saturating_sub(1) {
        let (s, t) = (w[i], w[i + 1]);
        if s == t {
            continue;
        }
        let Order::Finite(m) = sys.m(s, t) else {
            continue;
        };
        let m = m as usize;
        if i + m > w.len() {
            continue;
        }
        let alternating = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
        if !alternating {
            continue;
        }
        let mut v = w.to_vec();
        for k in 0..m {
            v[i + k] = if k % 2 == 0 { t } else { s };
        }
        out.push(v);
    }
}

/// Breadth-first search over the braid-move class of `w`, stopping at the
/// first word with two equal adjacent letters.
pub(crate) fn braid_search(sys: &CoxeterSystem, w: &Word) -> BraidSearch {
    let mut class = BTreeSet::new();
    if let Some(i) = adjacent_pair(&w.0) {
        class.insert(w.clone());
        return BraidSearch { class, cancellation: Some((w.clone(), i)) };
    }
    let mut queue = VecDeque::new();
    class.insert(w.clone());
    queue.push_back(w.0.clone());
    let mut nbrs = Vec::new();
    while let Some(cur) = queue.pop_front() {
        braid_neighbours(sys, &cur, &mut nbrs);
        for v in nbrs.drain(..) {
            let word = Word(v);
            if class.contains(&word) {
                continue;
            }
            class.insert(word.clone());
            if let Some(i) = adjacent_pair(&word.0) {
                return BraidSearch { class, cancellation: Some((word, i)) };
            }
            queue.push_back(word.0);
        }
    }
    BraidSearch { class, cancellation: None }
}

/// Normal form of `u * s` where `u` is already in normal form.
pub(crate) fn multiply_generator(sys: &CoxeterSystem, u: &Word, s: usize) -> Word {
    let v = u.appended(s);
    let search = braid_search(sys, &v);
    match search.cancellation {
        None => search.class.into_iter().next().expect("class contains v"),
        Some((word, i)) => {
            // `u` is reduced, so `us` has length `|u| - 1` and deleting the
            // pair leaves a reduced word for it.
            let mut letters = word.0;
            letters.drain(i..i + 2);
            let shorter = Word(letters);
            let search = braid_search(sys, &shorter);
            debug_assert!(search.cancellation.is_none());
            search.class.into_iter().next().expect("class contains word")
        }
    }
}
