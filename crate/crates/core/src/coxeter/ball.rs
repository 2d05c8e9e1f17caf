use std::collections::BTreeSet;

use super::word::multiply_generator;
use super::{CoxeterError, CoxeterSystem, GenSet, Word};

pub const DEFAULT_BALL_CAP: usize = 100_000;

/// A word-length ball in `W` (or in a parabolic subgroup), sorted ShortLex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    elements: Vec<Word>,
    radius: Option<usize>,
    /// True when the ball is the whole group.
    complete: bool,
}

impl Ball {
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Word> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.elements.binary_search(w).ok()
    }
}

pub(crate) fn enumerate(
    sys: &CoxeterSystem,
    gens: GenSet,
    radius: Option<usize>,
    cap: usize,
) -> Result<Ball, CoxeterError> {
    let mut all: BTreeSet<Word> = BTreeSet::from([Word::identity()]);
    let mut layer = vec![Word::identity()];
    let mut len = 0;
    let mut complete = false;
    loop {
        if radius.is_some_and(|r| len >= r) {
            break;
        }
        let mut next = BTreeSet::new();
        for w in &layer {
            for s in gens.iter() {
                let v = multiply_generator(sys, w, s);
                if v.len() > w.len() && !all.contains(&v) {
                    next.insert(v);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        if all.len() + next.len() > cap {
            return Err(CoxeterError::CapExceeded { cap });
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
        len += 1;
    }
    // A ball that stops exactly at the longest element is still the whole
    // group; detect it by checking for a next layer.
    if !complete {
        complete = layer.iter().all(|w| gens.iter().all(|s| multiply_generator(sys, w, s).len() < w.len()));
    }
    if all.len() > cap {
        return Err(CoxeterError::CapExceeded { cap });
    }
    Ok(Ball { elements: all.into_iter().collect(), radius, complete })
}
