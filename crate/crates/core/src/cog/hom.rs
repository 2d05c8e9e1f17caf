use std::collections::HashSet;

use super::abelian::rank;
use super::group::{Backend, Decision, LocalGroup};
use super::word::FreeWord;
use super::CogError;

/// A homomorphism between local groups, given by the images of the source
/// generators as words in the target generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMap {
    images: Vec<FreeWord>,
}

impl GroupMap {
    pub fn new(images: Vec<FreeWord>) -> Self {
        GroupMap { images: images.into_iter().map(|w| w.free_reduce()).collect() }
    }

    pub fn identity(n: usize) -> Self {
        GroupMap { images: (0..n).map(FreeWord::gen).collect() }
    }

    /// The map sending every one of `n` generators to the identity.
    pub fn trivial(n: usize) -> Self {
        GroupMap { images: vec![FreeWord::identity(); n] }
    }

    /// Parses images written over the target's generator names.
    pub fn parse(images: &[String], target: &LocalGroup) -> Result<Self, CogError> {
        Ok(GroupMap::new(images.iter().map(|s| target.parse(s)).collect::<Result<_, _>>()?))
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &GroupMap) -> GroupMap {
        GroupMap::new(inner.images.iter().map(|w| self.apply(w)).collect())
    }

    /// Checks arities against the source and target.
    pub fn check_shape(&self, source: &LocalGroup, target: &LocalGroup) -> Result<(), String> {
        if self.images.len() != source.generator_count() {
            return Err(format!("{} images for {} source generators", self.images.len(), source.generator_count()));
        }
        if self.images.iter().any(|w| w.max_generator().is_some_and(|g| g >= target.generator_count())) {
            return Err("image uses an undeclared target generator".into());
        }
        Ok(())
    }

    /// Whether every source relator maps to the identity. Returns the first
    /// relator proven to fail.
    pub fn is_homomorphism(&self, source: &LocalGroup, target: &LocalGroup) -> (Decision, Option<FreeWord>) {
        let mut status = Decision::Yes;
        for r in source.relators() {
            match target.is_identity(&self.apply(&r)) {
                Decision::No => return (Decision::No, Some(r)),
                d => status = status.and(d),
            }
        }
        (status, None)
    }

    /// Injectivity, assuming the map is a homomorphism.
    pub fn is_injective(&self, source: &LocalGroup, target: &LocalGroup) -> Decision {
        if source.order() == Some(1) {
            return Decision::Yes;
        }
        match (source.backend(), target.backend()) {
            (Backend::Finite(s), Backend::Finite(_)) => {
                let Backend::Finite(t) = target.backend() else { unreachable!() };
                let mut seen = HashSet::new();
                for p in s.elements() {
                    let w = s.word_of(p).expect("enumerated element");
                    seen.insert(t.eval(&self.apply(w)));
                }
                Decision::from_bool(seen.len() == s.order())
            }
            // Nontrivial torsion cannot embed in a free abelian group.
            (Backend::Finite(_), Backend::FreeAbelian(_)) => Decision::No,
            (Backend::FreeAbelian(_), Backend::Finite(_)) => Decision::No,
            (Backend::FreeAbelian(k), Backend::FreeAbelian(_)) => {
                let rows: Vec<Vec<i64>> =
                    self.images.iter().map(|w| target.abelian_coordinates(w).expect("free abelian")).collect();
                Decision::from_bool(rank(&rows) == *k)
            }
            _ => {
                // A generator sent to the identity that is provably nontrivial
                // in the source witnesses a kernel.
                let killed = self
                    .images
                    .iter()
                    .enumerate()
                    .any(|(g, w)| w.is_empty() && source.is_identity(&FreeWord::gen(g)) == Decision::No);
                if killed {
                    Decision::No
                } else {
                    Decision::Unknown
                }
            }
        }
    }
}
