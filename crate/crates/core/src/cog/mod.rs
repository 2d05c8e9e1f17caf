//! Complexes of groups over scwols.
//!
//! A [`Scwol`] is a small category without loops: vertices, directed edges
//! `a: i(a) -> t(a)` and composites `ab` for composable pairs `t(b) = i(a)`.
//! A [`ComplexOfGroups`] attaches a [`LocalGroup`] to each vertex, a
//! monomorphism `psi_a: G_{i(a)} -> G_{t(a)}` to each edge and a twisting
//! element `g_{a,b}` in `G_{t(a)}` to each composable pair.
//!
//! Group elements are [`FreeWord`]s in the generators of their local group.
//! Finite and free abelian backends solve the word problem; formal
//! presentations do not, and checks that need it come back undecided.

mod abelian;
mod complex;
mod gluing;
mod group;
mod hom;
mod pi1;
mod presentation;
mod scwol;
mod tietze;
mod word;


use thiserror::Error;

pub(crate) use abelian::rank;
pub use abelian::{abelianization, relation_matrix, smith_invariants, Abelianization};
pub(crate) use complex::Tally;
pub use complex::{CheckStatus, ComplexOfGroups, ConditionReport, ValidationReport};
pub use gluing::{from_gluing, vertex_name, GroupAssignment};
pub(crate) use group::compose;
pub use group::{cyclic, symmetric3, try_cyclic, Backend, Decision, FiniteGroup, LocalGroup, Perm, MAX_FINITE_ORDER};
pub use hom::GroupMap;
pub use pi1::pi1_presentation;
pub use presentation::Presentation;
pub use scwol::{Scwol, ScwolEdge};
pub use tietze::{tietze_simplify, tietze_simplify_with, Simplification, TietzeOptions};
pub use word::{FreeWord, Letter, WordParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CogError {
    #[error(transparent)]
    Word(#[from] WordParseError),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group enumeration exceeded {0} elements")]
    TooLarge(usize),
    #[error("declared center element is not central")]
    NotCentral,
    #[error("invalid scwol: {0}")]
    InvalidScwol(String),
    #[error("invalid complex of groups: {0}")]
    Invalid(String),
    #[error("no local group assigned to stratum {0:?}")]
    MissingAssignment(String),
    #[error("no map given for the face relation {lower:?} < {upper:?}")]
    MissingMap { lower: String, upper: String },
    #[error("map {lower:?} -> {upper:?} is not a homomorphism")]
    NotHomomorphism { lower: String, upper: String },
    #[error("map {lower:?} -> {upper:?} is not injective")]
    NotInjective { lower: String, upper: String },
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("integer overflow in Smith normal form")]
    Overflow,
}
