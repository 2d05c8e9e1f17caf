//! Twists of a gluing and the free abelian group `T(M)` they generate.
//!
//! Removing the walls of one type `e` from the chamber graph splits it into
//! [`Block`]s. Conjugating the groups of one block by a central element of
//! the type-`e` wall group, and fixing everything else, gives a twist. The
//! twist is nontrivial in `Out` when its block is proper.

mod automorphism;
mod blocks;
mod report;

#[cfg(test)]
mod tests;

use thiserror::Error;

pub use automorphism::{commute, composite_agrees, twist_automorphism, TwistAutomorphism, VertexAction};
pub use blocks::{all_blocks, blocks, edge_types, is_tree, Block};
pub use report::{twist_group_report, EdgeTypeEntry, Relation, TwistGenerator, TwistReport, BANNER};

use crate::construction::ConstructionError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("edge type {0:?} does not occur in the chamber graph")]
    UnknownType(String),
    #[error("chamber {0} is not a node of the chamber graph")]
    UnknownChamber(usize),
    #[error("twisting element is not central in its wall group")]
    NotCentral,
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("complex of groups was not built from this gluing")]
    NotFromGluing,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
