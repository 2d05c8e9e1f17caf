//! Combinatorics of gluings of reflection-group chambers: Coxeter systems,
//! the basic construction `U(W, X)` and the Davis complex, complexes of
//! groups and their fundamental groups, link conditions for nonpositive
//! curvature, and twist subgroups.

// Index loops read better than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod cog;
pub mod complex;
pub mod construction;
pub mod coxeter;
pub mod curvature;
pub mod mirrored;
pub mod project;
pub mod twists;
