//! Exact multigraded Castelnuovo-Mumford regularity for Cox rings of simplicial toric varieties.
//!
//! A [`fan::GradingSetup`] bundles the grading group, the variable degrees, the triangulation
//! determining the irrelevant ideal and the generator set `C`. From it the crate computes
//! local cohomology supports ([`local_cohomology`]), regularity membership and windows
//! ([`regularity`]), and the underlying semigroup questions ([`diophantine`]).

pub mod catalog;
pub mod cohomology;
pub mod cone;
pub mod config;
pub mod diophantine;
pub mod error;
pub mod fan;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod local_cohomology;
pub mod lp;
pub mod region;
pub mod regularity;
pub mod snf;

pub use error::{Error, GroupError, Result};
pub use group::{AbelianGroup, DegreeList, DegreeRole, GroupElement};
