//! Finite-group computation over Cayley tables, with fusion systems and a
//! theorem-audit harness for weakly SΦ-supplemented subgroups.
//!
//! Groups are small (hundreds to a few thousand elements) and every question
//! is answered exhaustively from the full subgroup lattice.

pub mod bitset;
pub mod char_subgroups;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fusion;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod props;
pub mod supplements;
pub mod theorems;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use group::{Group, GroupHom, Subgroup};
pub use lattice::{SubId, SubgroupLattice, View};
pub use perm::Perm;
