//! Finite right groups: semigroups that are right simple and left
//! cancellative, equivalently products `E × G` of a right zero semigroup and
//! a group.
//!
//! The crate works on explicit Cayley tables. It recognizes right groups,
//! decomposes them, enumerates and classifies morphisms between them, checks
//! universal properties against finite probe pools, and builds the right
//! groups attached to group actions.

pub mod actions;
pub mod cli;
pub mod congruence;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod morphisms;
pub mod pretorsion;
pub mod rightgroup;
pub mod semigroup;

pub use congruence::{Congruence, Partition};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use morphisms::Morphism;
pub use rightgroup::{
    check_right_group, ConditionReport, Decomposition, PointedRightGroup, RightGroup,
};
pub use semigroup::{CayleyTable, ElementId, FiniteSemigroup};
