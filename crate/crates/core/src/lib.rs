#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod lattice;
pub mod radicals;
pub mod ring;
pub mod theorems;

pub use error::{Error, Result};
pub use lattice::Subgroup;
pub use ring::{AdditiveGroup, Element, FiniteRing, Ideal, Side, SubringView};
