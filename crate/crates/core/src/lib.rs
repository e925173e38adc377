//! Augmentation categories of semi-free DGAs in characteristic 2.
//!
//! Bottom-up: [`field`], [`group`] and [`poly`] give exact arithmetic; [`dga`] holds
//! link-graded semi-free DGAs; [`augment`] enumerates augmentations and twists;
//! [`ainfty`] reads off the dual `A∞` operations; [`system`] and [`augcat`] assemble
//! the pre-augmentation category, its localisation and the consistent construction.

#![allow(clippy::needless_range_loop)]

pub mod ainfty;
pub mod augcat;
pub mod augment;
pub mod bundled;
pub mod dga;
pub mod error;
pub mod field;
pub mod format;
pub mod functor;
pub mod group;
pub mod linalg;
pub mod mcopy;
pub mod morphism;
pub mod poly;
pub mod report;
pub mod synthetic;
pub mod system;

/// Copy label of a Legendrian component, `1..=M`.
pub type Label = u32;

/// Index of a chord generator inside its DGA.
pub type ChordId = usize;

pub use error::{Error, Result};
