//! Exact commutator-map fiber censuses for finite p-groups of conjugate type
//! `(1, p^n)`.
//!
//! The crate builds the class-2 groups of Ito and their quotients as
//! alternating bilinear maps, the class-3 group of order `p^5` as a
//! power-commutator presentation, counts the fibers of `(x, y) -> [x, y]`
//! exactly, and checks the resulting distributions against closed forms.

pub mod census;
pub mod class2;
pub mod class3;
pub mod error;
pub mod gf;
pub mod groupfile;
pub mod pcgroup;
pub mod verify;

pub use error::{Error, Result};
