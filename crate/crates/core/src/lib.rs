//! Exact cohomology computations for twisted K-theory data.
//!
//! This crate is `no_std` (it needs `alloc`). It contains:
//!
//! * [`linalg`]: integer Smith normal form, solving over `Z` and `Z/n`,
//!   cokernel presentations, and prime-field elimination.
//! * [`simplicial`]: ordered simplicial complexes, cochains, and cohomology
//!   with explicit cocycle representatives.
//! * [`ops`]: cup and cup-i products, Steenrod squares, coefficient
//!   reduction and the integral Bockstein.
//! * [`dsv`]: differential super vector spaces over `Q` and `F_p`.
//! * [`superline`]: the Picard groupoid of superline bundles, modelled by
//!   characteristic classes.
//! * [`stable2type`]: `(pi0, pi1, q)` classification data of Picard groupoids.
//! * [`brauer`]: the groups `pic_0^3(KU)^0(X)` and `pic_0^2(KO)^0(X)` with
//!   their twisted group laws.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod brauer;
pub mod dsv;
mod error;
pub mod linalg;
pub mod ops;
pub mod simplicial;
pub mod stable2type;
pub mod superline;

pub use error::{Error, Result};

/// Default bound for brute-force searches (automorphisms, enumerations).
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 16;
