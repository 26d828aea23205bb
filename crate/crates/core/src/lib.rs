//! A symbolic calculus for closed symplectic 4-manifolds assembled from
//! catalogued blocks by symplectic fiber sums.
//!
//! Blocks carry Euler characteristic, signature, a fundamental-group
//! presentation and marked surfaces. [`sumcalc::fiber_sum`] combines two
//! blocks along surfaces of equal genus and opposite square, computing the
//! invariants and a Seifert–Van Kampen presentation of the result.
//! [`constructions`] replays the pipeline producing manifolds with
//! prescribed fundamental group approaching the BMY line, and
//! [`geography`] derives Chern numbers and BMY/Noether defects.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod blocks;
pub mod constructions;
pub mod fpgroup;
pub mod geography;
pub mod sumcalc;

pub use blocks::{block, validate, Block, CatalogKind, MarkedSurface};
pub use fpgroup::{AbelianInvariants, Presentation, Word};
pub use geography::{GeographyPoint, Rational};
pub use sumcalc::{fiber_sum, GluingSpec};
