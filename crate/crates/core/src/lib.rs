//! Exact-arithmetic kernel for deciding regular singularity of holonomic
//! systems presented by Weyl-algebra ideals.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`], [`order`], [`multipoly`] - rational numbers, monomial orders
//!   encoded as weight matrices, and sparse multivariate polynomials.
//! * [`cgb`], [`sqfree`] - commutative Groebner machinery (elimination,
//!   saturation) and squarefree factorization / rational root finding.
//! * [`weyl`], [`hweyl`], [`wgb`] - the Weyl algebra, its homogenization, and
//!   Buchberger's algorithm for weight orders with negative entries.
//! * [`ratweyl`], [`charvar`] - holonomic rank over the rational Weyl algebra,
//!   Pfaffian systems, characteristic ideals and singular loci.
//! * [`engine`] - generic-point selection, gr-rank at a point, the support of
//!   the irregularity complex, the irregularity divisor, regularity verdicts.
//! * [`fuchs`] - independent one-dimensional regularity criteria used to
//!   cross-validate the main pipeline.
//!
//! The crate is `no_std` (with `alloc`); all values are immutable after
//! construction and all operations are pure functions.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod budget;
pub mod cgb;
pub mod charvar;
pub mod engine;
pub mod error;
pub mod fuchs;
pub mod gb;
pub mod hweyl;
pub mod multipoly;
pub mod order;
pub mod ratweyl;
pub mod rng;
pub mod sqfree;
pub mod weyl;
pub mod wgb;

#[cfg(test)]
pub(crate) mod testsupport;

pub use arith::Rational;
pub use budget::Budget;
pub use error::Error;
pub use multipoly::MultiPoly;
pub use weyl::{DIdeal, WeylElement};
