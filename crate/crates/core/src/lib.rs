//! Desk-scale additive combinatorics: harmonic analysis on finite abelian
//! groups, Bohr sets, grid norms and graph counting, k-configuration counting,
//! sifting, and sum-free extraction.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bitset;
pub mod bohr;
pub mod configs;
pub mod error;
pub mod exact;
pub mod gridnorm;
pub mod group;
pub mod harmonic;
pub mod increment;
pub mod sumfree;

pub use error::{Error, Result};
pub use group::{Character, FiniteAbelianGroup, GroupElement, MultiplicationMap};
pub use harmonic::{DenseFunction, Exponent, Measure};
