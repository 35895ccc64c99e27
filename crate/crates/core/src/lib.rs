//! Executable quasirandomness for finite groups.
//!
//! The crate builds finite groups with a deterministic element indexing
//! ([`group`]), measures how quasirandom they are through bipartite Cayley
//! graph spectra ([`spectral`]), convolution counts ([`setfun`]) and
//! character tables ([`irreps`]), checks the resulting quantitative bounds
//! ([`theorems`]), solves simultaneous product constraints greedily
//! ([`solver`]) and constructs product-free sets ([`productfree`]).
//!
//! Group elements are plain `usize` indices in `0..order`; every structure
//! that refers to elements carries the order of the group it lives in.

pub mod error;
pub mod group;
pub mod irreps;
pub mod productfree;
pub mod rng;
pub mod setfun;
pub mod solver;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
pub use group::{ConjugacyClasses, Descriptor, FiniteGroup, GroupKind, GroupOptions};
pub use setfun::{GroupFunction, Subset};
