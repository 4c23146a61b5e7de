//! Exact lattice computations for the Enriques surface model built from the
//! 10A + 6B + 4C root configuration.
//!
//! The crate is layered bottom-up:
//!
//! * [`lattice`]: exact rational linear algebra (inner products, reflections,
//!   definiteness, determinants, kernels, Smith and Hermite forms).
//! * [`model`]: the rank-10 lattice, its 20 named roots and the
//!   quasi-polarization `H`.
//! * [`coxeter`]: the weighted Coxeter diagram of the 20 roots, affine type
//!   recognition, the parabolic census and the finite-volume check.
//! * [`group`]: normal forms in `S4 ⋉ (C2 * C2 * C2 * C2)` and their action on
//!   the lattice.
//! * [`orbits`]: degree-descent reduction, curve and pencil classification,
//!   bounded vector enumeration and dual-graph balls.
//! * [`report`]: the aggregated verification run used by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod coxeter;
pub mod error;
pub mod group;
pub mod lattice;
pub mod model;
pub mod orbits;
pub mod report;

pub use error::{Error, Result};
