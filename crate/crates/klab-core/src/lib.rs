//! Exact-arithmetic combinatorics of reductive group invariants.
//!
//! The crate computes, with rational arithmetic throughout:
//! Kottwitz sets `B(G, mu)` and their generalized variants, Newton and
//! Kottwitz points of sigma-conjugacy classes, Hodge-Newton
//! decomposability and the fully-HND verdict, HN-type stratification
//! data with dimension formulas, semi-infinite index sets with
//! Freudenthal branching, the twin-towers transfer between a group and
//! its basic inner twist, and a desk-scale model of filtered vector
//! spaces over finite fields together with lattice pairs over truncated
//! Laurent series, each with brute-force Harder-Narasimhan oracles.
//!
//! No floating point is used anywhere.

pub mod duality;
pub mod error;
pub mod filspace;
pub mod galois;
pub mod hodgenewton;
pub mod kottwitz;
pub mod qlin;
pub mod rootcore;
pub mod semiinfinite;
pub mod snf;
pub mod strata;
pub mod sweeps;

pub use error::KlabError;
pub use galois::GroupSpec;
pub use rootcore::{BasedRootDatum, LatticeTag, ParabolicIndex, RatVector, WeylElement};

/// Crate version, echoed into CLI report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
