//! gsa — an exact symbolic engine for graded superbundle atlases.
//!
//! The crate models coordinate atlases whose transition data are
//! supercommutative polynomials with exact rational coefficients. On top of
//! that substrate it implements, as verifiable atlas-to-atlas
//! transformations: tangent prolongation and iterated tangents with their
//! canonical flips, parity reversion of multi-vector bundles together with
//! the sign isomorphisms relating different reversion orders, symmetric and
//! skew-symmetric symmetric-group actions, polarization of weighted bundles
//! into multi-vector bundles, diagonalization back, and the composite that
//! turns a weighted supermanifold into a purely even skew-symmetric
//! multi-vector bundle.
//!
//! Every operation is pure and exact; randomized law suites (see [`laws`])
//! and the `gsa` command-line driver check the structural identities on
//! demand. The `examples/` directory of the crate walks through each
//! capability end to end.
//!
//! ```
//! use gsa::dsl::parse_document;
//! use gsa::polar::desuperize;
//!
//! let doc = parse_document(
//!     "kind nweighted degree 1;\n\
//!      nmanifold;\n\
//!      chart U { u @(0) even; th @(1) odd; }",
//! )?;
//! assert!(doc.atlas.validate().is_valid());
//!
//! // an odd line bundle desuperizes to a purely even one
//! let d = desuperize(&doc.atlas)?;
//! assert!(d.atlas.is_purely_even());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bundle;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod laws;
pub mod parity;
pub mod perm;
pub mod polar;
pub mod rng;
pub mod superalg;
pub mod symmetry;
pub mod tangent;

pub use error::{EngineError, Result};
