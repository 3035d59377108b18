//! Spectral analysis of trees around the Fiedler-extrema/diameter (FED) property.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`tree`]: labeled trees, the Rose / star-like families and combinatorial queries,
//! * [`spectral`]: Laplacians, a cyclic Jacobi eigensolver, Fiedler vectors and the FED verdict,
//! * [`rose`]: recurrence polynomials and closed-form thresholds for Rose trees,
//! * [`enumeration`]: free trees as canonical level sequences.
//!
//! Vertex labels are 1-based everywhere in the public API.
#![no_std]

extern crate alloc;

mod error;

pub mod enumeration;
pub mod rose;
pub mod spectral;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{RoseParams, Tree};
