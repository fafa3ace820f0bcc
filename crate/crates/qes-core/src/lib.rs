//! Exact operator algebra, invariant-space spectra, and numeric
//! cross-checks for the A2 and G2 elliptic Calogero-Moser/Wolfes models.
//!
//! The exact layer works over arbitrary-precision rationals with all model
//! parameters (`tau`, `mu`, `nu`, `lambda`) kept symbolic, so every operator
//! identity is verified as a polynomial identity. The numeric layer evaluates
//! Weierstrass functions and cross-checks the elliptic change of variables.

pub mod catalog;
pub mod discovery;
pub mod elliptic;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod report;
pub mod spaces;
pub mod spectral;
pub mod weyl;

pub use poly::{MPoly, Var};
pub use rat::BigRat;
pub use ratfn::{DenBase, RatFn};
pub use weyl::{Chart, DiffOp};
