//! Macroelement finite-element bases on simplicial splits.
//!
//! The crate builds Ciarlet triples on split triangles (Alfeld, Powell-Sabin,
//! uniform refinements) from an orthonormal expansion set, a list of nodal
//! functionals and a generalized Vandermonde solve. Reference bases are mapped
//! to physical cells through per-element transformation matrices, and a small
//! mesh harness assembles biharmonic and Stokes problems to check convergence.

pub mod complex;
pub mod dualset;
pub mod elements;
mod error;
mod linalg;
pub mod meshfem;
pub mod polyset;
pub mod quadrature;
pub mod transform;

pub use error::{Error, Result};
