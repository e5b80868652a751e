//! Exact construction of the orthogonal polynomial families that live in the
//! inner products of i.i.d. Gaussian, spherical and Boolean random vectors.
//!
//! Polynomials are indexed by multigraphs (or even hypergraphs in the Boolean
//! setting). Every symbolic quantity is a rational function of the dimension
//! `n` with arbitrary-precision integer coefficients.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod graphs;
pub mod inversion;
pub mod linalg;
pub mod matchings;
pub mod polyspace;
pub mod symnum;

pub use error::{Error, Result};
pub use graphs::{Edge, Graph, Setting, Vertex};
pub use polyspace::InvariantPoly;
pub use symnum::{IntPoly, RatFunc};
