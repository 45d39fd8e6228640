//! Exact machinery for intersection hypergraphs of axis-parallel boxes.
//!
//! An `r`-part family of boxes in ℝ^d, each part carrying a prescribed
//! direction set (the axes along which its boxes have positive extent),
//! induces an r-partite r-uniform hypergraph: a transversal is a hyperedge
//! when its boxes have a common point. This crate builds such families,
//! counts their hyperedges, searches for complete r-partite patterns
//! K_{t,…,t}, classifies direction vectors by 2-coherence, runs the
//! geometric reductions (separation, grid rescaling, diagonal and
//! hyperplane slicing, transfer to higher dimension), checks the explicit
//! edge-count bounds, and cross-validates everything against brute-force
//! oracles. All coordinates are exact rationals; there are no tolerances.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod direction;
pub mod error;
pub mod family;
pub mod geometry;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod planar;
pub mod random;
pub mod rational;
pub mod reductions;

pub use error::{Error, Result};
pub use rational::Rational;
