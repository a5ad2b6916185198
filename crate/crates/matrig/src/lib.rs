//! matrig: an exact toolkit for matroid rigidity theory.
//!
//! The crate computes, over finite fields and with no floating point:
//!
//! - m-Laman independence and the Laman/slope complexes for rational m,
//! - Edmonds matroid partitions, d-Edmonds decompositions and d-Recski
//!   independence, with the three-way equivalence harness,
//! - Tutte polynomials by two independent algorithms, Gaussian binomials,
//!   and the photo-count formula with its duality identity,
//! - brute-force photo-space censuses and cellule dimension criteria,
//! - randomized-generic rigidity, hyperplane-marking and parallel
//!   matroids, nesting checks, stabilization and projective probes.
//!
//! Randomized computations draw from fields of order >= 2^60 with a
//! documented failure bound; everything else is exact.

// matrix kernels index rows and columns directly
#![allow(clippy::needless_range_loop)]

pub mod gf;
pub mod io;
pub mod laman;
pub mod matroid;
pub mod partition;
pub mod photospace;
pub mod rigidity;
pub mod subset;
pub mod suite;
pub mod tutte;

pub use gf::{FFMatrix, FieldElement, FiniteField};
pub use matroid::LinearMatroid;
pub use subset::{Complex, Subset};
