//! Exact rational toolkit for convex polytopes: H/V conversion by Fourier–Motzkin
//! elimination, polar duality, shellings and h-vectors, cyclic polytopes,
//! classic convexity theorems with certificates, and Delaunay/Voronoi computation.

pub mod bitset;
pub mod classics;
pub mod complexes;
pub mod cyclic;
pub mod delvor;
pub mod duality;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod io;
pub mod polyhedra;

pub use error::{Error, Result};
pub use exact::{Matrix, Scalar, Vector};
