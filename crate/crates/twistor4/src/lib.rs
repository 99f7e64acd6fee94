//! Curvature and twistor-space integrability analysis for oriented
//! Riemannian 4-manifolds carrying metric connections with totally
//! skew-symmetric torsion.
//!
//! The library computes curvature invariants of homogeneous (left-invariant)
//! and chart-described 4-manifolds, decomposes curvature operators into
//! irreducible pieces, and decides integrability of the four natural almost
//! complex structures on the product of the two twistor bundles, both by
//! closed-form criteria and by brute-force Nijenhuis evaluation.

pub mod bivector_algebra;
pub mod catalog;
pub mod chart_geometry;
pub mod curvature_analysis;
pub mod integrability_checks;
pub mod invariant_geometry;
pub mod linalg;
pub mod reporting;
pub mod scalar;
pub mod twistor_structures;
pub mod weyl_structures;

pub use scalar::{rat, Rat, Scalar};
