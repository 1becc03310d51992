//! Adjoint Reidemeister torsion of two-bridge knot exteriors and the
//! vanishing of inverse torsion sums over trace-function fibers.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`poly`]: Laurent polynomials, resultants, root finding, rational functions in `t`;
//! - [`fox`]: free-group words, group rings, Fox derivatives, presentations;
//! - [`adjoint`]: SL₂(ℂ) representations, the adjoint action, and the twisted map Φ;
//! - [`torsion`]: chain-complex torsion, torsion polynomials, slope change;
//! - [`charvar`]: knot presets and the fiber solver;
//! - [`residue`]: Newton polytopes and the global residue theorem checks;
//! - [`verifier`]: end-to-end reports.

pub mod adjoint;
pub mod charvar;
pub mod error;
pub mod fox;
pub mod linalg;
pub mod poly;
pub mod residue;
pub mod scalar;
pub mod torsion;
pub mod verifier;

pub use error::{Error, Result};
pub use num_complex;
pub use scalar::{ComplexScalar, DoubleDouble, Precision, Real};
