//! Torsion of based chain complexes, Fox-calculus torsion polynomials, the
//! longitude torsion at `t = 1`, and the slope-change rule.

mod complex;
mod polynomial;
mod slope;

use num_complex::Complex;

pub use complex::{chain_torsion, chain_torsion_with, BChoice, BasedChainComplex};
pub use polynomial::{
    longitude_torsion_from, poly_det, presentation_complex_at, torsion_at_longitude, torsion_polynomial,
    torsion_polynomial_from, FoxBlocks, TorsionPolynomial,
};
pub use slope::{slope_change, slope_factor, CurvePoint, JacobianData};

/// A torsion value together with how its ambiguities were resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue<R> {
    pub value: Complex<R>,
    /// Whether the global sign convention has been applied.
    pub sign_fixed: bool,
    /// Residual `tᵏ` ambiguity, when one remains.
    pub t_power_ambiguity: Option<i32>,
    pub warnings: Vec<String>,
}
