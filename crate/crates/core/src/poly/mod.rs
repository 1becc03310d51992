//! Polynomial arithmetic: sparse Laurent polynomials, parsing, resultants,
//! numeric root finding and rational functions in `t`.

pub mod coeff;
pub mod laurent;
pub mod parse;
pub mod ratfunc;
pub mod resultant;
pub mod roots;

pub use coeff::{rat, rat_frac, Coeff, FieldCoeff, Rational};
pub use laurent::{ArithOp, CPoly, Exponent, LaurentPoly, QPoly};
pub use parse::parse_poly;
pub use ratfunc::{Normalization, RationalFunctionT, TPoly};
pub use resultant::{bareiss_det, exact_div, pseudo_remainder, resultant, sylvester_det_at, Resultant};
pub use roots::{abs_scale, horner, roots_of, univariate_roots, RootCluster, RootSet};
