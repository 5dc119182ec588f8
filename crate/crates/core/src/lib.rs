//! Exact computer algebra for Laurent polynomials in a handful of variables,
//! aimed at boundary-slope style computations: Newton polygons with their
//! edge polynomials, Sylvester resultants with fraction-free elimination,
//! a gluing construction that splices a knot-group character variety into a
//! two-bridge amalgam, and a floating-point root tracker used to watch
//! eigenvalues degenerate onto roots of unity.
//!
//! Everything in [`poly`], [`newton`], [`elimination`], and [`amalgam`] is
//! exact (integer coefficients throughout); [`numeric`] is the only module
//! that touches floating point.

pub mod amalgam;
pub mod elimination;
pub mod newton;
pub mod numeric;
pub mod poly;
pub mod text;

pub use poly::{LaurentPolynomial, Monomial, PolyError, TermLimitExceeded, VarName};
