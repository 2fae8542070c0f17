//! Exact arithmetic kernel: rationals and Q(i)[π, π⁻¹] scalars, truncated
//! graded polynomials over named formal variables, q-series on the 1/24
//! lattice, and the standard q-series constants (Eisenstein series, Euler
//! product, Dedekind eta).

pub mod constants;
pub mod error;
pub mod form;
pub mod poly;
pub mod qseries;
pub mod scalar;

pub use constants::{bernoulli_numbers, eisenstein, eta_power, euler_product, g2, sigma};
pub use error::{Result, SeriesError};
pub use form::ScalarForm;
pub use poly::{const_int, var_map, GradedPoly, Mono, Ring, Var, MAX_VARS};
pub use qseries::{product, QExp, QSeries};
pub use scalar::{int, parse_rational, rat, Coeff, Rational, Scalar, Unit};
