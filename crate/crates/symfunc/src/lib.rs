//! Symmetric-function reduction of root polynomials to Chern / Pontryagin
//! generators, and substitution of constraint ideals.

pub mod basis;
pub mod constraints;
pub mod elementary;
pub mod error;

pub use basis::{elementary_poly, ClassBasis, GroupKind, GroupSpec};
pub use constraints::{Constraint, ConstraintSet};
pub use elementary::{check_symmetric, to_elementary};
pub use error::{Result, SymError};
