//! Eisenstein-basis decomposition, the theorem catalog and its exact verifier.

pub mod eisenstein;
pub mod error;
pub mod record;
pub mod residue;
pub mod verify;

pub use eisenstein::{decompose, eisenstein_basis, BasisElement, Decomposition};
pub use error::{Result, VerifyError};
pub use record::{builtin_expectations, expectations_from_json, Catalog, Context, Expectation, Expectations, RecordKind, TheoremRecord, TwistTerm};
pub use residue::{residue_scale, Parity};
pub use verify::{form_witness, reduce_series, solve_ratio, verify_all, verify_prepared, verify_theorem, Caps, Prepared, Status, VerifyReport};
