//! λ-ring of virtual bundles over formal Chern roots, generating series of
//! symmetric and exterior powers, and the Witten / elliptic bundles built
//! from them.

pub mod bundle;
pub mod error;
pub mod sectors;
pub mod series;
pub mod twist;

pub use bundle::{binomial, exp_linear, LineElement, LinearForm, VirtualBundle};
pub use error::{LambdaError, Result};
pub use sectors::{ell_c_power, ell_factors, ell_sector, witten_factors, witten_sector, BundleContext, EllKind, WittenKind};
pub use series::{line_factors, sym_lambda_series, PowerKind};
pub use twist::{twist_bundle, TwistBundle, TWIST_NAMES};
