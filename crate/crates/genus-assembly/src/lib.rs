//! Assembly of the spin, spin^c and elliptic genera from characteristic
//! series and λ-ring sectors.

pub mod assemble;
pub mod characteristic;
pub mod error;
pub mod instance;
pub mod theta_side;

pub use assemble::{i_pow, two_pi_i_pow, Assembly};
pub use characteristic::{ahat, ahat_coeffs, ch_delta, todd};
pub use error::{GenusError, Result};
pub use instance::{GenusId, GenusInstance};
pub use lambda_ring::TWIST_NAMES;
pub use theta_side::theta_side;
