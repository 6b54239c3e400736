//! Free-electron and quantized-mode entanglement: joint detection
//! amplitudes, reduced photon statistics, entropies and phase-operator
//! critical states, with quadrature and diagonalization oracles.
//!
//! ```
//! use qentangle::density::photon_dist_asymptotic;
//! let d = photon_dist_asymptotic(2.5, None).unwrap();
//! assert!((d.get(0) - 0.2700).abs() < 5e-5);
//! ```

pub mod density;
pub mod displacement;
pub mod entangled;
pub mod error;
pub mod oracle;
pub mod params;
pub mod phase;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use specfun::Complex;
