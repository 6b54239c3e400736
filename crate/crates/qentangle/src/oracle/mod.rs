//! Independent brute-force checks: adaptive quadrature, direct summation and
//! truncated-Fock Hamiltonian residuals.

mod consistency;
mod fit;
mod hamiltonian;
mod integrals;
pub mod quad;

pub use consistency::{amplitude_pair_deviation, consistency_matrix, ConsistencyEntry, Level};
pub use fit::loglog_slope;
pub use hamiltonian::{eigen_residual, EigenCheck, HamiltonianSpec};
pub use integrals::{
    quad_joint_amplitude, quad_joint_amplitude_with, quad_photon_weight, quad_trace_purity,
    quad_trace_purity_asymptotic, quad_trace_purity_with, sum_oracle_distribution,
};
