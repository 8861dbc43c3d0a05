//! Verification laboratory: truncated Banach-space models of `O(X)` with
//! exact weighted max-norms, and probes that test the closed-form spectra
//! independently of the case table.

pub mod block;
pub mod norms;
pub mod space;
pub mod type4;
pub mod witness;

pub use block::{finite_dim_block_spectrum_check, BlockReport};
pub use norms::{spectral_norm_estimate, spectral_norm_limit, truncated_power_norm, SpectralEstimate};
pub use space::{Summand, TruncatedOperator, TruncatedSpace};
pub use type4::{type4_bound_check, Type4Report};
pub use witness::{
    annulus_resolvent_probe, divergence_witness, exp_term_exponent, kernel_witness, resolvent_radius_probe,
    AnnulusProbe, ProbeVerdict, ResolventProbe,
};
