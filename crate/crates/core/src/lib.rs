//! Exact Berkovich spectra of linear differential modules with constant
//! coefficients over affinoid domains and residual fields of the ultrametric
//! affine line, together with truncated Banach-space oracles that check the
//! closed forms independently.

pub mod berkline;
pub mod cli;
pub mod diffmod;
pub mod error;
pub mod oracle;
pub mod specengine;
pub mod valcore;
pub mod vary;

pub use error::{Error, Result};
