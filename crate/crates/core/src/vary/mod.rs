//! Spectra along a segment of Shilov points and their continuity in the
//! Hausdorff-style topology on compact sets.

mod continuity;
mod segment;

pub use continuity::{
    discontinuity_witness, left_continuity_threshold, margin_neighborhoods, two_sided_threshold,
    DiscontinuityWitness, WitnessSample,
};
pub use segment::{sample_segment, spectrum_at, Sample, SegmentSpec};
