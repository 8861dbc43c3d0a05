//! Closed-form spectra: `Σ_d` for every field and domain case, the module
//! spectrum `⋃ (a_i + Σ_d)` and the operator spectrum `Q(Σ_d)`.

pub mod cases;
pub mod report;

pub use cases::{case_tag, derivation_spectrum, CaseTag};
pub use report::{
    compare, diffpoly_operator_spectrum, module_spectrum, spectra_report, ComparisonReport, SpectrumReport,
    SymbolicComponent, Verdict,
};
