//! Differential-module front end: constant-coefficient matrices and
//! differential polynomials, characteristic polynomials, eigenvalues, Newton
//! polygons and domain descriptions.

pub mod domain;
pub mod eigen;
pub mod matrix;
pub mod module;
pub mod newton;

pub use domain::{DiskParams, DomainSpec};
pub use eigen::{eigenvalue_multiset, EigenAnalysis, Eigenvalue, UnresolvedFactor};
pub use matrix::Matrix;
pub use module::{companion_matrix, DiffModuleSpec, DiffPoly, ModuleSource};
pub use newton::{newton_polygon_slopes, NewtonSlopes};
