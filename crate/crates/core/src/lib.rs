//! Exact decision procedures for primitive extended tube domains of
//! Wightman functions in two-dimensional space-time.
//!
//! Every predicate works over Gaussian rationals and returns a certificate
//! that can be re-checked independently of the code that produced it.

pub mod cells;
pub mod cli;
pub mod direction;
pub mod error;
pub mod extend;
pub mod geometry;
pub mod json;
pub mod oracle;
pub mod permutation;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod tube;
pub mod uniformity;

pub use error::{Error, Result};
pub use geometry::{lorentz_scale, minkowski_square, to_diffs, DiffConfig, LightConeVector, PointConfig};
pub use scalar::{GaussianRational, Rational};
pub use tube::{in_extended_tube, in_forward_tube, is_jost_point, MembershipCertificate};
