//! Spectral radius tools for joins of small graphs with linear forests.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which every search and verification routine uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod graph;
pub mod join_series;
pub mod lemmas;
pub mod scalar;
pub mod spectral;
pub mod spex;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::Scalar;

pub type SpectralResult = spectral::SpectralResult<f64>;
pub type ComparisonVerdict = spectral::ComparisonVerdict<f64>;
pub type SeriesEval = walks::SeriesEval<f64>;
pub type FixedPointEval = join_series::FixedPointEval<f64>;
pub type SeriesRoot = join_series::SeriesRoot<f64>;
