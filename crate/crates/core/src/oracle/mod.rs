//! Independent reference paths for validating the estimator: Gaussian closed
//! forms and cache-free recomputation.

pub mod gaussian;
pub mod naive;

pub use gaussian::{gaussian_entropy, gaussian_oinfo, sample_gaussian, GaussianSystem};
