//! Stability of spectral graph filters under large-scale edge rewiring.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, Laplacians, loaders.
//! - [`random_models`]: stochastic block models and block-preserving
//!   rewiring.
//! - [`spectral`]: dense symmetric eigensolver and basis comparisons.
//! - [`filters`]: frequency responses and their low-pass constants.
//! - [`stability`]: the filter distance and its community-structure
//!   bound.
//! - [`experiments`]: seeded Monte Carlo runners and CSV output.

pub mod error;
pub mod experiments;
pub mod filters;
pub mod graph;
pub mod random_models;
pub mod rng;
pub mod spectral;
pub mod stability;

pub use error::{Error, Result};
