//! Closed-loop tactile perception of clothing against a procedural cloth world.
//!
//! The pipeline mirrors a robot workcell: a simulated depth camera observes
//! cloth draped on a table, ridge-like wrinkles are detected on the projected
//! height map, a gripper squeezes a chosen wrinkle while a gel tactile sensor
//! records deformation frames, and trained classifiers turn those frames into
//! per-property predictions. An exploration policy re-grips until the
//! washing-method head is confident.
//!
//! Modules follow the pipeline stages:
//!
//! - [`geometry`]: depth-to-world projection, Laplacian pyramid wrinkle
//!   detection, grip-direction estimation, metric crop windows.
//! - [`clothsim`]: the deterministic stand-in world — cloth synthesis, depth
//!   rendering, squeeze simulation.
//! - [`tactile`]: contact detection, frame selection, filter-bank features.
//! - [`classifier`]: multi-head property model and binary grip-quality model,
//!   trained with plain SGD.
//! - [`explorer`]: confidence-thresholded re-trial policy and its metrics.
//! - [`dataset`]: corpus layout, split protocol, record persistence.
//! - [`formats`]: versioned binary containers (HMAP / TSEQ / TMDL / FVEC).

pub mod classifier;
pub mod clothsim;
pub mod dataset;
pub mod error;
pub mod explorer;
pub mod formats;
pub mod geometry;
pub mod grid;
pub mod rng;
pub mod tactile;

pub use error::{Error, Result};
pub use grid::Grid;
