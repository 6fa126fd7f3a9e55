//! Core library for a desk-scale dexterous-manipulation world model.
//!
//! The pipeline: a synthetic top-down manipulation environment produces
//! observations; a frozen oracle encoder maps them to patch-level latent
//! states; a deterministic transformer predictor conditioned on hand-keypoint
//! delta actions regresses future latents; a keypoint head decodes fingertip
//! and wrist heatmaps from latents; and a CEM planner optimizes joint-angle
//! trajectories against goal latents inside a receding-horizon MPC loop.

pub mod config;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod heatmap;
pub mod io;
pub mod kinematics;
pub mod model;
pub mod numcore;
pub mod planner;
pub mod simenv;
pub mod training;

pub use error::{Error, Result};
