//! Extendable heatmaps: a matrix heatmap with cluster structure, smoothing,
//! dendrograms, label panes and adjacent plots, rendered to SVG, plus the
//! cluster diagnostics used to choose the number of clusters.
//!
//! Numeric kernels are generic over [`Scalar`] (`f32` or `f64`); layout and
//! rendering work in `f64` canvas units.

pub mod clustering;
pub mod data;
pub mod diagnostics;
mod error;
pub mod io;
pub mod layout;
pub mod render;
mod scalar;
pub mod smoothing;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Matrix = data::LabeledMatrix<f64>;
pub type Matrix32 = data::LabeledMatrix<f32>;
pub type DistMatrix = clustering::DistanceMatrix<f64>;
pub type Tree = clustering::Dendrogram<f64>;
pub type Smoothed = smoothing::SmoothedMatrix<f64>;
