//! Cluster-quality diagnostics: cosine-silhouette widths and subsampling
//! stability curves for choosing the number of clusters.

mod jaccard;
mod silhouette;
mod stability;

pub use jaccard::jaccard;
pub use silhouette::{silhouette, SilhouetteReport};
pub use stability::{
    stability_curve, subsample_size, StabilityConfig, StabilityMethod, StabilityReport,
};
