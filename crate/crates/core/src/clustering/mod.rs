//! Memberships and dendrograms: K-means, PAM, agglomerative clustering and
//! the distance kernels they share.

mod distance;
mod hierarchical;
mod kmeans;
mod membership;
mod pam;

pub use distance::{
    cosine_distance, cosine_similarity, DistanceKind, DistanceMatrix, SimilarityMatrix,
};
pub use hierarchical::{cut_dendrogram, hcluster, Dendrogram, Linkage, Merge};
pub use kmeans::{kmeans, kmeans_points, wcss, KMeansConfig, KMeansFit};
pub use membership::Membership;
pub use pam::{medoid_cost, pam, PamFit};
