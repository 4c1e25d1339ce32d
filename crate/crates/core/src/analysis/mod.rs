//! Cluster-structure analysis of generated corpora: pairwise DTW, agglomerative
//! clustering on the precomputed distances, and cluster-sorted matrices.

mod cluster;
mod dtw;

pub use cluster::{
    agglomerative_cluster, cluster_contrast, dendrogram, permute_matrix, sorted_matrix,
    ClusterContrast, ClusteringResult, Linkage, Merge, SortedMatrix,
};
pub use dtw::{dtw, dtw_with, pairwise_dtw, pairwise_dtw_rows, DtwMatrix, LocalCost};

/// Default number of clusters for cluster-sorted display.
pub const DEFAULT_CLUSTERS: usize = 10;

/// Default number of series in a DTW analysis.
pub const DEFAULT_SAMPLE: usize = 200;
