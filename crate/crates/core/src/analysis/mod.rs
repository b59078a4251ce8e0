//! Verification and measurement of scan orders.

mod clusters;
mod locality;
mod verify;

pub use clusters::{
    aztec_family_clusters, enumerate_clusters, enumerate_clusters_with, lift_cluster, ClusterRect,
    ClusterReport, AZTEC_FAMILY_SEEDS, MAX_CLUSTER_GRID_CELLS,
};
pub use locality::{
    count_runs, locality_benchmark, locality_benchmark_with, sample_queries, LocalityStats,
    QueryRect, ScanLocality,
};
pub use verify::{
    check_self_similarity, verify_curve, verify_path, SelfSimilarityReport, VerificationReport,
};
