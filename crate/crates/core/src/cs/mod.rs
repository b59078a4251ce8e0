//! Sparse coding of MNIST digits flattened along different scan orders.
//!
//! Each 28×28 digit is padded to 32×32, read out as a 1024-sample signal
//! along a scan, approximated with Orthogonal Matching Pursuit over the
//! orthonormal Haar basis and rebuilt from the selected atoms. The PSNR of
//! the rebuilt image and the solve time are collected per scan and
//! summarized as box-plot statistics.

mod batch;
mod dictionary;
mod idx;
mod image;
mod metrics;
mod omp;
mod stats;

pub use batch::{
    run_batch, BatchReport, BenchConfig, BenchRecord, BenchScan, RecordError, ScanStats,
    BENCH_SIDE, DEFAULT_SPARSITY, RECORDS_HEADER, STATS_HEADER,
};
pub use dictionary::{haar_analysis, haar_dictionary, Dictionary};
pub use idx::{load_idx_images, write_idx_images, IDX3_UBYTE_MAGIC};
pub use image::{pad_image, scan_flatten, unflatten, GrayImage};
pub use metrics::{format_db, psnr, PEAK, PSNR_IDENTICAL};
pub use omp::{omp, SparseCoding};
pub use stats::BoxStats;
