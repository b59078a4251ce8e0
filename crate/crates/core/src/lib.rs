//! Space-filling curves built from substitution grammars, with tools to
//! check and measure them.
//!
//! The crate is organised in layers:
//!
//! - [`grammar`]: the dihedral group of the square, grammar productions and
//!   their recursive expansion. Ships the Aztec, Hilbert and Peano grammars.
//! - [`curves`]: a uniform index/cell mapping ([`curves::Curve`]) over those
//!   grammars and over plain raster, serpentine and diagonal zig-zag scans.
//! - [`analysis`]: continuity and bijectivity checks, rectangular cluster
//!   enumeration and range-query locality metrics.
//! - [`render`]: deterministic SVG drawings of paths and cluster overlays.
//! - [`cs`]: a sparse-coding benchmark that flattens MNIST digits along a scan
//!   order, codes them with Orthogonal Matching Pursuit over a Haar basis and
//!   reports PSNR and solve time.
//!
//! Heavy loops run on rayon when the `parallel` feature is enabled (the
//! default); see [`Execution`].

pub mod analysis;
pub mod cs;
pub mod curves;
pub mod error;
pub mod grammar;
mod parallel;
pub mod render;

pub use crate::curves::{Cell, Curve, CurveId, Extent, ScanOrder};
pub use crate::error::{Error, Result};
pub use crate::parallel::Execution;
