use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::clusters::ClusterRect;
use crate::curves::{Cell, ScanOrder};
use crate::error::{domain, Result};
use crate::parallel::{map_slice, Execution};

/// A query rectangle, bounds inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryRect {
    pub x0: u32,
    pub y0: u32,
    pub x1: u32,
    pub y1: u32,
}

/// Run-count statistics for one scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanLocality {
    pub label: String,
    pub mean_runs: f64,
    pub max_runs: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityStats {
    pub width: u32,
    pub height: u32,
    pub samples: usize,
    pub seed: u64,
    pub scans: Vec<ScanLocality>,
}

impl LocalityStats {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scan,samples,seed,mean_runs,max_runs\n");
        for s in &self.scans {
            writeln!(
                out,
                "{},{},{},{:.6},{}",
                s.label, self.samples, self.seed, s.mean_runs, s.max_runs
            )
            .unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} random queries on {}x{} (seed {})\n",
            self.samples, self.width, self.height, self.seed
        );
        writeln!(out, "{:<36} {:>10} {:>8}", "scan", "mean runs", "max runs").unwrap();
        for s in &self.scans {
            writeln!(
                out,
                "{:<36} {:>10.3} {:>8}",
                s.label, s.mean_runs, s.max_runs
            )
            .unwrap();
        }
        out
    }
}

/// Number of maximal runs of consecutive indices needed to cover `rect`.
pub fn count_runs(scan: &ScanOrder, rect: QueryRect) -> u64 {
    let mut idx: Vec<u32> =
        Vec::with_capacity(((rect.x1 - rect.x0 + 1) * (rect.y1 - rect.y0 + 1)) as usize);
    for y in rect.y0..=rect.y1 {
        for x in rect.x0..=rect.x1 {
            idx.push(scan.index_of(Cell::new(x, y)).expect("query on grid"));
        }
    }
    idx.sort_unstable();
    1 + idx.windows(2).filter(|w| w[1] != w[0] + 1).count() as u64
}

/// Query rectangles drawn uniformly from all rectangles with both sides at
/// least two cells.
pub fn sample_queries(
    width: u32,
    height: u32,
    samples: usize,
    seed: u64,
) -> Result<Vec<QueryRect>> {
    if width < 2 || height < 2 {
        return Err(domain(format!(
            "queries need a grid of at least 2x2, got {width}x{height}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Two distinct uniform endpoints give a uniform interval of length >= 2.
    let mut interval = |n: u32| loop {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            break (a.min(b), a.max(b));
        }
    };
    Ok((0..samples)
        .map(|_| {
            let (x0, x1) = interval(width);
            let (y0, y1) = interval(height);
            QueryRect { x0, y0, x1, y1 }
        })
        .collect())
}

/// Mean and maximum run counts over the same seeded queries for every scan.
pub fn locality_benchmark(scans: &[ScanOrder], samples: usize, seed: u64) -> Result<LocalityStats> {
    locality_benchmark_with(scans, samples, seed, Execution::default())
}

pub fn locality_benchmark_with(
    scans: &[ScanOrder],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<LocalityStats> {
    let first = scans.first().ok_or_else(|| domain("no scans given"))?;
    if samples == 0 {
        return Err(domain("at least one query is required"));
    }
    let (width, height) = (first.width(), first.height());
    if let Some(odd) = scans
        .iter()
        .find(|s| (s.width(), s.height()) != (width, height))
    {
        return Err(domain(format!(
            "{} is {}x{}, expected {width}x{height}",
            odd.label(),
            odd.width(),
            odd.height()
        )));
    }
    let queries = sample_queries(width, height, samples, seed)?;
    let per_scan = scans
        .iter()
        .map(|scan| {
            let runs = map_slice(exec, &queries, |&q| count_runs(scan, q));
            ScanLocality {
                label: scan.label().to_string(),
                mean_runs: runs.iter().sum::<u64>() as f64 / runs.len() as f64,
                max_runs: runs.iter().copied().max().unwrap_or(0),
            }
        })
        .collect();
    Ok(LocalityStats {
        width,
        height,
        samples,
        seed,
        scans: per_scan,
    })
}

impl From<&ClusterRect> for QueryRect {
    fn from(c: &ClusterRect) -> Self {
        QueryRect {
            x0: c.x0,
            y0: c.y0,
            x1: c.x1,
            y1: c.y1,
        }
    }
}
