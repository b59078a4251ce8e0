use std::fmt::Write;
use std::time::Instant;

use super::dictionary::{haar_dictionary, Dictionary};
use super::image::{pad_image, scan_flatten, unflatten, GrayImage};
use super::metrics::{format_db, psnr};
use super::omp::omp;
use super::stats::BoxStats;
use crate::curves::{scan_for_side, CurveId, ScanOrder};
use crate::error::{domain, Result};
use crate::parallel::{map_slice, Execution};

/// Side of the padded benchmark images.
pub const BENCH_SIDE: u32 = 32;

/// Default sparsity: 10% of the 1024 coefficients.
pub const DEFAULT_SPARSITY: usize = 102;

/// Header of the per-record CSV.
pub const RECORDS_HEADER: &str = "image_id,scan,sparsity,psnr_db,omp_time_ms,iterations";

/// Header of the statistics CSV.
pub const STATS_HEADER: &str = "scan,metric,q1,median,q3,whisker_lo,whisker_hi,n_outliers";

/// A scan order under the name it is reported with.
#[derive(Clone, Debug)]
pub struct BenchScan {
    pub name: String,
    pub scan: ScanOrder,
}

impl BenchScan {
    /// The 32×32 scan for a curve; Aztec comes from the subsampled 64×64
    /// curve.
    pub fn for_curve(id: CurveId) -> Result<BenchScan> {
        Ok(BenchScan {
            name: id.name().into(),
            scan: scan_for_side(id, BENCH_SIDE)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub sparsity: usize,
    /// OMP stops once the residual norm is at most this.
    pub tolerance: f64,
    /// Run every record on one thread so solve times are comparable. When
    /// false, images are processed concurrently and time statistics are
    /// not reported.
    pub serial_timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sparsity: DEFAULT_SPARSITY,
            tolerance: 0.0,
            serial_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub image_id: usize,
    pub scan: String,
    pub sparsity: usize,
    pub psnr_db: f64,
    pub omp_time_ms: f64,
    pub iterations: usize,
}

/// A record that could not be produced.
#[derive(Clone, Debug, PartialEq)]
pub struct RecordError {
    pub image_id: usize,
    pub scan: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanStats {
    pub scan: String,
    pub psnr: Option<BoxStats>,
    /// Only for serial runs; the first image is excluded as warm-up.
    pub time: Option<BoxStats>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchReport {
    pub config: BenchConfig,
    /// Ordered by image, then by scan in the order given.
    pub records: Vec<BenchRecord>,
    pub errors: Vec<RecordError>,
    pub stats: Vec<ScanStats>,
}

impl BatchReport {
    pub fn stats_for(&self, scan: &str) -> Option<&ScanStats> {
        self.stats.iter().find(|s| s.scan == scan)
    }

    pub fn median_psnr(&self, scan: &str) -> Option<f64> {
        self.stats_for(scan)?.psnr.as_ref().map(|s| s.median)
    }

    pub fn records_csv(&self) -> String {
        let mut out = format!("{RECORDS_HEADER}\n");
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{},{:.6},{}",
                r.image_id,
                r.scan,
                r.sparsity,
                format_db(r.psnr_db),
                r.omp_time_ms,
                r.iterations
            )
            .unwrap();
        }
        out
    }

    pub fn stats_csv(&self) -> String {
        let mut out = format!("{STATS_HEADER}\n");
        for s in &self.stats {
            for (metric, stats) in [("psnr_db", &s.psnr), ("omp_time_ms", &s.time)] {
                if let Some(b) = stats {
                    writeln!(
                        out,
                        "{},{metric},{},{},{},{},{},{}",
                        s.scan,
                        format_db(b.q1),
                        format_db(b.median),
                        format_db(b.q3),
                        format_db(b.whisker_lo),
                        format_db(b.whisker_hi),
                        b.outliers.len()
                    )
                    .unwrap();
                }
            }
        }
        out
    }

    /// Plain-text table of medians and quartiles.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "sparsity {}, {} records, {} errors\n",
            self.config.sparsity,
            self.records.len(),
            self.errors.len()
        );
        writeln!(
            out,
            "{:<12} {:>10} {:>10} {:>10} {:>14}",
            "scan", "psnr q1", "median", "q3", "median ms"
        )
        .unwrap();
        for s in &self.stats {
            let Some(p) = &s.psnr else { continue };
            let t = s
                .time
                .as_ref()
                .map_or("-".to_string(), |t| format!("{:.3}", t.median));
            writeln!(
                out,
                "{:<12} {:>10} {:>10} {:>10} {:>14}",
                s.scan,
                short_db(p.q1),
                short_db(p.median),
                short_db(p.q3),
                t
            )
            .unwrap();
        }
        out
    }
}

fn short_db(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.3}")
    } else {
        format_db(v)
    }
}

/// Result of one image under one scan.
fn code_one(
    image: &GrayImage,
    scan: &ScanOrder,
    dict: &Dictionary,
    config: &BenchConfig,
) -> Result<(f64, f64, usize)> {
    let signal = scan_flatten(image, scan)?;
    let start = Instant::now();
    let code = omp(&signal, dict, config.sparsity, config.tolerance)?;
    let elapsed = start.elapsed();
    let restored = unflatten(&code.reconstruct(dict), scan)?;
    let db = psnr(image, &restored)?;
    // Timer resolution floor keeps times strictly positive.
    let ms = (elapsed.as_secs_f64() * 1e3).max(1e-6);
    Ok((db, ms, code.iterations))
}

/// Pads every 28×28 image to 32×32, flattens it along each scan, codes it
/// with OMP over the 1024-atom Haar basis and measures PSNR of the
/// reconstruction. Per-record failures are collected, not raised.
pub fn run_batch(
    images: &[GrayImage],
    scans: &[BenchScan],
    config: &BenchConfig,
) -> Result<BatchReport> {
    if scans.is_empty() {
        return Err(domain("no scans given"));
    }
    if let Some(s) = scans
        .iter()
        .find(|s| (s.scan.width(), s.scan.height()) != (BENCH_SIDE, BENCH_SIDE))
    {
        return Err(domain(format!(
            "scan {} is {}x{}, expected {BENCH_SIDE}x{BENCH_SIDE}",
            s.name,
            s.scan.width(),
            s.scan.height()
        )));
    }
    let dim = (BENCH_SIDE * BENCH_SIDE) as usize;
    if config.sparsity == 0 || config.sparsity > dim {
        return Err(domain(format!(
            "sparsity must be in 1..={dim}, got {}",
            config.sparsity
        )));
    }
    let dict = haar_dictionary(dim)?;
    let exec = if config.serial_timing {
        Execution::Serial
    } else {
        Execution::default()
    };

    let indexed: Vec<(usize, &GrayImage)> = images.iter().enumerate().collect();
    let per_image = map_slice(exec, &indexed, |&(id, img)| {
        let padded = pad_image(img);
        scans
            .iter()
            .map(|s| {
                let outcome = padded
                    .as_ref()
                    .map_err(|e| e.to_string())
                    .and_then(|p| code_one(p, &s.scan, &dict, config).map_err(|e| e.to_string()));
                match outcome {
                    Ok((psnr_db, omp_time_ms, iterations)) => Ok(BenchRecord {
                        image_id: id,
                        scan: s.name.clone(),
                        sparsity: config.sparsity,
                        psnr_db,
                        omp_time_ms,
                        iterations,
                    }),
                    Err(message) => Err(RecordError {
                        image_id: id,
                        scan: s.name.clone(),
                        message,
                    }),
                }
            })
            .collect::<Vec<_>>()
    });

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for outcome in per_image.into_iter().flatten() {
        match outcome {
            Ok(r) => records.push(r),
            Err(e) => errors.push(e),
        }
    }
    let stats = scans
        .iter()
        .map(|s| {
            let mine = || records.iter().filter(|r| r.scan == s.name);
            let psnr: Vec<f64> = mine().map(|r| r.psnr_db).collect();
            let time: Vec<f64> = mine()
                .filter(|r| r.image_id != 0)
                .map(|r| r.omp_time_ms)
                .collect();
            ScanStats {
                scan: s.name.clone(),
                psnr: BoxStats::from_values(&psnr),
                time: if config.serial_timing {
                    BoxStats::from_values(&time)
                } else {
                    None
                },
            }
        })
        .collect();
    Ok(BatchReport {
        config: config.clone(),
        records,
        errors,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob(seed: u32) -> GrayImage {
        let bytes: Vec<u8> = (0..784u32)
            .map(|i| {
                let (r, c) = (i / 28, i % 28);
                let d = (r as i32 - 14).pow(2) + (c as i32 - 12 - (seed % 5) as i32).pow(2);
                if d < 40 + seed as i32 * 3 {
                    220
                } else {
                    0
                }
            })
            .collect();
        GrayImage::from_bytes(28, 28, &bytes).unwrap()
    }

    fn scans(ids: &[CurveId]) -> Vec<BenchScan> {
        ids.iter()
            .map(|&id| BenchScan::for_curve(id).unwrap())
            .collect()
    }

    #[test]
    fn full_basis_is_lossless() {
        let config = BenchConfig {
            sparsity: 1024,
            ..BenchConfig::default()
        };
        let report = run_batch(&[blob(1)], &scans(&[CurveId::RasterVertical]), &config).unwrap();
        assert!(report.errors.is_empty());
        assert!(report.records[0].psnr_db >= 100.0);
    }

    #[test]
    fn deterministic_psnr_and_layout() {
        let images: Vec<GrayImage> = (0..4).map(blob).collect();
        let ids = [CurveId::Hilbert, CurveId::Aztec, CurveId::ZigZagDiagonal];
        let config = BenchConfig {
            sparsity: 30,
            ..BenchConfig::default()
        };
        let a = run_batch(&images, &scans(&ids), &config).unwrap();
        let serial = BenchConfig {
            serial_timing: true,
            ..config.clone()
        };
        let b = run_batch(&images, &scans(&ids), &serial).unwrap();
        let key = |r: &BatchReport| -> Vec<(usize, String, u64, usize)> {
            r.records
                .iter()
                .map(|x| {
                    (
                        x.image_id,
                        x.scan.clone(),
                        x.psnr_db.to_bits(),
                        x.iterations,
                    )
                })
                .collect()
        };
        assert_eq!(key(&a), key(&b));
        assert_eq!(a.records.len(), 12);
        assert_eq!(
            (a.records[4].image_id, a.records[4].scan.as_str()),
            (1, "aztec")
        );
        assert!(a
            .records
            .iter()
            .all(|r| r.omp_time_ms > 0.0 && r.iterations <= 30));
        assert!(a.stats.iter().all(|s| s.time.is_none()));
        assert!(b
            .stats
            .iter()
            .all(|s| s.time.as_ref().is_some_and(|t| t.count == 3)));
        let csv = a.records_csv();
        assert!(
            csv.starts_with("image_id,scan,sparsity,psnr_db,omp_time_ms,iterations\n0,hilbert,30,")
        );
        assert!(b.stats_csv().starts_with(
            "scan,metric,q1,median,q3,whisker_lo,whisker_hi,n_outliers\nhilbert,psnr_db,"
        ));
        assert!(b.stats_csv().contains("\nhilbert,omp_time_ms,"));
    }

    #[test]
    fn record_errors_do_not_abort() {
        let images = vec![blob(0), GrayImage::zeros(10, 10), blob(2)];
        let report = run_batch(
            &images,
            &scans(&[CurveId::Hilbert]),
            &BenchConfig::default(),
        )
        .unwrap();
        assert_eq!(report.records.len(), 2);
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.errors[0].image_id, 1);
    }

    #[test]
    fn rejects_bad_configuration() {
        let imgs = [blob(0)];
        assert!(run_batch(&imgs, &[], &BenchConfig::default()).is_err());
        let small = BenchScan {
            name: "tiny".into(),
            scan: scan_for_side(CurveId::Hilbert, 16).unwrap(),
        };
        assert!(run_batch(&imgs, &[small], &BenchConfig::default()).is_err());
        let zero = BenchConfig {
            sparsity: 0,
            ..BenchConfig::default()
        };
        assert!(run_batch(&imgs, &scans(&[CurveId::Hilbert]), &zero).is_err());
    }
}
