use std::collections::BTreeMap;
use std::fmt::Write;

use crate::curves::{Cell, Curve, CurveId, Extent, ScanOrder};
use crate::error::{domain, Error, Result};
use crate::parallel::{map_range, Execution};

/// Largest grid [`enumerate_clusters`] accepts.
pub const MAX_CLUSTER_GRID_CELLS: u64 = 1 << 24;

/// An axis-aligned rectangle of cells (bounds inclusive) together with the
/// range of curve indices it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterRect {
    pub x0: u32,
    pub y0: u32,
    pub x1: u32,
    pub y1: u32,
    pub min_index: u64,
    pub max_index: u64,
    pub area: u64,
}

impl ClusterRect {
    pub fn width(&self) -> u32 {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> u32 {
        self.y1 - self.y0 + 1
    }

    /// The rectangle's indices form one contiguous interval.
    pub fn is_cluster(&self) -> bool {
        self.max_index - self.min_index + 1 == self.area
    }

    /// Measures the rectangle on `scan`.
    pub fn measure(scan: &ScanOrder, x0: u32, y0: u32, x1: u32, y1: u32) -> Result<ClusterRect> {
        if x0 > x1 || y0 > y1 || x1 >= scan.width() || y1 >= scan.height() {
            return Err(domain(format!(
                "rectangle ({x0}..{x1}, {y0}..{y1}) is not on the grid"
            )));
        }
        let (mut lo, mut hi) = (u32::MAX, 0u32);
        for y in y0..=y1 {
            for x in x0..=x1 {
                let d = scan.index_of(Cell::new(x, y)).expect("on grid");
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        Ok(ClusterRect {
            x0,
            y0,
            x1,
            y1,
            min_index: u64::from(lo),
            max_index: u64::from(hi),
            area: u64::from(x1 - x0 + 1) * u64::from(y1 - y0 + 1),
        })
    }
}

/// All cluster rectangles of a scan up to an area cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport {
    pub label: String,
    pub width: u32,
    pub height: u32,
    pub max_area: u64,
    /// Sorted by `(x0, y0, x1, y1)`.
    pub clusters: Vec<ClusterRect>,
}

impl ClusterReport {
    /// Cluster counts grouped by `(width, height)`.
    pub fn family_counts(&self) -> BTreeMap<(u32, u32), usize> {
        let mut counts = BTreeMap::new();
        for c in &self.clusters {
            *counts.entry((c.width(), c.height())).or_insert(0) += 1;
        }
        counts
    }

    pub fn contains(&self, x0: u32, y0: u32, x1: u32, y1: u32) -> bool {
        self.find(x0, y0, x1, y1).is_some()
    }

    pub fn find(&self, x0: u32, y0: u32, x1: u32, y1: u32) -> Option<&ClusterRect> {
        self.clusters
            .binary_search_by(|c| (c.x0, c.y0, c.x1, c.y1).cmp(&(x0, y0, x1, y1)))
            .ok()
            .map(|i| &self.clusters[i])
    }

    pub fn with_area(&self, area: u64) -> impl Iterator<Item = &ClusterRect> {
        self.clusters.iter().filter(move |c| c.area == area)
    }

    /// CSV with header `x0,y0,x1,y1,min_index,max_index,area`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x0,y0,x1,y1,min_index,max_index,area\n");
        for c in &self.clusters {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                c.x0, c.y0, c.x1, c.y1, c.min_index, c.max_index, c.area
            )
            .unwrap();
        }
        out
    }

    /// Human-readable summary with one line per `(width, height)` family.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{}: {} clusters on {}x{} (max area {})",
            self.label,
            self.clusters.len(),
            self.width,
            self.height,
            self.max_area
        )
        .unwrap();
        writeln!(
            out,
            "{:>6} {:>6} {:>8} {:>8}",
            "width", "height", "area", "count"
        )
        .unwrap();
        for ((w, h), n) in self.family_counts() {
            writeln!(
                out,
                "{w:>6} {h:>6} {:>8} {n:>8}",
                u64::from(w) * u64::from(h)
            )
            .unwrap();
        }
        out
    }
}

/// Every axis-aligned rectangle of area at most `max_area` whose indices are
/// a contiguous interval.
pub fn enumerate_clusters(scan: &ScanOrder, max_area: u64) -> Result<ClusterReport> {
    enumerate_clusters_with(scan, max_area, Execution::default())
}

/// [`enumerate_clusters`] with an explicit execution mode. Anchor rows are
/// processed independently and merged in sorted order.
pub fn enumerate_clusters_with(
    scan: &ScanOrder,
    max_area: u64,
    exec: Execution,
) -> Result<ClusterReport> {
    let (w, h) = (scan.width() as usize, scan.height() as usize);
    if (w * h) as u64 > MAX_CLUSTER_GRID_CELLS {
        return Err(Error::Capacity(format!(
            "{w}x{h} grid exceeds the {MAX_CLUSTER_GRID_CELLS}-cell enumeration cap"
        )));
    }
    let pos = scan.positions();
    let per_row = map_range(exec, 0..h, |y0| {
        let mut found = Vec::new();
        let mut col_min = vec![u32::MAX; w];
        let mut col_max = vec![0u32; w];
        for y1 in y0..h {
            let rows = (y1 - y0 + 1) as u64;
            if rows > max_area {
                break;
            }
            let row = &pos[y1 * w..(y1 + 1) * w];
            for x in 0..w {
                col_min[x] = col_min[x].min(row[x]);
                col_max[x] = col_max[x].max(row[x]);
            }
            for x0 in 0..w {
                let (mut lo, mut hi) = (u32::MAX, 0u32);
                for x1 in x0..w {
                    let area = (x1 - x0 + 1) as u64 * rows;
                    if area > max_area {
                        break;
                    }
                    lo = lo.min(col_min[x1]);
                    hi = hi.max(col_max[x1]);
                    let span = u64::from(hi - lo) + 1;
                    // Spans only grow with x1 and a cluster needs span == area <= max_area.
                    if span > max_area {
                        break;
                    }
                    if span == area {
                        found.push(ClusterRect {
                            x0: x0 as u32,
                            y0: y0 as u32,
                            x1: x1 as u32,
                            y1: y1 as u32,
                            min_index: u64::from(lo),
                            max_index: u64::from(hi),
                            area,
                        });
                    }
                }
            }
        }
        found
    });
    let mut clusters: Vec<ClusterRect> = per_row.into_iter().flatten().collect();
    clusters.sort_unstable_by_key(|c| (c.x0, c.y0, c.x1, c.y1));
    Ok(ClusterReport {
        label: scan.label().to_string(),
        width: scan.width(),
        height: scan.height(),
        max_area,
        clusters,
    })
}

/// Maps a cluster of the first-order Aztec curve to the cluster formed by
/// the same block positions at `target_order`.
///
/// Each cell of the first-order grid becomes an aligned block of side
/// `4^(n-1)` holding `16^(n-1)` consecutive indices, and blocks are visited in
/// first-order sequence, so the lifted rectangle is again a cluster.
pub fn lift_cluster(rect: &ClusterRect, target_order: u32) -> Result<ClusterRect> {
    if target_order == 0 {
        return Err(domain("target order must be at least 1"));
    }
    let base = Curve::new(CurveId::Aztec, Extent::Order(1))?.path()?;
    let measured = ClusterRect::measure(&base, rect.x0, rect.y0, rect.x1, rect.y1)?;
    if measured != *rect {
        return Err(domain(format!(
            "rectangle indices {}..{} (area {}) do not match the first-order curve ({}..{})",
            rect.min_index, rect.max_index, rect.area, measured.min_index, measured.max_index
        )));
    }
    if !rect.is_cluster() {
        return Err(domain(format!(
            "rectangle ({}..{}, {}..{}) is not a cluster of the first-order curve",
            rect.x0, rect.x1, rect.y0, rect.y1
        )));
    }
    let side = 4u32
        .checked_pow(target_order - 1)
        .ok_or_else(|| Error::Capacity(format!("order {target_order} too large")))?;
    let per_block = 16u64
        .checked_pow(target_order - 1)
        .filter(|&n| n <= 1 << 59)
        .ok_or_else(|| Error::Capacity(format!("order {target_order} too large")))?;
    Ok(ClusterRect {
        x0: rect.x0 * side,
        y0: rect.y0 * side,
        x1: (rect.x1 + 1) * side - 1,
        y1: (rect.y1 + 1) * side - 1,
        min_index: rect.min_index * per_block,
        max_index: (rect.max_index + 1) * per_block - 1,
        area: rect.area * per_block,
    })
}

/// The four characteristic Aztec cluster families as first-order
/// rectangles `(x0, y0, x1, y1)`: a 1×4 column, a 3×3 square, a 2×3 and a
/// 3×4 rectangle.
pub const AZTEC_FAMILY_SEEDS: [(u32, u32, u32, u32); 4] =
    [(0, 0, 0, 3), (1, 1, 3, 3), (2, 1, 3, 3), (1, 0, 3, 3)];

/// The characteristic families lifted to `order`, with areas `4^(2n-1)`,
/// `9·16^(n-1)`, `6·16^(n-1)` and `12·16^(n-1)`.
pub fn aztec_family_clusters(order: u32) -> Result<Vec<ClusterRect>> {
    let base = Curve::new(CurveId::Aztec, Extent::Order(1))?.path()?;
    AZTEC_FAMILY_SEEDS
        .iter()
        .map(|&(x0, y0, x1, y1)| lift_cluster(&ClusterRect::measure(&base, x0, y0, x1, y1)?, order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::path;

    /// Sort-based oracle: a rectangle is a cluster iff its sorted indices
    /// increase by one at every step.
    fn naive_clusters(scan: &ScanOrder, max_area: u64) -> Vec<(u32, u32, u32, u32)> {
        let mut out = Vec::new();
        for x0 in 0..scan.width() {
            for y0 in 0..scan.height() {
                for x1 in x0..scan.width() {
                    for y1 in y0..scan.height() {
                        let area = u64::from(x1 - x0 + 1) * u64::from(y1 - y0 + 1);
                        if area > max_area {
                            continue;
                        }
                        let mut idx: Vec<u32> = (x0..=x1)
                            .flat_map(|x| (y0..=y1).map(move |y| Cell::new(x, y)))
                            .map(|c| scan.index_of(c).unwrap())
                            .collect();
                        idx.sort_unstable();
                        if idx.windows(2).all(|w| w[1] == w[0] + 1) {
                            out.push((x0, y0, x1, y1));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn keys(report: &ClusterReport) -> Vec<(u32, u32, u32, u32)> {
        report
            .clusters
            .iter()
            .map(|c| (c.x0, c.y0, c.x1, c.y1))
            .collect()
    }

    #[test]
    fn matches_sort_oracle() {
        let scans = [
            path(CurveId::Aztec, Extent::Order(1)).unwrap(),
            path(CurveId::Aztec, Extent::Order(2)).unwrap(),
            path(CurveId::Hilbert, Extent::Order(3)).unwrap(),
            path(CurveId::Peano, Extent::Order(2)).unwrap(),
            path(
                CurveId::ZigZagDiagonal,
                Extent::Dims {
                    width: 7,
                    height: 5,
                },
            )
            .unwrap(),
            path(CurveId::Serpentine, Extent::square(6)).unwrap(),
        ];
        for scan in &scans {
            for max_area in [u64::MAX, 12, 1] {
                let fast = enumerate_clusters(scan, max_area).unwrap();
                assert_eq!(
                    keys(&fast),
                    naive_clusters(scan, max_area),
                    "{}",
                    scan.label()
                );
                assert!(fast.clusters.iter().all(ClusterRect::is_cluster));
            }
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let scan = path(CurveId::Aztec, Extent::Order(2)).unwrap();
        let a = enumerate_clusters_with(&scan, u64::MAX, Execution::Serial).unwrap();
        let b = enumerate_clusters_with(&scan, u64::MAX, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn aztec_order_one_families() {
        let scan = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let report = enumerate_clusters(&scan, 16).unwrap();
        let expect = [
            ((1, 1, 3, 3), 4, 12),
            ((0, 0, 0, 3), 0, 3),
            ((2, 1, 3, 3), 5, 10),
            ((1, 0, 3, 3), 4, 15),
        ];
        for ((x0, y0, x1, y1), lo, hi) in expect {
            let c = report.find(x0, y0, x1, y1).expect("cluster present");
            assert_eq!((c.min_index, c.max_index), (lo, hi));
        }
        assert!(report.contains(0, 0, 3, 3));
    }

    #[test]
    fn hilbert_has_no_three_by_three() {
        let scan = path(CurveId::Hilbert, Extent::Order(2)).unwrap();
        let report = enumerate_clusters(&scan, 16).unwrap();
        assert!(!report.family_counts().contains_key(&(3, 3)));
        for (x0, y0) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            assert!(!ClusterRect::measure(&scan, x0, y0, x0 + 2, y0 + 2)
                .unwrap()
                .is_cluster());
        }
    }

    #[test]
    fn lifting() {
        let base = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let square = ClusterRect::measure(&base, 1, 1, 3, 3).unwrap();
        let lifted = lift_cluster(&square, 2).unwrap();
        assert_eq!((lifted.x0, lifted.y0, lifted.x1, lifted.y1), (4, 4, 15, 15));
        assert_eq!(
            (lifted.area, lifted.min_index, lifted.max_index),
            (144, 64, 207)
        );
        let column = ClusterRect::measure(&base, 0, 0, 0, 3).unwrap();
        let lifted = lift_cluster(&column, 2).unwrap();
        assert_eq!((lifted.x0, lifted.y0, lifted.x1, lifted.y1), (0, 0, 3, 15));
        assert_eq!(
            (lifted.area, lifted.min_index, lifted.max_index),
            (64, 0, 63)
        );
        let full = ClusterRect::measure(&base, 0, 0, 3, 3).unwrap();
        for n in 1..=5 {
            assert_eq!(lift_cluster(&full, n).unwrap().area, 16u64.pow(n));
        }
        assert_eq!(lift_cluster(&square, 1).unwrap(), square);
    }

    #[test]
    fn lifting_rejects_non_clusters() {
        let base = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let not_cluster = ClusterRect::measure(&base, 0, 0, 1, 1).unwrap();
        assert!(!not_cluster.is_cluster());
        assert!(lift_cluster(&not_cluster, 2).is_err());
        let mut forged = ClusterRect::measure(&base, 1, 1, 3, 3).unwrap();
        forged.min_index = 3;
        forged.max_index = 11;
        assert!(lift_cluster(&forged, 2).is_err());
    }

    #[test]
    fn lifted_clusters_are_enumerated() {
        for order in 2..=3 {
            let scan = path(CurveId::Aztec, Extent::Order(order)).unwrap();
            let report = enumerate_clusters(&scan, u64::MAX).unwrap();
            for lifted in aztec_family_clusters(order).unwrap() {
                assert_eq!(
                    report.find(lifted.x0, lifted.y0, lifted.x1, lifted.y1),
                    Some(&lifted)
                );
            }
        }
    }

    #[test]
    fn report_formats() {
        let scan = path(CurveId::Hilbert, Extent::Order(1)).unwrap();
        let report = enumerate_clusters(&scan, u64::MAX).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("x0,y0,x1,y1,min_index,max_index,area\n0,0,0,0,0,0,1\n"));
        assert_eq!(csv.lines().count(), report.clusters.len() + 1);
        assert!(report.summary().contains("hilbert order 1"));
    }
}
