use crate::curves::{Cell, Curve, CurveId, Extent, ScanOrder};
use crate::error::{domain, Result};

/// Result of checking a visiting sequence against a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub width: u32,
    pub height: u32,
    pub len: usize,
    /// Every cell visited exactly once.
    pub bijective: bool,
    pub first_out_of_range: Option<(u64, Cell)>,
    pub first_revisit: Option<(u64, Cell)>,
    pub missing_cells: u64,
    pub continuity_checked: bool,
    /// Number of consecutive pairs that are not unit steps.
    pub discontinuities: u64,
    /// Smallest `d` such that cells `d` and `d + 1` are not neighbours.
    pub first_discontinuity: Option<u64>,
    pub entry: Option<Cell>,
    pub exit: Option<Cell>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.bijective && (!self.continuity_checked || self.discontinuities == 0)
    }
}

/// Checks bijectivity and, when `expect_continuity` is set, unit-step
/// continuity of an arbitrary visiting sequence. Violations are reported,
/// never raised.
pub fn verify_path(
    width: u32,
    height: u32,
    cells: &[Cell],
    expect_continuity: bool,
) -> VerificationReport {
    let n = u64::from(width) * u64::from(height);
    let mut seen = vec![false; n as usize];
    let mut first_out_of_range = None;
    let mut first_revisit = None;
    let mut covered = 0u64;
    for (d, &c) in cells.iter().enumerate() {
        if c.x >= width || c.y >= height {
            first_out_of_range.get_or_insert((d as u64, c));
            continue;
        }
        let slot = &mut seen[(c.y as usize) * width as usize + c.x as usize];
        if *slot {
            first_revisit.get_or_insert((d as u64, c));
        } else {
            *slot = true;
            covered += 1;
        }
    }
    let missing_cells = n - covered;
    let bijective = first_out_of_range.is_none()
        && first_revisit.is_none()
        && missing_cells == 0
        && cells.len() as u64 == n;

    let (mut discontinuities, mut first_discontinuity) = (0, None);
    if expect_continuity {
        for (d, w) in cells.windows(2).enumerate() {
            if w[0].manhattan(w[1]) != 1 {
                discontinuities += 1;
                first_discontinuity.get_or_insert(d as u64);
            }
        }
    }
    VerificationReport {
        width,
        height,
        len: cells.len(),
        bijective,
        first_out_of_range,
        first_revisit,
        missing_cells,
        continuity_checked: expect_continuity,
        discontinuities,
        first_discontinuity,
        entry: cells.first().copied(),
        exit: cells.last().copied(),
    }
}

pub fn verify_curve(scan: &ScanOrder, expect_continuity: bool) -> VerificationReport {
    verify_path(scan.width(), scan.height(), scan.cells(), expect_continuity)
}

/// Outcome of [`check_self_similarity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfSimilarityReport {
    pub order: u32,
    pub blocks: u64,
    /// Runs of consecutive indices that straddle more than one aligned block.
    pub split_runs: u64,
    /// Whether the sequence of visited blocks equals the order-1 curve.
    pub block_order_matches: bool,
}

impl SelfSimilarityReport {
    pub fn passed(&self) -> bool {
        self.split_runs == 0 && self.block_order_matches
    }
}

/// Checks that every run of `(b²)^(n-1)` consecutive indices of a grammar
/// curve fills one aligned `b^(n-1)`-sided block, and that the blocks are
/// visited in the order of the first-order curve.
pub fn check_self_similarity(id: CurveId, order: u32) -> Result<SelfSimilarityReport> {
    let b = id
        .grid_factor()
        .ok_or_else(|| domain(format!("{id} is not a grammar curve")))?;
    if order < 2 {
        return Err(domain("self-similarity needs order 2 or more"));
    }
    let scan = Curve::new(id, Extent::Order(order))?.path()?;
    let top = Curve::new(id, Extent::Order(1))?.path()?;
    let block_side = b.pow(order - 1);
    let run = (block_side as usize) * (block_side as usize);
    let mut split_runs = 0;
    let mut visited = Vec::with_capacity(top.len());
    for chunk in scan.cells().chunks(run) {
        let block = |c: &Cell| Cell::new(c.x / block_side, c.y / block_side);
        let first = block(&chunk[0]);
        if chunk.iter().any(|c| block(c) != first) {
            split_runs += 1;
        }
        visited.push(first);
    }
    Ok(SelfSimilarityReport {
        order,
        blocks: visited.len() as u64,
        split_runs,
        block_order_matches: visited == top.cells(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::path;

    #[test]
    fn aztec_order_two_passes() {
        let scan = path(CurveId::Aztec, Extent::Order(2)).unwrap();
        let r = verify_curve(&scan, true);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.entry, Some(Cell::new(0, 0)));
        assert_eq!(r.exit, Some(Cell::new(15, 0)));
    }

    #[test]
    fn raster_breaks_at_column_jump() {
        let scan = path(CurveId::RasterVertical, Extent::square(4)).unwrap();
        let r = verify_curve(&scan, true);
        assert!(!r.passed());
        assert!(r.bijective);
        assert_eq!(r.first_discontinuity, Some(3));
        assert_eq!(r.discontinuities, 3);
        assert!(verify_curve(&scan, false).passed());
    }

    #[test]
    fn hilbert_order_three_passes() {
        let scan = path(CurveId::Hilbert, Extent::Order(3)).unwrap();
        assert!(verify_curve(&scan, true).passed());
    }

    #[test]
    fn broken_sequences_are_reported() {
        let c = Cell::new;
        let r = verify_path(2, 2, &[c(0, 0), c(0, 1), c(0, 1), c(5, 5)], true);
        assert!(!r.bijective);
        assert_eq!(r.first_revisit, Some((2, c(0, 1))));
        assert_eq!(r.first_out_of_range, Some((3, c(5, 5))));
        assert_eq!(r.missing_cells, 2);
        assert_eq!(r.first_discontinuity, Some(1));
        let empty = verify_path(2, 2, &[], true);
        assert!(!empty.passed());
        assert_eq!(empty.entry, None);
    }

    #[test]
    fn self_similarity_holds() {
        for order in 2..=3 {
            for id in [CurveId::Aztec, CurveId::Hilbert, CurveId::Peano] {
                let r = check_self_similarity(id, order).unwrap();
                assert!(r.passed(), "{id} {r:?}");
            }
        }
        assert!(check_self_similarity(CurveId::Serpentine, 2).is_err());
    }
}
