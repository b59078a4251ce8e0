//! Closed-form raster, serpentine and diagonal zig-zag scans.

use super::{Cell, CurveId};

/// Range of `x` on anti-diagonal `s` (`x + y = s`).
fn diagonal_span(s: u64, width: u32, height: u32) -> (u64, u64) {
    let lo = s.saturating_sub(u64::from(height) - 1);
    let hi = s.min(u64::from(width) - 1);
    (lo, hi)
}

pub(super) fn d2xy(id: CurveId, width: u32, height: u32, d: u64) -> Cell {
    let (w, h) = (u64::from(width), u64::from(height));
    let (x, y) = match id {
        CurveId::RasterVertical => (d / h, d % h),
        CurveId::RasterHorizontal => (d % w, d / w),
        CurveId::Serpentine => {
            let x = d / h;
            let r = d % h;
            (x, if x.is_multiple_of(2) { r } else { h - 1 - r })
        }
        CurveId::ZigZagDiagonal => {
            let mut rest = d;
            let mut s = 0u64;
            loop {
                let (lo, hi) = diagonal_span(s, width, height);
                let len = hi - lo + 1;
                if rest < len {
                    // Odd diagonals run towards decreasing x.
                    let x = if s % 2 == 1 { hi - rest } else { lo + rest };
                    break (x, s - x);
                }
                rest -= len;
                s += 1;
            }
        }
        other => unreachable!("{other} is a grammar curve"),
    };
    Cell::new(x as u32, y as u32)
}

pub(super) fn xy2d(id: CurveId, width: u32, height: u32, cell: Cell) -> u64 {
    let (w, h) = (u64::from(width), u64::from(height));
    let (x, y) = (u64::from(cell.x), u64::from(cell.y));
    match id {
        CurveId::RasterVertical => x * h + y,
        CurveId::RasterHorizontal => y * w + x,
        CurveId::Serpentine => x * h + if x % 2 == 0 { y } else { h - 1 - y },
        CurveId::ZigZagDiagonal => {
            let s = x + y;
            let before: u64 = (0..s)
                .map(|t| {
                    let (lo, hi) = diagonal_span(t, width, height);
                    hi - lo + 1
                })
                .sum();
            let (lo, hi) = diagonal_span(s, width, height);
            before + if s % 2 == 1 { hi - x } else { x - lo }
        }
        other => unreachable!("{other} is a grammar curve"),
    }
}
