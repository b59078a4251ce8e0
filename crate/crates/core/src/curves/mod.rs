//! Index/cell mappings for every supported scan order.
//!
//! [`Curve`] evaluates a single index or cell in `O(order)` for the grammar
//! curves and in `O(1)`..`O(W+H)` for the plain scans. [`ScanOrder`] is the
//! materialized bijection all analysis and benchmark code works with.

mod export;
mod scans;
mod tables;

use std::fmt;
use std::str::FromStr;

pub use crate::grammar::Cell;
pub use export::{to_csv, to_json};

use crate::error::{domain, Error, Result};
use crate::grammar::{self, DihedralOp, GrammarSpec, MAX_MATERIALIZED_CELLS};
use tables::SfcTables;

/// Names every scan order the crate implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveId {
    Aztec,
    Hilbert,
    Peano,
    /// Column by column, each column bottom to top.
    RasterVertical,
    /// Row by row, each row left to right.
    RasterHorizontal,
    /// Column by column, alternating up and down.
    Serpentine,
    /// JPEG-style anti-diagonal zig-zag.
    ZigZagDiagonal,
}

impl CurveId {
    pub const ALL: [CurveId; 7] = [
        CurveId::Aztec,
        CurveId::Hilbert,
        CurveId::Peano,
        CurveId::RasterVertical,
        CurveId::RasterHorizontal,
        CurveId::Serpentine,
        CurveId::ZigZagDiagonal,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            CurveId::Aztec => "aztec",
            CurveId::Hilbert => "hilbert",
            CurveId::Peano => "peano",
            CurveId::RasterVertical => "raster-v",
            CurveId::RasterHorizontal => "raster-h",
            CurveId::Serpentine => "serpentine",
            CurveId::ZigZagDiagonal => "zigzag",
        }
    }

    /// Whether the order is generated by a grammar (and so is continuous).
    pub fn is_space_filling(self) -> bool {
        self.grid_factor().is_some()
    }

    /// Whether consecutive cells are always neighbours.
    pub fn is_continuous(self) -> bool {
        self.is_space_filling() || self == CurveId::Serpentine
    }

    /// Children per side of the grammar's base pattern.
    pub fn grid_factor(self) -> Option<u32> {
        match self {
            CurveId::Aztec => Some(4),
            CurveId::Hilbert => Some(2),
            CurveId::Peano => Some(3),
            _ => None,
        }
    }

    pub fn grammar(self) -> Option<GrammarSpec> {
        match self {
            CurveId::Aztec => Some(grammar::aztec()),
            CurveId::Hilbert => Some(grammar::hilbert()),
            CurveId::Peano => Some(grammar::peano()),
            _ => None,
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CurveId> {
        CurveId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CurveId::ALL.iter().map(|c| c.name()).collect();
                domain(format!(
                    "unknown curve '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// Size of a curve: a recursion order for the grammar curves or explicit
/// dimensions for any curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Order(u32),
    Dims { width: u32, height: u32 },
}

impl Extent {
    pub fn square(side: u32) -> Extent {
        Extent::Dims {
            width: side,
            height: side,
        }
    }
}

/// The exponent `n` with `base^n == value`, if any.
pub(crate) fn exact_log(value: u64, base: u64) -> Option<u32> {
    let mut n = 0;
    let mut v = 1u64;
    while v < value {
        v = v.checked_mul(base)?;
        n += 1;
    }
    (v == value).then_some(n)
}

/// A curve with fixed dimensions, evaluated index by index.
#[derive(Clone, Copy, Debug)]
pub struct Curve {
    id: CurveId,
    width: u32,
    height: u32,
    order: Option<u32>,
    tables: Option<&'static SfcTables>,
}

impl Curve {
    pub fn new(id: CurveId, extent: Extent) -> Result<Curve> {
        match (id.grid_factor(), extent) {
            (Some(b), Extent::Order(order)) => Curve::sfc(id, b, order),
            (Some(b), Extent::Dims { width, height }) => {
                if width != height {
                    return Err(domain(format!(
                        "{id} needs a square grid, got {width}x{height}"
                    )));
                }
                let order = exact_log(u64::from(width), u64::from(b))
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| {
                        domain(format!(
                            "{id} needs a side that is a power of {b}, got {width}"
                        ))
                    })?;
                Curve::sfc(id, b, order)
            }
            (None, Extent::Dims { width, height }) => {
                if width == 0 || height == 0 {
                    return Err(domain(format!("empty grid {width}x{height}")));
                }
                Ok(Curve {
                    id,
                    width,
                    height,
                    order: None,
                    tables: None,
                })
            }
            (None, Extent::Order(_)) => {
                Err(domain(format!("{id} is sized by dimensions, not by order")))
            }
        }
    }

    /// Convenience for a square grid of the given side.
    pub fn with_side(id: CurveId, side: u32) -> Result<Curve> {
        Curve::new(id, Extent::square(side))
    }

    fn sfc(id: CurveId, grid_factor: u32, order: u32) -> Result<Curve> {
        if order == 0 {
            return Err(domain("order must be at least 1"));
        }
        let (_, side) = grammar::curve_size(grid_factor, order).ok_or_else(|| {
            Error::Capacity(format!("{id} order {order} overflows the index type"))
        })?;
        Ok(Curve {
            id,
            width: side,
            height: side,
            order: Some(order),
            tables: Some(SfcTables::get(id)),
        })
    }

    pub fn id(&self) -> CurveId {
        self.id
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Recursion order, for grammar curves.
    pub fn order(&self) -> Option<u32> {
        self.order
    }

    /// Number of cells.
    pub fn len(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The cell visited at step `d`.
    pub fn d2xy(&self, d: u64) -> Result<Cell> {
        if d >= self.len() {
            return Err(domain(format!(
                "index {d} out of range for {} cells",
                self.len()
            )));
        }
        Ok(match (self.tables, self.order) {
            (Some(t), Some(order)) => t.d2xy(d, order),
            _ => scans::d2xy(self.id, self.width, self.height, d),
        })
    }

    /// The step at which `cell` is visited.
    pub fn xy2d(&self, cell: Cell) -> Result<u64> {
        if cell.x >= self.width || cell.y >= self.height {
            return Err(domain(format!(
                "cell {cell} outside the {}x{} grid",
                self.width, self.height
            )));
        }
        Ok(match (self.tables, self.order) {
            (Some(t), Some(order)) => t.xy2d(cell, order),
            _ => scans::xy2d(self.id, self.width, self.height, cell),
        })
    }

    /// Human-readable description, e.g. `aztec order 2` or `zigzag 32x32`.
    pub fn label(&self) -> String {
        match self.order {
            Some(order) => format!("{} order {order}", self.id),
            None => format!("{} {}x{}", self.id, self.width, self.height),
        }
    }

    /// Materializes the full bijection. Grammar curves are produced by
    /// recursive expansion rather than index-by-index evaluation.
    pub fn path(&self) -> Result<ScanOrder> {
        let n = self.len();
        if n > MAX_MATERIALIZED_CELLS {
            return Err(Error::Capacity(format!(
                "{} has {n} cells, above the {MAX_MATERIALIZED_CELLS} materialization cap",
                self.label()
            )));
        }
        let cells = match (self.id.grammar(), self.order) {
            (Some(spec), Some(order)) => grammar::expand(&spec, DihedralOp::IDENTITY, order)?.cells,
            _ => (0..n)
                .map(|d| scans::d2xy(self.id, self.width, self.height, d))
                .collect(),
        };
        ScanOrder::new(self.width, self.height, cells, self.label())
    }
}

/// Shorthand for `Curve::new(id, extent)?.path()`.
pub fn path(id: CurveId, extent: Extent) -> Result<ScanOrder> {
    Curve::new(id, extent)?.path()
}

/// A bijection between indices `0..W·H` and the cells of a `W`×`H` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOrder {
    width: u32,
    height: u32,
    cells: Vec<Cell>,
    positions: Vec<u32>,
    label: String,
}

impl ScanOrder {
    /// Wraps a visiting sequence, checking that it covers every cell once.
    pub fn new(
        width: u32,
        height: u32,
        cells: Vec<Cell>,
        label: impl Into<String>,
    ) -> Result<ScanOrder> {
        let n = u64::from(width) * u64::from(height);
        if n > MAX_MATERIALIZED_CELLS {
            return Err(Error::Capacity(format!(
                "{width}x{height} grid is too large to materialize"
            )));
        }
        if cells.len() as u64 != n {
            return Err(domain(format!(
                "{} cells given for a {width}x{height} grid",
                cells.len()
            )));
        }
        let mut positions = vec![u32::MAX; n as usize];
        for (d, cell) in cells.iter().enumerate() {
            if cell.x >= width || cell.y >= height {
                return Err(domain(format!("index {d}: cell {cell} outside the grid")));
            }
            let slot = &mut positions[(cell.y * width + cell.x) as usize];
            if *slot != u32::MAX {
                return Err(domain(format!(
                    "index {d}: cell {cell} already visited at {slot}"
                )));
            }
            *slot = d as u32;
        }
        Ok(ScanOrder {
            width,
            height,
            cells,
            positions,
            label: label.into(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cell(&self, d: usize) -> Option<Cell> {
        self.cells.get(d).copied()
    }

    /// The index at which `cell` is visited.
    pub fn index_of(&self, cell: Cell) -> Option<u32> {
        if cell.x >= self.width || cell.y >= self.height {
            return None;
        }
        Some(self.positions[(cell.y * self.width + cell.x) as usize])
    }

    /// Visit indices laid out row-major (`y * width + x`).
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }
}

/// Reduces a curve on a `native_side` grid to a `target_side` grid.
///
/// Each native cell maps to the target cell `(x/k, y/k)` with
/// `k = native_side / target_side`; target cells are ordered by their first
/// visit.
pub fn subsampled_scan(id: CurveId, native_side: u32, target_side: u32) -> Result<ScanOrder> {
    if target_side == 0 || !native_side.is_multiple_of(target_side) {
        return Err(domain(format!(
            "native side {native_side} is not a multiple of target side {target_side}"
        )));
    }
    let native = Curve::with_side(id, native_side)?.path()?;
    let k = native_side / target_side;
    if k == 1 {
        return Ok(native);
    }
    let mut seen = vec![false; (target_side * target_side) as usize];
    let mut cells = Vec::with_capacity(seen.len());
    for c in native.cells() {
        let t = Cell::new(c.x / k, c.y / k);
        let slot = &mut seen[(t.y * target_side + t.x) as usize];
        if !*slot {
            *slot = true;
            cells.push(t);
        }
    }
    ScanOrder::new(
        target_side,
        target_side,
        cells,
        format!("{} subsampled {native_side}->{target_side}", native.label()),
    )
}

/// A scan of a `side`×`side` grid for any curve.
///
/// Grammar curves whose natural sides skip `side` are generated at the
/// smallest power of their pattern size that is a multiple of `side` and
/// then subsampled, so the Aztec scan of a 32×32 image comes from the
/// 64×64 curve.
pub fn scan_for_side(id: CurveId, side: u32) -> Result<ScanOrder> {
    let Some(b) = id.grid_factor() else {
        return Curve::with_side(id, side)?.path();
    };
    let mut native = u64::from(b);
    while native % u64::from(side) != 0 {
        native *= u64::from(b);
        if native * native > MAX_MATERIALIZED_CELLS {
            return Err(domain(format!("no {id} grid side is a multiple of {side}")));
        }
    }
    subsampled_scan(id, native as u32, side)
}
