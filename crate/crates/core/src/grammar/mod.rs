//! Substitution grammars for square space-filling curves.
//!
//! A curve of order `n + 1` is `b²` oriented copies of the order-`n` curve laid
//! out along the base [`Production`]. Orientations are elements of the dihedral
//! group of the square ([`DihedralOp`]); traversal direction is never
//! reversed.

mod dihedral;
mod production;

pub use dihedral::{Cell, DihedralOp, Move};
pub use production::{
    derive_production, validate, GrammarSpec, Production, ValidationVerdict, Violation,
};

use crate::error::{Error, Result};

/// Largest path [`expand`] will materialize, in cells.
pub const MAX_MATERIALIZED_CELLS: u64 = 1 << 28;

/// Largest cell count addressable by index arithmetic.
pub const MAX_INDEXED_CELLS: u64 = 1 << 63;

/// A materialized curve: `cells[d]` is the cell visited at step `d` on a
/// `side`×`side` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePath {
    pub side: u32,
    pub cells: Vec<Cell>,
}

/// `(b²)^order` and `b^order`, or `None` if the cell count exceeds
/// [`MAX_INDEXED_CELLS`].
pub(crate) fn curve_size(grid_factor: u32, order: u32) -> Option<(u64, u32)> {
    let b = u64::from(grid_factor);
    let cells = (b * b).checked_pow(order)?;
    if cells > MAX_INDEXED_CELLS {
        return None;
    }
    let side = u32::try_from(b.checked_pow(order)?).ok()?;
    Some((cells, side))
}

/// Expands `spec` to the given order, with the whole curve oriented by `op`.
pub fn expand(spec: &GrammarSpec, op: DihedralOp, order: u32) -> Result<CurvePath> {
    if order == 0 {
        return Err(Error::Domain("order must be at least 1".into()));
    }
    let b = spec.grid_factor();
    let (count, side) = curve_size(b, order).ok_or_else(|| {
        Error::Capacity(format!(
            "{} order {order} overflows the index type",
            spec.name
        ))
    })?;
    if count > MAX_MATERIALIZED_CELLS {
        return Err(Error::Capacity(format!(
            "{} order {order} has {count} cells, above the {MAX_MATERIALIZED_CELLS} materialization cap",
            spec.name
        )));
    }
    let table: Vec<Production> = DihedralOp::ALL
        .iter()
        .map(|&g| derive_production(spec, g))
        .collect();
    let mut cells = Vec::with_capacity(count as usize);
    emit(&table, op, side, Cell::default(), &mut cells);
    Ok(CurvePath { side, cells })
}

fn emit(table: &[Production], op: DihedralOp, side: u32, origin: Cell, out: &mut Vec<Cell>) {
    if side == 1 {
        out.push(origin);
        return;
    }
    let production = &table[op.index()];
    let child = side / production.grid_factor;
    for (cell, &orientation) in production.cells.iter().zip(&production.orientations) {
        let at = Cell::new(origin.x + cell.x * child, origin.y + cell.y * child);
        emit(table, orientation, child, at, out);
    }
}

/// The Aztec curve: a 4×4 meander whose sixteen slots carry the
/// orientations `B B B A A A A C D D B C C C A A`, joined by
/// `↑↑↑→→→↓↓←↑←↓↓→→`.
pub fn aztec() -> GrammarSpec {
    aztec_with_b(DihedralOp::AZTEC_B)
}

/// The Aztec grammar with orientation `B` replaced by `b_op`; `C` follows as
/// the half turn of `B`. Used to test which choices of `B` give a
/// continuous curve.
pub fn aztec_with_b(b_op: DihedralOp) -> GrammarSpec {
    use Move::{Down as D, Left as L, Right as R, Up as U};
    let a = DihedralOp::AZTEC_A;
    let b = b_op;
    let c = DihedralOp::ROT180.compose(b_op);
    let d = DihedralOp::AZTEC_D;
    let moves = [U, U, U, R, R, R, D, D, L, U, L, D, D, R, R];
    let orientations = [b, b, b, a, a, a, a, c, d, d, b, c, c, c, a, a];
    GrammarSpec::new(
        "aztec",
        Production::from_walk(4, Cell::new(0, 0), &moves, &orientations),
    )
}

/// The Hilbert curve: `T ↑ I → I ↓ T'` on a 2×2 pattern, with `T` the
/// main-diagonal and `T'` the anti-diagonal transpose.
pub fn hilbert() -> GrammarSpec {
    use Move::{Down as D, Right as R, Up as U};
    let orientations = [
        DihedralOp::TRANSPOSE,
        DihedralOp::IDENTITY,
        DihedralOp::IDENTITY,
        DihedralOp::ANTI_TRANSPOSE,
    ];
    GrammarSpec::new(
        "hilbert",
        Production::from_walk(2, Cell::new(0, 0), &[U, R, D], &orientations),
    )
}

/// The Peano curve on a 3×3 pattern, column by column in a serpentine, with
/// slots `P Q P R S R P Q P` (`Q` mirrors x, `R` mirrors y, `S` is the
/// half turn).
pub fn peano() -> GrammarSpec {
    use Move::{Down as D, Right as R, Up as U};
    let p = DihedralOp::IDENTITY;
    let q = DihedralOp::MIRROR_X;
    let r = DihedralOp::MIRROR_Y;
    let s = DihedralOp::ROT180;
    GrammarSpec::new(
        "peano",
        Production::from_walk(
            3,
            Cell::new(0, 0),
            &[U, U, R, D, D, R, U, U],
            &[p, q, p, r, s, r, p, q, p],
        ),
    )
}

/// Labels the Aztec orientations with their letters.
pub fn aztec_letter(op: DihedralOp) -> String {
    match op {
        DihedralOp::AZTEC_A => "A".into(),
        DihedralOp::AZTEC_B => "B".into(),
        DihedralOp::AZTEC_C => "C".into(),
        DihedralOp::AZTEC_D => "D".into(),
        other => format!("[{other}]"),
    }
}
