use std::fmt;

use crate::error::{domain, Result};

/// A grid cell. The origin is the bottom-left cell, `x` grows to the right
/// and `y` grows upwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

impl Cell {
    pub const fn new(x: u32, y: u32) -> Self {
        Cell { x, y }
    }

    /// Manhattan distance to `other`.
    pub fn manhattan(self, other: Cell) -> u64 {
        u64::from(self.x.abs_diff(other.x)) + u64::from(self.y.abs_diff(other.y))
    }

    /// The neighbour reached by `step`, or `None` when it would leave the
    /// non-negative quadrant.
    pub fn step(self, step: Move) -> Option<Cell> {
        let (dx, dy) = step.delta();
        let x = i64::from(self.x) + dx;
        let y = i64::from(self.y) + dy;
        Some(Cell::new(u32::try_from(x).ok()?, u32::try_from(y).ok()?))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(u32, u32)> for Cell {
    fn from((x, y): (u32, u32)) -> Self {
        Cell::new(x, y)
    }
}

/// A unit translation between neighbouring cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Move::Up => (0, 1),
            Move::Down => (0, -1),
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
        }
    }

    pub fn from_delta(dx: i64, dy: i64) -> Option<Move> {
        match (dx, dy) {
            (0, 1) => Some(Move::Up),
            (0, -1) => Some(Move::Down),
            (-1, 0) => Some(Move::Left),
            (1, 0) => Some(Move::Right),
            _ => None,
        }
    }

    /// The move leading from `from` to `to`, if they are neighbours.
    pub fn between(from: Cell, to: Cell) -> Option<Move> {
        Move::from_delta(
            i64::from(to.x) - i64::from(from.x),
            i64::from(to.y) - i64::from(from.y),
        )
    }

    pub fn arrow(self) -> char {
        match self {
            Move::Up => '↑',
            Move::Down => '↓',
            Move::Left => '←',
            Move::Right => '→',
        }
    }
}

/// One of the eight symmetries of a square grid.
///
/// Acting on cell `(x, y)` of an `N`×`N` grid: first exchange `x` and `y`
/// when `swap` is set, then replace `x` by `N-1-x` when `flip_x` is set and
/// `y` by `N-1-y` when `flip_y` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralOp {
    pub swap: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl DihedralOp {
    pub const IDENTITY: DihedralOp = DihedralOp::new(false, false, false);
    /// Reflection across the main diagonal, `(x, y) -> (y, x)`.
    pub const TRANSPOSE: DihedralOp = DihedralOp::new(true, false, false);
    /// Reflection across the anti-diagonal, `(x, y) -> (N-1-y, N-1-x)`.
    pub const ANTI_TRANSPOSE: DihedralOp = DihedralOp::new(true, true, true);
    pub const ROT180: DihedralOp = DihedralOp::new(false, true, true);
    /// Quarter turn clockwise, `(x, y) -> (y, N-1-x)`.
    pub const ROT90_CW: DihedralOp = DihedralOp::new(true, false, true);
    /// Quarter turn counter-clockwise, `(x, y) -> (N-1-y, x)`.
    pub const ROT90_CCW: DihedralOp = DihedralOp::new(true, true, false);
    /// Mirror across the vertical axis, `x -> N-1-x`.
    pub const MIRROR_X: DihedralOp = DihedralOp::new(false, true, false);
    /// Mirror across the horizontal axis, `y -> N-1-y`.
    pub const MIRROR_Y: DihedralOp = DihedralOp::new(false, false, true);

    /// Orientation of the Aztec pattern itself.
    pub const AZTEC_A: DihedralOp = DihedralOp::IDENTITY;
    /// Mirror then quarter turn clockwise of A: the main-diagonal transpose.
    pub const AZTEC_B: DihedralOp = DihedralOp::TRANSPOSE;
    /// Half turn of B: the anti-diagonal transpose.
    pub const AZTEC_C: DihedralOp = DihedralOp::ANTI_TRANSPOSE;
    /// Half turn of A.
    pub const AZTEC_D: DihedralOp = DihedralOp::ROT180;

    /// All eight elements, ordered by [`DihedralOp::index`].
    pub const ALL: [DihedralOp; 8] = [
        DihedralOp::new(false, false, false),
        DihedralOp::new(false, false, true),
        DihedralOp::new(false, true, false),
        DihedralOp::new(false, true, true),
        DihedralOp::new(true, false, false),
        DihedralOp::new(true, false, true),
        DihedralOp::new(true, true, false),
        DihedralOp::new(true, true, true),
    ];

    pub const fn new(swap: bool, flip_x: bool, flip_y: bool) -> Self {
        DihedralOp {
            swap,
            flip_x,
            flip_y,
        }
    }

    /// Dense index in `0..8`.
    pub fn index(self) -> usize {
        (usize::from(self.swap) << 2) | (usize::from(self.flip_x) << 1) | usize::from(self.flip_y)
    }

    pub fn from_index(index: usize) -> DihedralOp {
        DihedralOp::ALL[index & 7]
    }

    /// The op equal to applying `inner` first and then `self`.
    pub fn compose(self, inner: DihedralOp) -> DihedralOp {
        // Moving inner's flips past our swap exchanges the axes they act on.
        let (fx, fy) = if self.swap {
            (inner.flip_y, inner.flip_x)
        } else {
            (inner.flip_x, inner.flip_y)
        };
        DihedralOp {
            swap: self.swap ^ inner.swap,
            flip_x: fx ^ self.flip_x,
            flip_y: fy ^ self.flip_y,
        }
    }

    pub fn inverse(self) -> DihedralOp {
        if self.swap {
            DihedralOp::new(true, self.flip_y, self.flip_x)
        } else {
            self
        }
    }

    /// Applies the op to `cell` on a `side`×`side` grid.
    pub fn apply(self, cell: Cell, side: u32) -> Result<Cell> {
        if cell.x >= side || cell.y >= side {
            return Err(domain(format!(
                "cell {cell} lies outside a {side}x{side} grid"
            )));
        }
        Ok(self.map(cell, side))
    }

    /// [`DihedralOp::apply`] without the range check. `cell` must be on the grid.
    #[inline]
    pub(crate) fn map(self, cell: Cell, side: u32) -> Cell {
        debug_assert!(cell.x < side && cell.y < side);
        let (mut x, mut y) = if self.swap {
            (cell.y, cell.x)
        } else {
            (cell.x, cell.y)
        };
        if self.flip_x {
            x = side - 1 - x;
        }
        if self.flip_y {
            y = side - 1 - y;
        }
        Cell::new(x, y)
    }

    /// Transforms a translation the same way [`DihedralOp::apply`] transforms cells.
    pub fn apply_move(self, step: Move) -> Move {
        let (mut dx, mut dy) = step.delta();
        if self.swap {
            std::mem::swap(&mut dx, &mut dy);
        }
        if self.flip_x {
            dx = -dx;
        }
        if self.flip_y {
            dy = -dy;
        }
        Move::from_delta(dx, dy).expect("symmetries map unit steps to unit steps")
    }
}

impl Default for DihedralOp {
    fn default() -> Self {
        DihedralOp::IDENTITY
    }
}

impl fmt::Display for DihedralOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match *self {
            DihedralOp::IDENTITY => "identity",
            DihedralOp::TRANSPOSE => "transpose",
            DihedralOp::ANTI_TRANSPOSE => "anti-transpose",
            DihedralOp::ROT180 => "rot180",
            DihedralOp::ROT90_CW => "rot90cw",
            DihedralOp::ROT90_CCW => "rot90ccw",
            DihedralOp::MIRROR_X => "mirror-x",
            DihedralOp::MIRROR_Y => "mirror-y",
        };
        f.write_str(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(side: u32) -> impl Iterator<Item = Cell> {
        (0..side).flat_map(move |x| (0..side).map(move |y| Cell::new(x, y)))
    }

    /// Finds the op whose action matches `f` on every cell of a 5x5 grid.
    fn op_matching(f: impl Fn(Cell) -> Cell) -> Option<DihedralOp> {
        DihedralOp::ALL
            .into_iter()
            .find(|op| cells(5).all(|c| op.map(c, 5) == f(c)))
    }

    #[test]
    fn eight_distinct_actions() {
        let mut images: Vec<Vec<Cell>> = DihedralOp::ALL
            .iter()
            .map(|op| cells(3).map(|c| op.map(c, 3)).collect())
            .collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 8);
        for (i, op) in DihedralOp::ALL.iter().enumerate() {
            assert_eq!(op.index(), i);
            assert_eq!(DihedralOp::from_index(i), *op);
        }
    }

    #[test]
    fn compose_matches_pointwise_composition() {
        for g in DihedralOp::ALL {
            for h in DihedralOp::ALL {
                let expected = op_matching(|c| g.map(h.map(c, 5), 5)).unwrap();
                assert_eq!(g.compose(h), expected, "{g:?} after {h:?}");
            }
        }
    }

    #[test]
    fn composition_is_associative_with_identity_and_inverses() {
        for a in DihedralOp::ALL {
            assert_eq!(DihedralOp::IDENTITY.compose(a), a);
            assert_eq!(a.compose(DihedralOp::IDENTITY), a);
            assert_eq!(a.compose(a.inverse()), DihedralOp::IDENTITY);
            assert_eq!(a.inverse().compose(a), DihedralOp::IDENTITY);
            for b in DihedralOp::ALL {
                for c in DihedralOp::ALL {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
    }

    #[test]
    fn inverse_returns_every_cell_for_many_sizes() {
        for side in 1..=9 {
            for op in DihedralOp::ALL {
                for c in cells(side) {
                    assert_eq!(op.inverse().map(op.map(c, side), side), c);
                }
            }
        }
    }

    #[test]
    fn named_compositions() {
        assert_eq!(
            DihedralOp::IDENTITY.compose(DihedralOp::AZTEC_D),
            DihedralOp::AZTEC_D
        );
        assert_eq!(
            DihedralOp::ROT180.compose(DihedralOp::AZTEC_B),
            DihedralOp::AZTEC_C
        );
        // Checked on the 16 cells of a 4x4 grid against the elementary maps.
        let mirror = |c: Cell| Cell::new(3 - c.x, c.y);
        let rot_cw = |c: Cell| Cell::new(c.y, 3 - c.x);
        let composed = DihedralOp::ROT90_CW.compose(DihedralOp::MIRROR_X);
        assert_eq!(composed, DihedralOp::AZTEC_B);
        for c in cells(4) {
            assert_eq!(composed.map(c, 4), rot_cw(mirror(c)));
        }
        assert_eq!(
            op_matching(|c| Cell::new(c.y, 4 - c.x)),
            Some(DihedralOp::ROT90_CW)
        );
        assert_eq!(
            op_matching(|c| Cell::new(4 - c.y, c.x)),
            Some(DihedralOp::ROT90_CCW)
        );
    }

    #[test]
    fn apply_examples() {
        let c = |x, y| Cell::new(x, y);
        assert_eq!(DihedralOp::IDENTITY.apply(c(2, 1), 4).unwrap(), c(2, 1));
        assert_eq!(DihedralOp::AZTEC_B.apply(c(3, 0), 4).unwrap(), c(0, 3));
        assert_eq!(DihedralOp::AZTEC_D.apply(c(0, 0), 4).unwrap(), c(3, 3));
        assert!(DihedralOp::IDENTITY.apply(c(4, 0), 4).is_err());
        assert!(DihedralOp::IDENTITY.apply(c(0, 7), 4).is_err());
    }

    #[test]
    fn move_examples_and_consistency() {
        assert_eq!(DihedralOp::IDENTITY.apply_move(Move::Up), Move::Up);
        assert_eq!(DihedralOp::AZTEC_D.apply_move(Move::Up), Move::Down);
        assert_eq!(DihedralOp::AZTEC_B.apply_move(Move::Up), Move::Right);
        // Moving then transforming equals transforming then moving.
        let side = 6;
        for op in DihedralOp::ALL {
            for m in Move::ALL {
                for c in cells(side) {
                    let Some(next) = c.step(m).filter(|n| n.x < side && n.y < side) else {
                        continue;
                    };
                    let (from, to) = (op.map(c, side), op.map(next, side));
                    assert_eq!(Move::between(from, to), Some(op.apply_move(m)));
                }
            }
        }
    }
}
