use std::fmt;

use super::dihedral::{Cell, DihedralOp, Move};

/// One substitution rule: a `b`×`b` pattern of oriented sub-curves joined by
/// unit moves.
///
/// Slot `j` places a copy of the curve, transformed by `orientations[j]`, in
/// cell `cells[j]` of the pattern; `moves[j]` is the step from slot `j` to
/// slot `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub grid_factor: u32,
    pub cells: Vec<Cell>,
    pub orientations: Vec<DihedralOp>,
    pub moves: Vec<Move>,
}

impl Production {
    /// Builds a production by walking `moves` from `start`.
    pub fn from_walk(
        grid_factor: u32,
        start: Cell,
        moves: &[Move],
        orientations: &[DihedralOp],
    ) -> Production {
        let mut cells = Vec::with_capacity(moves.len() + 1);
        let mut at = start;
        cells.push(at);
        for &m in moves {
            // A walk leaving the quadrant is clamped; check() reports it.
            at = at.step(m).unwrap_or(at);
            cells.push(at);
        }
        Production {
            grid_factor,
            cells,
            orientations: orientations.to_vec(),
            moves: moves.to_vec(),
        }
    }

    pub fn slots(&self) -> usize {
        self.cells.len()
    }

    /// Checks the structural invariants: the cells are a permutation of the
    /// `b`×`b` grid and every move joins consecutive slots.
    pub fn check(&self) -> Result<(), Violation> {
        let b = self.grid_factor;
        if b == 0 {
            return Err(Violation::ZeroGridFactor);
        }
        let slots = (b as usize) * (b as usize);
        if self.cells.len() != slots {
            return Err(Violation::SlotCount {
                expected: slots,
                found: self.cells.len(),
            });
        }
        if self.orientations.len() != slots {
            return Err(Violation::OrientationCount {
                expected: slots,
                found: self.orientations.len(),
            });
        }
        if self.moves.len() + 1 != slots {
            return Err(Violation::MoveCount {
                expected: slots - 1,
                found: self.moves.len(),
            });
        }
        let mut seen = vec![false; slots];
        for (slot, cell) in self.cells.iter().enumerate() {
            if cell.x >= b || cell.y >= b {
                return Err(Violation::CellOutOfRange { slot, cell: *cell });
            }
            let k = (cell.y * b + cell.x) as usize;
            if seen[k] {
                return Err(Violation::NotAPermutation { slot, cell: *cell });
            }
            seen[k] = true;
        }
        for (slot, pair) in self.cells.windows(2).enumerate() {
            if Move::between(pair[0], pair[1]) != Some(self.moves[slot]) {
                return Err(Violation::ArrowMismatch {
                    slot,
                    from: pair[0],
                    to: pair[1],
                    arrow: self.moves[slot],
                });
            }
        }
        Ok(())
    }

    /// Renders the rule as `X↑Y→Z...` with one letter per orientation, using
    /// `name` to label orientations.
    pub fn describe(&self, name: impl Fn(DihedralOp) -> String) -> String {
        let mut out = String::new();
        for (j, op) in self.orientations.iter().enumerate() {
            out.push_str(&name(*op));
            if let Some(m) = self.moves.get(j) {
                out.push(m.arrow());
            }
        }
        out
    }
}

/// A complete curve grammar: the base production plus its entry and exit
/// cells in the `b`×`b` pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarSpec {
    pub name: String,
    pub base: Production,
    pub entry_cell: Cell,
    pub exit_cell: Cell,
}

impl GrammarSpec {
    /// Constructs a spec whose entry and exit are the first and last cells.
    pub fn new(name: impl Into<String>, base: Production) -> GrammarSpec {
        let entry_cell = base.cells.first().copied().unwrap_or_default();
        let exit_cell = base.cells.last().copied().unwrap_or_default();
        GrammarSpec {
            name: name.into(),
            base,
            entry_cell,
            exit_cell,
        }
    }

    pub fn grid_factor(&self) -> u32 {
        self.base.grid_factor
    }

    /// Entry and exit corners of the expanded curve on a `side`×`side` grid.
    pub fn corners(&self, side: u32) -> Option<(Cell, Cell)> {
        let b = self.grid_factor();
        let scale = |c: Cell| {
            Some(Cell::new(
                scale_corner(c.x, b, side)?,
                scale_corner(c.y, b, side)?,
            ))
        };
        Some((scale(self.entry_cell)?, scale(self.exit_cell)?))
    }
}

/// The production for the copy of the curve oriented by `op`.
///
/// Cell positions and moves are transformed by `op`, and every slot
/// orientation is pre-composed with it.
pub fn derive_production(spec: &GrammarSpec, op: DihedralOp) -> Production {
    let base = &spec.base;
    let b = base.grid_factor;
    Production {
        grid_factor: b,
        cells: base.cells.iter().map(|&c| op.map(c, b)).collect(),
        orientations: base.orientations.iter().map(|&o| op.compose(o)).collect(),
        moves: base.moves.iter().map(|&m| op.apply_move(m)).collect(),
    }
}

/// The first constraint a grammar violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroGridFactor,
    SlotCount {
        expected: usize,
        found: usize,
    },
    OrientationCount {
        expected: usize,
        found: usize,
    },
    MoveCount {
        expected: usize,
        found: usize,
    },
    CellOutOfRange {
        slot: usize,
        cell: Cell,
    },
    NotAPermutation {
        slot: usize,
        cell: Cell,
    },
    ArrowMismatch {
        slot: usize,
        from: Cell,
        to: Cell,
        arrow: Move,
    },
    EntryMismatch {
        declared: Cell,
        found: Cell,
    },
    ExitMismatch {
        declared: Cell,
        found: Cell,
    },
    /// Entry and exit must be corners so that they scale with the order.
    NotACorner {
        cell: Cell,
    },
    /// A derived production (for orientation `op`) breaks an invariant.
    Derived {
        op: DihedralOp,
        inner: Box<Violation>,
    },
    /// The expanded curve leaves a block away from the next block's entry.
    Discontinuity {
        order: u32,
        index: u64,
        from: Cell,
        to: Cell,
    },
    /// The expanded curve revisits a cell.
    Revisit {
        order: u32,
        index: u64,
        cell: Cell,
    },
    /// The expanded curve does not start or end at the scaled corners.
    Endpoints {
        order: u32,
        first: Cell,
        last: Cell,
    },
    Capacity(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroGridFactor => write!(f, "grid factor must be positive"),
            Violation::SlotCount { expected, found } => {
                write!(f, "expected {expected} cells, found {found}")
            }
            Violation::OrientationCount { expected, found } => {
                write!(f, "expected {expected} orientations, found {found}")
            }
            Violation::MoveCount { expected, found } => {
                write!(f, "expected {expected} moves, found {found}")
            }
            Violation::CellOutOfRange { slot, cell } => {
                write!(f, "slot {slot}: cell {cell} outside the pattern")
            }
            Violation::NotAPermutation { slot, cell } => {
                write!(f, "cells not a permutation: slot {slot} repeats {cell}")
            }
            Violation::ArrowMismatch {
                slot,
                from,
                to,
                arrow,
            } => write!(
                f,
                "arrow {slot} is {} but slot {from} -> {to} is not that step",
                arrow.arrow()
            ),
            Violation::EntryMismatch { declared, found } => {
                write!(f, "declared entry {declared} but first cell is {found}")
            }
            Violation::ExitMismatch { declared, found } => {
                write!(f, "declared exit {declared} but last cell is {found}")
            }
            Violation::NotACorner { cell } => write!(f, "endpoint {cell} is not a corner"),
            Violation::Derived { op, inner } => write!(f, "orientation {op}: {inner}"),
            Violation::Discontinuity {
                order,
                index,
                from,
                to,
            } => write!(
                f,
                "order {order}: discontinuous at block junction {index} -> {} ({from} -> {to})",
                index + 1
            ),
            Violation::Revisit { order, index, cell } => {
                write!(f, "order {order}: index {index} revisits {cell}")
            }
            Violation::Endpoints { order, first, last } => {
                write!(
                    f,
                    "order {order}: path runs {first} .. {last}, not between the scaled corners"
                )
            }
            Violation::Capacity(msg) => write!(f, "{msg}"),
        }
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationVerdict {
    Pass,
    Fail(Violation),
}

impl ValidationVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ValidationVerdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            ValidationVerdict::Pass => None,
            ValidationVerdict::Fail(v) => Some(v),
        }
    }
}

/// Maps a pattern corner coordinate to the matching corner coordinate at a
/// larger side.
pub(crate) fn scale_corner(coord: u32, grid_factor: u32, side: u32) -> Option<u32> {
    if coord == 0 {
        Some(0)
    } else if coord + 1 == grid_factor {
        Some(side - 1)
    } else {
        None
    }
}

/// Checks a grammar: the base production and all derived productions satisfy
/// the structural invariants, and the order-2 expansion is a continuous
/// bijection between the scaled entry and exit corners.
pub fn validate(spec: &GrammarSpec) -> ValidationVerdict {
    match validate_inner(spec) {
        Ok(()) => ValidationVerdict::Pass,
        Err(v) => ValidationVerdict::Fail(v),
    }
}

fn validate_inner(spec: &GrammarSpec) -> Result<(), Violation> {
    let base = &spec.base;
    base.check()?;
    let b = base.grid_factor;
    if spec.entry_cell != base.cells[0] {
        return Err(Violation::EntryMismatch {
            declared: spec.entry_cell,
            found: base.cells[0],
        });
    }
    let last = *base.cells.last().expect("checked non-empty");
    if spec.exit_cell != last {
        return Err(Violation::ExitMismatch {
            declared: spec.exit_cell,
            found: last,
        });
    }
    for cell in [spec.entry_cell, spec.exit_cell] {
        if scale_corner(cell.x, b, b).is_none() || scale_corner(cell.y, b, b).is_none() {
            return Err(Violation::NotACorner { cell });
        }
    }
    for op in DihedralOp::ALL {
        derive_production(spec, op)
            .check()
            .map_err(|inner| Violation::Derived {
                op,
                inner: Box::new(inner),
            })?;
    }

    let order = 2;
    let path = super::expand(spec, DihedralOp::IDENTITY, order)
        .map_err(|e| Violation::Capacity(e.to_string()))?;
    let side = path.side;
    let mut seen = vec![false; path.cells.len()];
    for (i, cell) in path.cells.iter().enumerate() {
        let k = cell.y as usize * side as usize + cell.x as usize;
        if seen[k] {
            return Err(Violation::Revisit {
                order,
                index: i as u64,
                cell: *cell,
            });
        }
        seen[k] = true;
    }
    if let Some(i) = path
        .cells
        .windows(2)
        .position(|w| w[0].manhattan(w[1]) != 1)
    {
        return Err(Violation::Discontinuity {
            order,
            index: i as u64,
            from: path.cells[i],
            to: path.cells[i + 1],
        });
    }
    let scaled = |c: Cell| {
        Cell::new(
            scale_corner(c.x, b, side).expect("corner"),
            scale_corner(c.y, b, side).expect("corner"),
        )
    };
    let (first, last) = (path.cells[0], *path.cells.last().expect("non-empty"));
    if first != scaled(spec.entry_cell) || last != scaled(spec.exit_cell) {
        return Err(Violation::Endpoints { order, first, last });
    }
    Ok(())
}
