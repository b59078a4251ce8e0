use std::sync::OnceLock;

use super::CurveId;
use crate::grammar::{derive_production, Cell, DihedralOp, GrammarSpec};

/// Per-orientation slot tables for digit-wise evaluation of a grammar curve.
///
/// For orientation `o` and slot `j`, `forward[o][j]` is the child cell in the
/// pattern and the child's orientation; `inverse[o]` maps a pattern cell
/// (row-major) back to its slot.
#[derive(Debug)]
pub(crate) struct SfcTables {
    grid_factor: u32,
    forward: Vec<Vec<(Cell, u8)>>,
    inverse: Vec<Vec<u8>>,
}

impl SfcTables {
    pub(crate) fn build(spec: &GrammarSpec) -> SfcTables {
        let b = spec.grid_factor();
        let mut forward = Vec::with_capacity(8);
        let mut inverse = Vec::with_capacity(8);
        for op in DihedralOp::ALL {
            let p = derive_production(spec, op);
            let mut inv = vec![0u8; p.slots()];
            for (slot, cell) in p.cells.iter().enumerate() {
                inv[(cell.y * b + cell.x) as usize] = slot as u8;
            }
            forward.push(
                p.cells
                    .iter()
                    .zip(&p.orientations)
                    .map(|(&c, o)| (c, o.index() as u8))
                    .collect(),
            );
            inverse.push(inv);
        }
        SfcTables {
            grid_factor: b,
            forward,
            inverse,
        }
    }

    pub(crate) fn get(id: CurveId) -> &'static SfcTables {
        static AZTEC: OnceLock<SfcTables> = OnceLock::new();
        static HILBERT: OnceLock<SfcTables> = OnceLock::new();
        static PEANO: OnceLock<SfcTables> = OnceLock::new();
        let cell = match id {
            CurveId::Aztec => &AZTEC,
            CurveId::Hilbert => &HILBERT,
            CurveId::Peano => &PEANO,
            other => panic!("{other} has no grammar"),
        };
        cell.get_or_init(|| SfcTables::build(&id.grammar().expect("grammar curve")))
    }

    pub(crate) fn d2xy(&self, d: u64, order: u32) -> Cell {
        let b = self.grid_factor;
        let slots = u64::from(b * b);
        let mut place = slots.pow(order - 1);
        let mut state = DihedralOp::IDENTITY.index();
        let (mut x, mut y) = (0u32, 0u32);
        for _ in 0..order {
            let digit = ((d / place) % slots) as usize;
            let (cell, next) = self.forward[state][digit];
            x = x * b + cell.x;
            y = y * b + cell.y;
            state = next as usize;
            place /= slots;
        }
        Cell::new(x, y)
    }

    pub(crate) fn xy2d(&self, cell: Cell, order: u32) -> u64 {
        let b = self.grid_factor;
        let slots = u64::from(b * b);
        let mut place = b.pow(order - 1);
        let mut state = DihedralOp::IDENTITY.index();
        let mut d = 0u64;
        for _ in 0..order {
            let bx = (cell.x / place) % b;
            let by = (cell.y / place) % b;
            let slot = self.inverse[state][(by * b + bx) as usize];
            d = d * slots + u64::from(slot);
            state = self.forward[state][slot as usize].1 as usize;
            place /= b;
        }
        d
    }
}
