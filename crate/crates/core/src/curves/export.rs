use std::fmt::Write;

use super::ScanOrder;

/// `[[x,y],...]` in index order.
pub fn to_json(scan: &ScanOrder) -> String {
    let mut out = String::with_capacity(scan.len() * 8 + 2);
    out.push('[');
    for (d, c) in scan.cells().iter().enumerate() {
        if d > 0 {
            out.push(',');
        }
        write!(out, "[{},{}]", c.x, c.y).unwrap();
    }
    out.push_str("]\n");
    out
}

/// CSV with header `d,x,y`, one row per index.
pub fn to_csv(scan: &ScanOrder) -> String {
    let mut out = String::with_capacity(scan.len() * 12 + 6);
    out.push_str("d,x,y\n");
    for (d, c) in scan.cells().iter().enumerate() {
        writeln!(out, "{d},{},{}", c.x, c.y).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{path, CurveId, Extent};

    #[test]
    fn formats() {
        let scan = path(CurveId::Hilbert, Extent::Order(1)).unwrap();
        assert_eq!(to_json(&scan), "[[0,0],[0,1],[1,1],[1,0]]\n");
        assert_eq!(to_csv(&scan), "d,x,y\n0,0,0\n1,0,1\n2,1,1\n3,1,0\n");
    }
}
