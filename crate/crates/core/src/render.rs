//! Deterministic SVG drawings of scan paths and cluster overlays.
//!
//! Grid cell `(x, y)` is drawn with its centre at
//! `((x + 0.5)·s, (H - y - 0.5)·s)` so the origin sits at the bottom-left of
//! the picture. Numbers are written with a fixed format and clusters are
//! ordered before drawing, so equal inputs always give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::analysis::{ClusterRect, ClusterReport};
use crate::curves::ScanOrder;
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    /// Side of one grid cell in user units.
    pub cell_size: f64,
    pub stroke_width: f64,
    pub stroke: String,
    /// Fill colors for cluster families, assigned in sorted `(width, height)`
    /// order and reused cyclically.
    pub palette: Vec<String>,
    pub show_grid: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            cell_size: 16.0,
            stroke_width: 2.0,
            stroke: "#1a1a1a".into(),
            // dark orange, yellow, light orange, pink
            palette: [
                "#d95f02", "#ffd92f", "#fdb863", "#f4a6c8", "#8da0cb", "#66c2a5",
            ]
            .map(String::from)
            .to_vec(),
            show_grid: true,
        }
    }
}

impl RenderStyle {
    /// Style scaled so the drawing is about `target` units wide.
    pub fn fitted(side: u32, target: f64) -> RenderStyle {
        let cell_size = (target / f64::from(side.max(1))).max(0.5);
        RenderStyle {
            cell_size,
            stroke_width: (cell_size / 8.0).clamp(0.1, 2.0),
            ..RenderStyle::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.cell_size > 0.0 && self.cell_size.is_finite()) {
            return Err(domain("cell size must be positive"));
        }
        if !(self.stroke_width >= 0.0 && self.stroke_width.is_finite()) {
            return Err(domain("stroke width must be non-negative"));
        }
        Ok(())
    }
}

/// Formats a coordinate with at most three decimals and no trailing zeros.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One polyline through the cell centres in index order.
pub fn render_path(scan: &ScanOrder, style: &RenderStyle) -> Result<String> {
    style.check()?;
    Ok(document(scan, style, &[]))
}

/// The path drawn over filled cluster rectangles, one palette color per
/// `(width, height)` family.
pub fn render_clusters(
    scan: &ScanOrder,
    clusters: &ClusterReport,
    style: &RenderStyle,
) -> Result<String> {
    render_cluster_list(
        scan,
        (clusters.width, clusters.height),
        &clusters.clusters,
        style,
    )
}

/// Like [`render_clusters`] for an arbitrary list of rectangles measured on
/// a `dims` grid.
pub fn render_cluster_list(
    scan: &ScanOrder,
    dims: (u32, u32),
    clusters: &[ClusterRect],
    style: &RenderStyle,
) -> Result<String> {
    style.check()?;
    if dims != (scan.width(), scan.height()) {
        return Err(domain(format!(
            "clusters are for a {}x{} grid but the scan is {}x{}",
            dims.0,
            dims.1,
            scan.width(),
            scan.height()
        )));
    }
    if let Some(c) = clusters.iter().find(|c| c.x1 >= dims.0 || c.y1 >= dims.1) {
        return Err(domain(format!(
            "cluster ({}..{}, {}..{}) leaves the grid",
            c.x0, c.x1, c.y0, c.y1
        )));
    }
    if !clusters.is_empty() && style.palette.is_empty() {
        return Err(domain("a non-empty palette is needed to draw clusters"));
    }
    Ok(document(scan, style, clusters))
}

fn document(scan: &ScanOrder, style: &RenderStyle, clusters: &[ClusterRect]) -> String {
    let s = style.cell_size;
    let (w, h) = (scan.width(), scan.height());
    let (width, height) = (f64::from(w) * s, f64::from(h) * s);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(width),
        num(height),
        num(width),
        num(height)
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(scan.label())).unwrap();
    writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        num(width),
        num(height)
    )
    .unwrap();

    if !clusters.is_empty() {
        let families: BTreeMap<(u32, u32), usize> = {
            let mut keys: Vec<(u32, u32)> =
                clusters.iter().map(|c| (c.width(), c.height())).collect();
            keys.sort_unstable();
            keys.dedup();
            keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
        };
        // Larger rectangles first so smaller ones stay visible.
        let mut ordered: Vec<&ClusterRect> = clusters.iter().collect();
        ordered.sort_by_key(|c| (std::cmp::Reverse(c.area), c.x0, c.y0, c.x1, c.y1));
        out.push_str("<g id=\"clusters\" fill-opacity=\"0.85\">\n");
        for c in ordered {
            let color = &style.palette[families[&(c.width(), c.height())] % style.palette.len()];
            writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                num(f64::from(c.x0) * s),
                num(f64::from(h - 1 - c.y1) * s),
                num(f64::from(c.width()) * s),
                num(f64::from(c.height()) * s),
                escape(color)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    if style.show_grid {
        let grid_stroke = num((style.stroke_width / 4.0).max(0.05));
        writeln!(
            out,
            "<g id=\"grid\" stroke=\"#cccccc\" stroke-width=\"{grid_stroke}\">"
        )
        .unwrap();
        for x in 0..=w {
            let px = num(f64::from(x) * s);
            writeln!(
                out,
                "<line x1=\"{px}\" y1=\"0\" x2=\"{px}\" y2=\"{}\"/>",
                num(height)
            )
            .unwrap();
        }
        for y in 0..=h {
            let py = num(f64::from(y) * s);
            writeln!(
                out,
                "<line x1=\"0\" y1=\"{py}\" x2=\"{}\" y2=\"{py}\"/>",
                num(width)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    writeln!(
        out,
        "<polyline id=\"path\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\" points=\"",
        escape(&style.stroke),
        num(style.stroke_width)
    )
    .unwrap();
    for (i, c) in scan.cells().iter().enumerate() {
        if i > 0 {
            out.push(if i % 16 == 0 { '\n' } else { ' ' });
        }
        let cx = (f64::from(c.x) + 0.5) * s;
        let cy = (f64::from(h - 1 - c.y) + 0.5) * s;
        write!(out, "{},{}", num(cx), num(cy)).unwrap();
    }
    out.push_str("\"/>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{aztec_family_clusters, enumerate_clusters};
    use crate::curves::{path, CurveId, Extent};

    fn points(svg: &str) -> Vec<(f64, f64)> {
        let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
        let line = doc
            .descendants()
            .find(|n| n.has_tag_name("polyline"))
            .expect("polyline");
        line.attribute("points")
            .unwrap()
            .split_whitespace()
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn path_geometry() {
        let style = RenderStyle::default();
        let aztec = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let pts = points(&render_path(&aztec, &style).unwrap());
        assert_eq!(pts.len(), 16);
        // Bottom-left cell of a 4x4 grid of 16-unit cells.
        assert_eq!(pts[0], (8.0, 56.0));
        assert_eq!(pts[1], (8.0, 40.0));
        let hilbert = path(CurveId::Hilbert, Extent::Order(2)).unwrap();
        assert_eq!(points(&render_path(&hilbert, &style).unwrap()).len(), 16);
    }

    #[test]
    fn output_is_deterministic() {
        let scan = path(CurveId::Aztec, Extent::Order(2)).unwrap();
        let style = RenderStyle::fitted(16, 512.0);
        assert_eq!(
            render_path(&scan, &style).unwrap(),
            render_path(&scan, &style).unwrap()
        );
        let report = enumerate_clusters(&scan, 64).unwrap();
        assert_eq!(
            render_clusters(&scan, &report, &style).unwrap(),
            render_clusters(&scan, &report, &style).unwrap()
        );
    }

    #[test]
    fn family_colors() {
        let scan = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let families = aztec_family_clusters(1).unwrap();
        let svg = render_cluster_list(&scan, (4, 4), &families, &RenderStyle::default()).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let group = doc
            .descendants()
            .find(|n| n.attribute("id") == Some("clusters"))
            .unwrap();
        let mut fills: Vec<&str> = group
            .children()
            .filter_map(|n| n.attribute("fill"))
            .collect();
        assert_eq!(fills.len(), 4);
        fills.sort_unstable();
        fills.dedup();
        assert_eq!(fills.len(), 4);
    }

    #[test]
    fn empty_and_full_overlays() {
        let style = RenderStyle::default();
        let scan = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let empty = ClusterReport {
            label: String::new(),
            width: 4,
            height: 4,
            max_area: 0,
            clusters: vec![],
        };
        assert_eq!(
            render_clusters(&scan, &empty, &style).unwrap(),
            render_path(&scan, &style).unwrap()
        );

        let full = enumerate_clusters(&scan, 16).unwrap();
        let whole: Vec<ClusterRect> = full.with_area(16).copied().collect();
        let svg = render_cluster_list(&scan, (4, 4), &whole, &style).unwrap();
        assert!(svg.contains("<rect x=\"0\" y=\"0\" width=\"64\" height=\"64\" fill=\"#d95f02\"/>"));
    }

    #[test]
    fn mismatches_are_rejected() {
        let style = RenderStyle::default();
        let scan = path(CurveId::Aztec, Extent::Order(1)).unwrap();
        let other =
            enumerate_clusters(&path(CurveId::Hilbert, Extent::Order(1)).unwrap(), 4).unwrap();
        assert!(render_clusters(&scan, &other, &style).is_err());
        let bad = RenderStyle {
            cell_size: 0.0,
            ..RenderStyle::default()
        };
        assert!(render_path(&scan, &bad).is_err());
        let no_palette = RenderStyle {
            palette: vec![],
            ..RenderStyle::default()
        };
        let fam = aztec_family_clusters(1).unwrap();
        assert!(render_cluster_list(&scan, (4, 4), &fam, &no_palette).is_err());
    }

    #[test]
    fn number_format() {
        assert_eq!(num(8.0), "8");
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1.0 / 3.0), "0.333");
        assert_eq!(num(-0.0001), "0");
    }
}
