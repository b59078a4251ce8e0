use std::error::Error;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aztec_sfc::analysis::{
    aztec_family_clusters, check_self_similarity, enumerate_clusters, locality_benchmark,
    verify_curve,
};
use aztec_sfc::cs::{load_idx_images, run_batch, BenchConfig, BenchScan};
use aztec_sfc::curves::{scan_for_side, to_csv, to_json};
use aztec_sfc::render::{render_cluster_list, render_path, RenderStyle};
use aztec_sfc::{Curve, CurveId, Extent};

use crate::{
    BenchArgs, ClustersArgs, Command, CurveArgs, Format, MetricsArgs, PathArgs, RenderArgs,
    VerifyArgs,
};

type CmdResult = Result<ExitCode, Box<dyn Error>>;

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Path(a) => path(a),
        Command::Verify(a) => verify(a),
        Command::Clusters(a) => clusters(a),
        Command::Render(a) => render(a),
        Command::Metrics(a) => metrics(a),
        Command::Bench(a) => bench(a),
    }
}

fn config(command: &str, fields: &[(&str, String)]) {
    let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("config: {command} {}", parts.join(" "));
}

fn show<T: std::fmt::Debug>(v: &Option<T>) -> String {
    match v {
        Some(v) => format!("{v:?}"),
        None => "-".into(),
    }
}

fn show_path(p: &Option<PathBuf>) -> String {
    p.as_ref().map_or("-".into(), |p| p.display().to_string())
}

fn resolve(args: &CurveArgs) -> Result<Curve, Box<dyn Error>> {
    let id: CurveId = args.curve.parse()?;
    let extent = match (args.order, args.side) {
        (Some(order), None) => Extent::Order(order),
        (None, Some(side)) => Extent::square(side),
        _ => return Err("one of --order or --side is required".into()),
    };
    Ok(Curve::new(id, extent)?)
}

fn curve_fields(args: &CurveArgs) -> Vec<(&'static str, String)> {
    vec![
        ("curve", args.curve.clone()),
        ("order", show(&args.order)),
        ("side", show(&args.side)),
    ]
}

fn write_output(out: Option<&Path>, content: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, content),
        None => io::stdout().lock().write_all(content.as_bytes()),
    }
}

fn path(a: PathArgs) -> CmdResult {
    let mut fields = curve_fields(&a.curve);
    fields.push(("format", format!("{:?}", a.format).to_lowercase()));
    fields.push(("out", show_path(&a.out)));
    config("path", &fields);
    let scan = resolve(&a.curve)?.path()?;
    let text = match a.format {
        Format::Json => to_json(&scan),
        Format::Csv => to_csv(&scan),
    };
    write_output(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_orders(s: &str) -> Result<Vec<u32>, Box<dyn Error>> {
    let bad = || format!("invalid order range '{s}' (expected A..B or N)");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (
                lo.trim().parse::<u32>().map_err(|_| bad())?,
                hi.trim().parse::<u32>().map_err(|_| bad())?,
            )
        }
        None => {
            let n = s.trim().parse::<u32>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad().into());
    }
    Ok((lo..=hi).collect())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn verify(a: VerifyArgs) -> CmdResult {
    let id: CurveId = a.curve.parse()?;
    let curves: Vec<Curve> = match a.side {
        Some(side) => {
            config(
                "verify",
                &[("curve", a.curve.clone()), ("side", side.to_string())],
            );
            vec![Curve::with_side(id, side)?]
        }
        None => {
            config(
                "verify",
                &[("curve", a.curve.clone()), ("orders", a.orders.clone())],
            );
            parse_orders(&a.orders)?
                .into_iter()
                .map(|n| Curve::new(id, Extent::Order(n)))
                .collect::<Result<_, _>>()?
        }
    };
    let grammar = id.grammar();
    println!(
        "{:<22} {:>10} {:>10} {:>11} {:>6} {:>6} {:>13} {:>7}",
        "curve", "cells", "bijective", "continuous", "entry", "exit", "self-similar", "result"
    );
    let mut all_ok = true;
    for curve in curves {
        let scan = curve.path()?;
        let report = verify_curve(&scan, id.is_continuous());
        let corners = grammar.as_ref().and_then(|g| g.corners(curve.width()));
        let (entry_ok, exit_ok) = match corners {
            Some((entry, exit)) => (
                Some(report.entry == Some(entry)),
                Some(report.exit == Some(exit)),
            ),
            None => (None, None),
        };
        let similar = match curve.order() {
            Some(n) if n >= 2 => Some(check_self_similarity(id, n)?.passed()),
            _ => None,
        };
        let cont = report
            .continuity_checked
            .then_some(report.discontinuities == 0);
        let col = |v: Option<bool>| v.map_or("-", mark);
        let ok = report.passed()
            && [entry_ok, exit_ok, similar]
                .iter()
                .all(|v| v.unwrap_or(true));
        all_ok &= ok;
        println!(
            "{:<22} {:>10} {:>10} {:>11} {:>6} {:>6} {:>13} {:>7}",
            curve.label(),
            scan.len(),
            mark(report.bijective),
            col(cont),
            col(entry_ok),
            col(exit_ok),
            col(similar),
            if ok { "pass" } else { "FAIL" }
        );
        if let Some(d) = report.first_discontinuity {
            eprintln!("{}: first discontinuity after index {d}", curve.label());
        }
        if let Some((d, c)) = report.first_revisit {
            eprintln!("{}: cell {c} revisited at index {d}", curve.label());
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn clusters(a: ClustersArgs) -> CmdResult {
    let curve = resolve(&a.curve)?;
    let max_area = a.max_area.unwrap_or(curve.len());
    let mut fields = curve_fields(&a.curve);
    fields.push(("max_area", max_area.to_string()));
    fields.push(("out", show_path(&a.out)));
    config("clusters", &fields);
    let report = enumerate_clusters(&curve.path()?, max_area)?;
    print!("{}", report.summary());
    if let Some(out) = &a.out {
        fs::write(out, report.to_csv())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn render(a: RenderArgs) -> CmdResult {
    let curve = resolve(&a.curve)?;
    let mut fields = curve_fields(&a.curve);
    fields.extend([
        ("svg", a.svg.display().to_string()),
        ("clusters", a.clusters.to_string()),
        ("width", a.width.to_string()),
        ("grid", (!a.no_grid).to_string()),
    ]);
    config("render", &fields);
    let scan = curve.path()?;
    let mut style = RenderStyle::fitted(curve.width().max(curve.height()), a.width);
    style.show_grid = !a.no_grid;
    let svg = if !a.clusters {
        render_path(&scan, &style)?
    } else {
        let rects = match (curve.id(), curve.order()) {
            (CurveId::Aztec, Some(order)) => aztec_family_clusters(order)?,
            _ => enumerate_clusters(&scan, curve.len())?
                .clusters
                .into_iter()
                .filter(|c| c.width() >= 2 && c.height() >= 2 && c.area < curve.len())
                .collect(),
        };
        render_cluster_list(&scan, (scan.width(), scan.height()), &rects, &style)?
    };
    fs::write(&a.svg, svg)?;
    Ok(ExitCode::SUCCESS)
}

fn metrics(a: MetricsArgs) -> CmdResult {
    config(
        "metrics",
        &[
            ("curves", a.curves.join(",")),
            ("side", a.side.to_string()),
            ("queries", a.queries.to_string()),
            ("seed", a.seed.to_string()),
            ("out", show_path(&a.out)),
        ],
    );
    let scans = a
        .curves
        .iter()
        .map(|name| Ok(scan_for_side(name.parse()?, a.side)?))
        .collect::<Result<Vec<_>, Box<dyn Error>>>()?;
    let stats = locality_benchmark(&scans, a.queries, a.seed)?;
    print!("{}", stats.summary());
    if let Some(out) = &a.out {
        fs::write(out, stats.to_csv())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn stats_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or("bench".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}_stats.csv"))
}

fn bench(a: BenchArgs) -> CmdResult {
    let stats_out = a.stats.clone().unwrap_or_else(|| stats_path(&a.out));
    config(
        "bench",
        &[
            ("images", a.images.display().to_string()),
            ("count", a.count.to_string()),
            ("sparsity", a.sparsity.to_string()),
            ("tolerance", a.tolerance.to_string()),
            ("scans", a.scans.join(",")),
            ("out", a.out.display().to_string()),
            ("stats", stats_out.display().to_string()),
            ("serial_timing", a.serial_timing.to_string()),
        ],
    );
    let scans = a
        .scans
        .iter()
        .map(|name| Ok(BenchScan::for_curve(name.parse()?)?))
        .collect::<Result<Vec<_>, Box<dyn Error>>>()?;
    let file = File::open(&a.images).map_err(|e| format!("{}: {e}", a.images.display()))?;
    let images = load_idx_images(BufReader::new(file), a.count)?;
    let bench_config = BenchConfig {
        sparsity: a.sparsity,
        tolerance: a.tolerance,
        serial_timing: a.serial_timing,
    };
    let report = run_batch(&images, &scans, &bench_config)?;
    for e in &report.errors {
        eprintln!(
            "warning: image {} scan {}: {}",
            e.image_id, e.scan, e.message
        );
    }
    fs::write(&a.out, report.records_csv())?;
    fs::write(&stats_out, report.stats_csv())?;
    print!("{}", report.summary());
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_orders("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_orders("5").unwrap(), vec![5]);
        for bad in ["0..2", "3..1", "a..b", ""] {
            assert!(parse_orders(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn default_stats_path() {
        assert_eq!(
            stats_path(Path::new("/tmp/x/run.csv")),
            PathBuf::from("/tmp/x/run_stats.csv")
        );
    }
}
