//! Report serialization: CSV rows, JSON documents, and the SVG shape plot.

use std::fmt::Write as _;

use serde::Serialize;

use crate::counting::Method;
use crate::error::{Error, Result};
use crate::maximizer::{MaximizerReport, ShapeReport};
use crate::ratefn::{vershik_curve, F_MAX};
use crate::shape::PiecewiseLinearShape;

/// Column order of `maximize` and `table` CSV output.
pub const REPORT_COLUMNS: [&str; 7] = [
    "n",
    "k",
    "maximizer",
    "max_count",
    "exponent",
    "hr_reference",
    "distance_to_vershik",
];

/// Flat, string-count view of a [`MaximizerReport`].
#[derive(Clone, Debug, Serialize)]
pub struct ReportRecord {
    pub n: u32,
    pub k: u32,
    pub maximizers: Vec<String>,
    pub max_count: String,
    pub method: Method,
    pub exponent: f64,
    pub hr_reference: f64,
    pub distance_to_vershik: f64,
}

impl From<&MaximizerReport> for ReportRecord {
    fn from(r: &MaximizerReport) -> Self {
        ReportRecord {
            n: r.n,
            k: r.k,
            maximizers: r.maximizers.iter().map(ToString::to_string).collect(),
            max_count: r.max_count.value.to_string(),
            method: r.max_count.method,
            exponent: r.exponent,
            hr_reference: r.hr_reference,
            distance_to_vershik: r.distance_to_vershik,
        }
    }
}

/// Semicolon-joined maximizer list, e.g. `3,1;2,1,1`.
pub fn join_maximizers(r: &MaximizerReport) -> String {
    r.maximizers
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

/// Header plus one row per report, columns as in [`REPORT_COLUMNS`].
pub fn reports_to_csv(reports: &[MaximizerReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS).map_err(csv_error)?;
    for r in reports {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            join_maximizers(r),
            r.max_count.value.to_string(),
            r.exponent.to_string(),
            r.hr_reference.to_string(),
            r.distance_to_vershik.to_string(),
        ])
        .map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

/// Generic header-plus-rows CSV writer for the smaller commands.
pub fn rows_to_csv<const N: usize>(header: [&str; N], rows: &[[String; N]]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(csv_error)?;
    s.push('\n');
    Ok(s)
}

// Pixels per unit of the rescaled coordinates.
const PX: f64 = 100.0;

fn svg_point(x: f64, y: f64) -> String {
    // y grows upward: (x, y) is drawn at (x, -y)
    format!("{:.3},{:.3}", x * PX + 0.0, -y * PX + 0.0)
}

fn polyline_points(shape: &PiecewiseLinearShape, half: f64) -> String {
    let mut pts = vec![svg_point(-half, half)];
    pts.extend(shape.kinks().iter().map(|&(x, y)| svg_point(x, y)));
    pts.push(svg_point(half, half));
    pts.join(" ")
}

/// Number of samples of the Vershik curve drawn by [`shape_svg`].
pub const VERSHIK_SAMPLES: usize = 481;

/// Renders the rescaled maximizer profile, its convex envelope, the
/// Vershik curve and `|x|` on the window `[-half, half]`.
///
/// The `viewBox` is `(-half, -(half + 0.25))` to `(half, 0.9)` in units of
/// 100 px; a point `(x, y)` of the plane is drawn at `(100 x, -100 y)`, so
/// `y` increases upward. The legend and caption sit below the `x` axis.
pub fn shape_svg(r: &ShapeReport) -> String {
    let reach = r
        .profile_shape
        .kinks()
        .iter()
        .map(|k| k.0.abs())
        .fold(0.0, f64::max);
    let half = (reach * 1.25).max(2.5);
    let top = half + 0.25;
    let bottom = 0.9;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.1} {:.1} {:.1} {:.1}" width="{:.0}" height="{:.0}">"#,
        -half * PX,
        -top * PX,
        2.0 * half * PX,
        (top + bottom) * PX,
        2.0 * half * PX,
        (top + bottom) * PX,
    );
    let _ = writeln!(
        s,
        "<title>Maximizer of n={} (k={}) against the Vershik curve</title>",
        r.report.n, r.report.k
    );
    let _ = writeln!(
        s,
        r##"<line id="x-axis" x1="{:.3}" y1="0" x2="{:.3}" y2="0" stroke="#bbbbbb" stroke-width="1"/>"##,
        -half * PX,
        half * PX
    );
    let _ = writeln!(
        s,
        r##"<polyline id="asymptote" fill="none" stroke="#999999" stroke-dasharray="4 3" stroke-width="1.5" points="{} {} {}"/>"##,
        svg_point(-half, half),
        svg_point(0.0, 0.0),
        svg_point(half, half)
    );
    let vershik: Vec<String> = (0..VERSHIK_SAMPLES)
        .map(|i| -half + 2.0 * half * i as f64 / (VERSHIK_SAMPLES - 1) as f64)
        .map(|x| svg_point(x, vershik_curve(x)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline id="vershik" fill="none" stroke="#d62728" stroke-width="2" points="{}"/>"##,
        vershik.join(" ")
    );
    let _ = writeln!(
        s,
        r##"<polyline id="envelope" fill="none" stroke="#2ca02c" stroke-width="2" points="{}"/>"##,
        polyline_points(&r.envelope_shape, half)
    );
    let _ = writeln!(
        s,
        r##"<polyline id="profile" fill="none" stroke="#1f77b4" stroke-width="1.5" points="{}"/>"##,
        polyline_points(&r.profile_shape, half)
    );

    let legend_x = -half * PX + 10.0;
    let _ = writeln!(s, r#"<g id="legend" font-family="sans-serif" font-size="14">"#);
    let entries = [
        ("#1f77b4", format!("rescaled maximizer {}", r.report.first())),
        ("#2ca02c", "lower convex envelope".to_string()),
        ("#d62728", "Vershik curve".to_string()),
        ("#999999", "|x|".to_string()),
    ];
    for (i, (color, label)) in entries.iter().enumerate() {
        let y = 22.0 + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{color}" stroke-width="3"/><text x="{:.1}" y="{:.1}">{label}</text>"#,
            legend_x,
            legend_x + 24.0,
            legend_x + 30.0,
            y + 5.0
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text id="caption" x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13" data-distance-profile="{:.6}" data-distance-envelope="{:.6}" data-f-envelope="{:.6}">n={} k={}: d(f,V)={:.6} d(h,V)={:.6} d(f,h)={:.6} F(h)={:.6} F_max={:.6}</text>"#,
        legend_x,
        (bottom - 0.1) * PX,
        r.distance_profile,
        r.distance_envelope,
        r.f_envelope,
        r.report.n,
        r.report.k,
        r.distance_profile,
        r.distance_envelope,
        r.distance_profile_envelope,
        r.f_envelope,
        F_MAX,
    );
    s.push_str("</svg>\n");
    s
}
