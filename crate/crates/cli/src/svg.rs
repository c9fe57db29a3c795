//! Dependency-free SVG heatmap of a grid sweep: axis-aligned cell
//! rectangles over a log-n horizontal axis and a linear Δ vertical axis,
//! the threshold contour overdrawn as a solid white polyline, and an
//! optional comparison contour (typically the δ = 0 baseline) dashed.
//!
//! Colors come from a fixed 9-stop sequential ramp (dark violet → yellow)
//! applied to the probability clipped to [0, 0.5]: 0 maps to the dark end,
//! the coin-flip worst case 0.5 to the bright end. Infeasible (NaN) cells
//! are drawn grey. All coordinates are emitted with two decimals so output
//! bytes are stable across platforms.

use std::fmt::Write as _;
use std::path::Path;

use claimcheck::GridResult;

use crate::CliError;

/// The 9 ramp stops, evenly spaced over the clipped probability range.
pub const RAMP: [[u8; 3]; 9] = [
    [0x44, 0x01, 0x54],
    [0x46, 0x32, 0x7e],
    [0x36, 0x5c, 0x8d],
    [0x27, 0x7f, 0x8e],
    [0x1f, 0xa1, 0x87],
    [0x4a, 0xc1, 0x6d],
    [0xa0, 0xda, 0x39],
    [0xd0, 0xe1, 0x1c],
    [0xfd, 0xe7, 0x25],
];

/// Color of infeasible cells.
const NAN_FILL: &str = "#bbbbbb";
/// Probability mapped to the bright end of the ramp.
const RAMP_MAX: f64 = 0.5;

const PLOT_W: f64 = 640.0;
const PLOT_H: f64 = 420.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 56.0;
const BAR_GAP: f64 = 28.0;
const BAR_W: f64 = 18.0;
const MARGIN_RIGHT: f64 = BAR_GAP + BAR_W + 64.0;

fn ramp_color(p: f64) -> String {
    if p.is_nan() {
        return NAN_FILL.to_string();
    }
    let t = (p / RAMP_MAX).clamp(0.0, 1.0) * (RAMP.len() - 1) as f64;
    let i = (t.floor() as usize).min(RAMP.len() - 2);
    let f = t - i as f64;
    let mix = |a: u8, b: u8| (f64::from(a) + f * (f64::from(b) - f64::from(a))).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(RAMP[i][0], RAMP[i + 1][0]),
        mix(RAMP[i][1], RAMP[i + 1][1]),
        mix(RAMP[i][2], RAMP[i + 1][2]),
    )
}

/// Cell edges bracketing each axis value: midpoints between neighbors,
/// extended outward by half the end gaps. `values` must be increasing.
fn edges(values: &[f64]) -> Vec<f64> {
    let k = values.len();
    if k == 1 {
        // Degenerate axis: give the lone cell a unit-ish width.
        let half = (values[0].abs() * 0.1).max(0.05);
        return vec![values[0] - half, values[0] + half];
    }
    let mut e = Vec::with_capacity(k + 1);
    e.push(values[0] - 0.5 * (values[1] - values[0]));
    for w in values.windows(2) {
        e.push(0.5 * (w[0] + w[1]));
    }
    e.push(values[k - 1] + 0.5 * (values[k - 1] - values[k - 2]));
    e
}

struct Frame {
    log_n_edges: Vec<f64>,
    delta_edges: Vec<f64>,
}

impl Frame {
    fn new(result: &GridResult) -> Frame {
        let log_n: Vec<f64> = result
            .n_values
            .iter()
            .map(|&n| f64::from(n).log10())
            .collect();
        Frame {
            log_n_edges: edges(&log_n),
            delta_edges: edges(&result.delta_values),
        }
    }

    fn x(&self, log_n: f64) -> f64 {
        let (lo, hi) = (
            self.log_n_edges[0],
            *self.log_n_edges.last().expect("non-empty"),
        );
        MARGIN_LEFT + (log_n - lo) / (hi - lo) * PLOT_W
    }

    fn y(&self, delta: f64) -> f64 {
        let (lo, hi) = (
            self.delta_edges[0],
            *self.delta_edges.last().expect("non-empty"),
        );
        MARGIN_TOP + PLOT_H - (delta - lo) / (hi - lo) * PLOT_H
    }
}

fn push_rect(out: &mut String, x0: f64, y0: f64, x1: f64, y1: f64, fill: &str) {
    let _ = writeln!(
        out,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"##,
        x0.min(x1),
        y0.min(y1),
        (x1 - x0).abs(),
        (y1 - y0).abs(),
    );
}

fn contour_points(frame: &Frame, result: &GridResult) -> String {
    let mut points = String::new();
    for (&n, contour) in result.n_values.iter().zip(&result.contour) {
        if let Some(delta) = contour {
            let _ = write!(
                points,
                "{}{:.2},{:.2}",
                if points.is_empty() { "" } else { " " },
                frame.x(f64::from(n).log10()),
                frame.y(*delta),
            );
        }
    }
    points
}

/// Renders the heatmap document. `comparison` adds a second, dashed
/// contour; `title` is drawn above the plot.
pub fn render_heatmap(result: &GridResult, comparison: Option<&GridResult>, title: &str) -> String {
    let frame = Frame::new(result);
    let width = MARGIN_LEFT + PLOT_W + MARGIN_RIGHT;
    let height = MARGIN_TOP + PLOT_H + MARGIN_BOTTOM;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"##
    );
    let _ = writeln!(
        out,
        r##"<rect width="{width:.0}" height="{height:.0}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"##,
        MARGIN_LEFT + PLOT_W / 2.0,
        MARGIN_TOP - 16.0,
        title,
    );

    // Cells, row-major; NaN cells are infeasible and drawn grey.
    for (di, row) in result.probs.iter().enumerate() {
        for (ni, &p) in row.iter().enumerate() {
            push_rect(
                &mut out,
                frame.x(frame.log_n_edges[ni]),
                frame.y(frame.delta_edges[di]),
                frame.x(frame.log_n_edges[ni + 1]),
                frame.y(frame.delta_edges[di + 1]),
                &ramp_color(p),
            );
        }
    }

    // Contours: solid for the sweep itself, dashed for the comparison.
    let main = contour_points(&frame, result);
    if !main.is_empty() {
        let _ = writeln!(
            out,
            r##"<polyline points="{main}" fill="none" stroke="#ffffff" stroke-width="2.5"/>"##
        );
    }
    if let Some(base) = comparison {
        let dashed = contour_points(&frame, base);
        if !dashed.is_empty() {
            let _ = writeln!(
                out,
                r##"<polyline points="{dashed}" fill="none" stroke="#ffffff" stroke-width="2" stroke-dasharray="7 5"/>"##
            );
        }
    }

    // Plot frame.
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN_LEFT:.2}" y="{MARGIN_TOP:.2}" width="{PLOT_W:.2}" height="{PLOT_H:.2}" fill="none" stroke="#000000"/>"##
    );

    // x ticks at the decades the n range covers.
    let axis_y = MARGIN_TOP + PLOT_H;
    let lo = frame.log_n_edges[0];
    let hi = *frame.log_n_edges.last().expect("non-empty");
    for exp in lo.ceil() as i32..=hi.floor() as i32 {
        let x = frame.x(f64::from(exp));
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{axis_y:.2}" x2="{x:.2}" y2="{:.2}" stroke="#000000"/>"##,
            axis_y + 5.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"##,
            axis_y + 19.0,
            10f64.powi(exp),
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">test-set size n</text>"##,
        MARGIN_LEFT + PLOT_W / 2.0,
        axis_y + 40.0,
    );

    // y ticks: five evenly spaced Δ values.
    let d_lo = result.delta_values[0];
    let d_hi = *result.delta_values.last().expect("non-empty");
    for i in 0..5 {
        let delta = d_lo + (d_hi - d_lo) * f64::from(i) / 4.0;
        let y = frame.y(delta);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT:.2}" y2="{y:.2}" stroke="#000000"/>"##,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{delta:.3}</text>"##,
            MARGIN_LEFT - 9.0,
            y + 4.0,
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="18" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">observed difference &#916;</text>"##,
        MARGIN_TOP + PLOT_H / 2.0,
        MARGIN_TOP + PLOT_H / 2.0,
    );

    // Colorbar: the ramp as stacked stops, brightest (p >= 0.5) on top.
    let bar_x = MARGIN_LEFT + PLOT_W + BAR_GAP;
    let stop_h = PLOT_H / (RAMP.len() - 1) as f64;
    for i in 0..RAMP.len() - 1 {
        // Each band is a small vertical gradient approximated by its
        // midpoint color; bands are thin enough that this is invisible.
        let p_mid = RAMP_MAX * (i as f64 + 0.5) / (RAMP.len() - 1) as f64;
        push_rect(
            &mut out,
            bar_x,
            MARGIN_TOP + PLOT_H - (i + 1) as f64 * stop_h,
            bar_x + BAR_W,
            MARGIN_TOP + PLOT_H - i as f64 * stop_h,
            &ramp_color(p_mid),
        );
    }
    let _ = writeln!(
        out,
        r##"<rect x="{bar_x:.2}" y="{MARGIN_TOP:.2}" width="{BAR_W:.2}" height="{PLOT_H:.2}" fill="none" stroke="#000000"/>"##
    );
    for (frac, label) in [(0.0, "0"), (0.5, "0.25"), (1.0, "&#8805;0.5")] {
        let y = MARGIN_TOP + PLOT_H * (1.0 - frac);
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{label}</text>"##,
            bar_x + BAR_W + 6.0,
            y + 4.0,
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">p(false claim)</text>"##,
        bar_x - 4.0,
        MARGIN_TOP - 10.0,
    );

    out.push_str("</svg>\n");
    out
}

pub fn write_svg(
    path: &Path,
    result: &GridResult,
    comparison: Option<&GridResult>,
    title: &str,
) -> Result<(), CliError> {
    std::fs::write(path, render_heatmap(result, comparison, title))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
