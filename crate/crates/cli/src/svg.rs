//! Minimal static SVG line charts: axes, ticks, polylines, legend. No
//! plotting dependency; the output is deterministic for fixed input.

use std::fmt::Write;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#17becf", "#d62728", "#e377c2", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

const PANEL_WIDTH: f64 = 760.0;
const PANEL_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 52.0;

/// One curve: consecutive finite points are joined; non-finite values break
/// the line.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// One chart with its own y scale; panels share the x axis label.
pub struct Panel {
    pub title: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Option<Range> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values.filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo > hi {
            return None;
        }
        if lo == hi {
            // Flat data: open up a window around the value.
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
            lo -= pad;
            hi += pad;
        }
        Some(Range { lo, hi })
    }

    fn padded(mut self, fraction: f64) -> Range {
        let pad = (self.hi - self.lo) * fraction;
        self.lo -= pad;
        self.hi += pad;
        self
    }

    fn clamp01(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

/// Tick spacing on the 1-2-5 ladder aiming at `target` intervals.
fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target as f64;
    let magnitude = 10f64.powf(raw.log10().floor());
    for multiple in [1.0, 2.0, 5.0] {
        if raw <= multiple * magnitude {
            return multiple * magnitude;
        }
    }
    10.0 * magnitude
}

fn ticks(range: &Range, target: usize) -> Vec<f64> {
    let step = nice_step(range.hi - range.lo, target);
    let mut tick = (range.lo / step).ceil() * step;
    let mut out = Vec::new();
    while tick <= range.hi + step * 1e-9 {
        // Snap values that should be exact (e.g. 0) to the grid.
        let snapped = (tick / step).round() * step;
        out.push(if snapped == 0.0 { 0.0 } else { snapped });
        tick += step;
    }
    out
}

fn tick_label(value: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()) as i64;
    let decimals = decimals.clamp(0, 12) as usize;
    if step >= 1e-3 && step <= 1e6 {
        format!("{value:.decimals$}")
    } else {
        format!("{value:e}")
    }
}

fn coord(v: f64) -> String {
    format!("{v:.2}")
}

/// Render the panels stacked vertically into one SVG document.
pub fn render_document(x_label: &str, panels: &[Panel]) -> String {
    let total_height = MARGIN_TOP + panels.len() as f64 * PANEL_HEIGHT + MARGIN_BOTTOM;
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{PANEL_WIDTH}\" height=\"{total_height}\" \
         viewBox=\"0 0 {PANEL_WIDTH} {total_height}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    );
    let _ = writeln!(
        out,
        "<rect width=\"{PANEL_WIDTH}\" height=\"{total_height}\" fill=\"white\"/>"
    );

    for (panel_idx, panel) in panels.iter().enumerate() {
        let top = MARGIN_TOP + panel_idx as f64 * PANEL_HEIGHT;
        render_panel(&mut out, panel, top, x_label);
    }

    out.push_str("</svg>\n");
    out
}

fn render_panel(out: &mut String, panel: &Panel, top: f64, x_label: &str) {
    let plot_left = MARGIN_LEFT;
    let plot_right = PANEL_WIDTH - MARGIN_RIGHT;
    let plot_top = top + 26.0;
    let plot_bottom = top + PANEL_HEIGHT - 36.0;
    let plot_w = plot_right - plot_left;
    let plot_h = plot_bottom - plot_top;

    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\">{}</text>",
        plot_left,
        top + 16.0,
        panel.title
    );

    let x_range = Range::of(
        panel
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0)),
    );
    let y_range = Range::of(
        panel
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1)),
    )
    .map(|r| r.padded(0.05));

    let (Some(x_range), Some(y_range)) = (x_range, y_range) else {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" fill=\"#888\">no finite data</text>",
            plot_left,
            (plot_top + plot_bottom) / 2.0
        );
        return;
    };

    let to_x = |v: f64| plot_left + x_range.clamp01(v) * plot_w;
    let to_y = |v: f64| plot_bottom - y_range.clamp01(v) * plot_h;

    // Frame and ticks.
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        coord(plot_left),
        coord(plot_top),
        coord(plot_w),
        coord(plot_h)
    );
    let x_step = nice_step(x_range.hi - x_range.lo, 6);
    for tick in ticks(&x_range, 6) {
        let x = to_x(tick);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>",
            coord(x),
            coord(plot_bottom),
            coord(plot_bottom + 5.0)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            coord(x),
            coord(plot_bottom + 18.0),
            tick_label(tick, x_step)
        );
    }
    let y_step = nice_step(y_range.hi - y_range.lo, 5);
    for tick in ticks(&y_range, 5) {
        let y = to_y(tick);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#ddd\"/>",
            coord(plot_left),
            coord(plot_right),
            coord(y)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
            coord(plot_left - 6.0),
            coord(y + 4.0),
            tick_label(tick, y_step)
        );
    }

    // Axis labels.
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        coord((plot_left + plot_right) / 2.0),
        coord(plot_bottom + 32.0),
        x_label
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>",
        coord(plot_left - 52.0),
        coord((plot_top + plot_bottom) / 2.0),
        coord(plot_left - 52.0),
        coord((plot_top + plot_bottom) / 2.0),
        panel.y_label
    );

    // Curves, split at non-finite points.
    for (series_idx, series) in panel.series.iter().enumerate() {
        let color = PALETTE[series_idx % PALETTE.len()];
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, out: &mut String| {
            if seg.len() >= 2 {
                let _ = writeln!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
                    color,
                    seg.join(" ")
                );
            }
            seg.clear();
        };
        for &(x, y) in &series.points {
            if x.is_finite() && y.is_finite() {
                segment.push(format!("{},{}", coord(to_x(x)), coord(to_y(y))));
            } else {
                flush(&mut segment, out);
            }
        }
        flush(&mut segment, out);

        // Legend entry.
        let legend_x = plot_right + 12.0;
        let legend_y = plot_top + 14.0 + series_idx as f64 * 18.0;
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>",
            coord(legend_x),
            coord(legend_y - 4.0),
            coord(legend_x + 22.0),
            color
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            coord(legend_x + 28.0),
            coord(legend_y),
            series.label
        );
    }
}
