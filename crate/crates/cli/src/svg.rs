//! Minimal SVG writers: a log-log line plot and a log-scaled heatmap.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
    pub dashed: bool,
}

pub const BLUE: &str = "#1f77b4";
pub const ORANGE: &str = "#ff7f0e";
pub const BLACK: &str = "#000000";

fn decades(lo: f64, hi: f64) -> (f64, f64) {
    (lo.log10().floor(), hi.log10().ceil().max(lo.log10().floor() + 1.0))
}

/// Log-log plot; nonpositive samples cannot be drawn and are skipped.
pub fn loglog(series: &[Series], x_label: &str, y_label: &str) -> String {
    let visible = |s: &Series| -> Vec<(f64, f64)> {
        s.points
            .iter()
            .copied()
            .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
            .collect()
    };
    let all: Vec<(f64, f64)> = series.iter().flat_map(visible).collect();
    let (xmin, xmax, ymin, ymax) = if all.is_empty() {
        (1.0, 10.0, 1.0, 10.0)
    } else {
        all.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), (x, y)| (a.min(*x), b.max(*x), c.min(*y), d.max(*y)),
        )
    };
    let (x0, x1) = decades(xmin, xmax);
    let (y0, y1) = decades(ymin, ymax);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x.log10() - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y1 - y.log10()) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for e in (x0 as i32)..=(x1 as i32) {
        let x = px(10f64.powi(e));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{MARGIN_TOP}" x2="{x:.2}" y2="{:.2}" stroke="#b0b0b0" stroke-width="0.5"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{e}</text>"##,
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 18.0
        );
    }
    for e in (y0 as i32)..=(y1 as i32) {
        let y = py(10f64.powi(e));
        let _ = writeln!(
            s,
            r##"<line x1="{MARGIN_LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#b0b0b0" stroke-width="0.5"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"##,
            MARGIN_LEFT + plot_w,
            MARGIN_LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        escape(y_label)
    );

    for (k, ser) in series.iter().enumerate() {
        let pts = visible(ser);
        if !pts.is_empty() {
            let path: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
            let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
                path.join(" "),
                ser.color
            );
        }
        let ly = MARGIN_TOP + plot_h - 16.0 * (series.len() - k) as f64;
        let lx = MARGIN_LEFT + 10.0;
        let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="1.5"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            ser.color,
            lx + 30.0,
            ly + 4.0,
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Dark-to-white ramp: black, purple, orange, white.
pub fn ramp(step: u8) -> (u8, u8, u8) {
    const STOPS: [(f64, [f64; 3]); 4] = [
        (0.0, [0.0, 0.0, 0.0]),
        (0.35, [110.0, 30.0, 130.0]),
        (0.7, [240.0, 130.0, 40.0]),
        (1.0, [255.0, 255.0, 255.0]),
    ];
    let t = step as f64 / 255.0;
    let k = STOPS.iter().rposition(|(p, _)| *p <= t).unwrap_or(0).min(STOPS.len() - 2);
    let (p0, c0) = STOPS[k];
    let (p1, c1) = STOPS[k + 1];
    let w = ((t - p0) / (p1 - p0)).clamp(0.0, 1.0);
    let mix = |i: usize| (c0[i] + w * (c1[i] - c0[i])).round() as u8;
    (mix(0), mix(1), mix(2))
}

/// Ramp step for `|v|` on a log scale clipped to `[lo, hi]`.
pub fn ramp_step(v: f64, lo: f64, hi: f64) -> u8 {
    let a = v.abs().clamp(lo, hi);
    let t = (a.log10() - lo.log10()) / (hi.log10() - lo.log10());
    (t * 255.0).round() as u8
}

/// Square heatmap of `|values|` (row-major, `n x n`), row 0 at the top.
pub fn heatmap(n: usize, values: &[f64], lo: f64, hi: f64) -> String {
    assert_eq!(values.len(), n * n);
    let cell = (420.0 / n as f64).max(1.0);
    let side = cell * n as f64;
    let bar_x = 40.0 + side + 30.0;
    let w = bar_x + 80.0;
    let h = side + 60.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="12" shape-rendering="crispEdges">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for i in 0..n {
        for j in 0..n {
            let (r, g, b) = ramp(ramp_step(values[i * n + j], lo, hi));
            let _ = writeln!(
                s,
                r##"<rect x="{:.3}" y="{:.3}" width="{cell:.3}" height="{cell:.3}" fill="#{r:02x}{g:02x}{b:02x}"/>"##,
                40.0 + j as f64 * cell,
                20.0 + i as f64 * cell
            );
        }
    }
    let steps = 256;
    let seg = side / steps as f64;
    for k in 0..steps {
        let (r, g, b) = ramp(k as u8);
        let _ = writeln!(
            s,
            r##"<rect x="{bar_x:.3}" y="{:.3}" width="16" height="{:.3}" fill="#{r:02x}{g:02x}{b:02x}"/>"##,
            20.0 + side - (k + 1) as f64 * seg,
            seg + 0.01
        );
    }
    let (e0, e1) = (lo.log10().round() as i32, hi.log10().round() as i32);
    for e in e0..=e1 {
        let y = 20.0 + side - (e - e0) as f64 / (e1 - e0).max(1) as f64 * side;
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">1e{e}</text>"#, bar_x + 22.0, y + 4.0);
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
