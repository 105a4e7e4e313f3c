//! Minimal dependency-free SVG rendering for line and scatter panels.
//!
//! Output is fully deterministic: fixed canvas, fixed palette, no
//! timestamps, coordinates printed with fixed precision.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

pub const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// One polyline with a legend label.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
}

/// One scatter class (shared marker color and legend label).
#[derive(Debug, Clone)]
pub struct ScatterClass {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
}

fn finite_bounds<'a>(
    points: impl Iterator<Item = &'a (f64, f64)>,
) -> Option<(f64, f64, f64, f64)> {
    let mut bounds: Option<(f64, f64, f64, f64)> = None;
    for &(x, y) in points {
        if !(x.is_finite() && y.is_finite()) {
            continue;
        }
        bounds = Some(match bounds {
            None => (x, x, y, y),
            Some((x0, x1, y0, y1)) => (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
        });
    }
    bounds.map(|(x0, x1, y0, y1)| {
        // Avoid a zero-extent axis.
        let (y0, y1) = if y1 - y0 < 1e-12 {
            (y0 - 1.0, y1 + 1.0)
        } else {
            (y0, y1)
        };
        let (x0, x1) = if x1 - x0 < 1e-12 {
            (x0 - 1.0, x1 + 1.0)
        } else {
            (x0, x1)
        };
        (x0, x1, y0, y1)
    })
}

fn axis_ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=5).map(|i| lo + (hi - lo) * i as f64 / 5.0).collect()
}

fn frame(out: &mut String, title: &str, x_label: &str, y_label: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{tx}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{title}</text>
<text x="{tx}" y="{bl}" text-anchor="middle" font-family="sans-serif" font-size="13">{x_label}</text>
<text x="18" y="{ty}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {ty})">{y_label}</text>
"#,
        tx = (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        bl = HEIGHT - 12.0,
        ty = (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
    );
}

struct Mapper {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Mapper {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let px = MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R);
        let py = HEIGHT - MARGIN_B
            - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_T - MARGIN_B);
        (px, py)
    }
}

fn axes(out: &mut String, m: &Mapper) {
    let _ = write!(
        out,
        r##"<rect x="{l}" y="{t}" width="{w}" height="{h}" fill="none" stroke="#444" stroke-width="1"/>
"##,
        l = MARGIN_L,
        t = MARGIN_T,
        w = WIDTH - MARGIN_L - MARGIN_R,
        h = HEIGHT - MARGIN_T - MARGIN_B,
    );
    for x in axis_ticks(m.x0, m.x1) {
        let (px, _) = m.map(x, m.y0);
        let _ = write!(
            out,
            r##"<line x1="{px:.2}" y1="{y1}" x2="{px:.2}" y2="{y2}" stroke="#ccc" stroke-width="0.5"/>
<text x="{px:.2}" y="{ly}" text-anchor="middle" font-family="sans-serif" font-size="11">{label}</text>
"##,
            y1 = MARGIN_T,
            y2 = HEIGHT - MARGIN_B,
            ly = HEIGHT - MARGIN_B + 18.0,
            label = tick_label(x),
        );
    }
    for y in axis_ticks(m.y0, m.y1) {
        let (_, py) = m.map(m.x0, y);
        let _ = write!(
            out,
            r##"<line x1="{x1}" y1="{py:.2}" x2="{x2}" y2="{py:.2}" stroke="#ccc" stroke-width="0.5"/>
<text x="{lx}" y="{ly:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{label}</text>
"##,
            x1 = MARGIN_L,
            x2 = WIDTH - MARGIN_R,
            lx = MARGIN_L - 6.0,
            ly = py + 4.0,
            label = tick_label(y),
        );
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e5 || v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }
}

fn legend(out: &mut String, entries: &[(String, &str)]) {
    for (i, (label, color)) in entries.iter().enumerate() {
        let y = MARGIN_T + 16.0 + 18.0 * i as f64;
        let _ = write!(
            out,
            r#"<rect x="{x}" y="{ry:.2}" width="14" height="4" fill="{color}"/>
<text x="{tx}" y="{ty:.2}" font-family="sans-serif" font-size="12">{label}</text>
"#,
            x = MARGIN_L + 10.0,
            ry = y - 3.0,
            tx = MARGIN_L + 30.0,
            ty = y + 2.0,
        );
    }
}

/// Render a multi-series line chart.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut out = String::new();
    frame(&mut out, title, x_label, y_label);
    let bounds = finite_bounds(series.iter().flat_map(|s| s.points.iter()));
    if let Some((x0, x1, y0, y1)) = bounds {
        let m = Mapper { x0, x1, y0, y1 };
        axes(&mut out, &m);
        for s in series {
            let mut path = String::new();
            let mut pen_down = false;
            for &(x, y) in &s.points {
                if !(x.is_finite() && y.is_finite()) {
                    pen_down = false;
                    continue;
                }
                let (px, py) = m.map(x, y);
                let _ = write!(path, "{}{px:.2},{py:.2} ", if pen_down { "L" } else { "M" });
                pen_down = true;
            }
            let _ = write!(
                out,
                r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.5"/>
"#,
                path.trim_end(),
                s.color
            );
        }
        legend(
            &mut out,
            &series
                .iter()
                .map(|s| (s.label.clone(), s.color))
                .collect::<Vec<_>>(),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Render a scatter chart with one marker class per verdict/category.
pub fn scatter_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    classes: &[ScatterClass],
) -> String {
    let mut out = String::new();
    frame(&mut out, title, x_label, y_label);
    let bounds = finite_bounds(classes.iter().flat_map(|c| c.points.iter()));
    if let Some((x0, x1, y0, y1)) = bounds {
        let m = Mapper { x0, x1, y0, y1 };
        axes(&mut out, &m);
        for c in classes {
            for &(x, y) in &c.points {
                if !(x.is_finite() && y.is_finite()) {
                    continue;
                }
                let (px, py) = m.map(x, y);
                let _ = write!(
                    out,
                    r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5" fill="{}" fill-opacity="0.7"/>
"#,
                    c.color
                );
            }
        }
        legend(
            &mut out,
            &classes
                .iter()
                .map(|c| (format!("{} ({})", c.label, c.points.len()), c.color))
                .collect::<Vec<_>>(),
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_is_deterministic_and_well_formed() {
        let series = vec![Series {
            label: "r".into(),
            points: vec![(0.0, 1.0), (1.0, 2.0), (2.0, f64::NAN), (3.0, 1.5)],
            color: PALETTE[0],
        }];
        let a = line_chart("test", "t", "y", &series);
        let b = line_chart("test", "t", "y", &series);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains("<path"));
    }

    #[test]
    fn scatter_chart_renders_classes() {
        let classes = vec![
            ScatterClass {
                label: "win".into(),
                points: vec![(0.0, 0.0), (1.0, 1.0)],
                color: PALETTE[0],
            },
            ScatterClass {
                label: "loss".into(),
                points: vec![(0.5, 0.5)],
                color: PALETTE[1],
            },
        ];
        let svg = scatter_chart("mc", "x", "y", &classes);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("win (2)"));
    }

    #[test]
    fn empty_chart_still_renders() {
        let svg = line_chart("empty", "x", "y", &[]);
        assert!(svg.contains("</svg>"));
    }
}
