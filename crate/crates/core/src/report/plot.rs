//! Static SVG quadrant scatter plot: cited indicator on the horizontal axis,
//! citing indicator on the vertical axis, one dashed line at each median.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 640.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 40.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub label: String,
    pub cited: f64,
    pub citing: f64,
}

#[derive(Debug, Clone)]
pub struct ScatterPlot<'a> {
    pub title: &'a str,
    pub points: &'a [ScatterPoint],
    pub cited_threshold: f64,
    pub citing_threshold: f64,
    /// Draw the four role names in the quadrant corners.
    pub quadrant_labels: bool,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Axis { lo: 0.0, hi: 1.0 };
        }
        let pad = if hi > lo { (hi - lo) * 0.08 } else { lo.abs().max(1.0) * 0.5 };
        Axis {
            lo: (lo - pad).max(0.0).min(lo),
            hi: hi + pad,
        }
    }

    fn frac(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

impl ScatterPlot<'_> {
    pub fn to_svg(&self) -> String {
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let x_axis = Axis::fit(self.points.iter().map(|p| p.cited).chain([self.cited_threshold]));
        let y_axis = Axis::fit(self.points.iter().map(|p| p.citing).chain([self.citing_threshold]));
        let px = |v: f64| MARGIN_LEFT + x_axis.frac(v) * plot_w;
        let py = |v: f64| MARGIN_TOP + (1.0 - y_axis.frac(v)) * plot_h;
        let (left, right, top, bottom) = (MARGIN_LEFT, MARGIN_LEFT + plot_w, MARGIN_TOP, MARGIN_TOP + plot_h);

        let mut s = String::new();
        // writes into a String cannot fail
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text class="title" x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(self.title)
        );
        let _ = writeln!(
            s,
            r##"<path class="axis" d="M{left:.2},{top:.2} L{left:.2},{bottom:.2} L{right:.2},{bottom:.2}" fill="none" stroke="#333"/>"##
        );

        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let xv = x_axis.lo + f * (x_axis.hi - x_axis.lo);
            let yv = y_axis.lo + f * (y_axis.hi - y_axis.lo);
            let _ = writeln!(
                s,
                r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{:.2}</text>"#,
                px(xv),
                bottom + 18.0,
                xv
            );
            let _ = writeln!(
                s,
                r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{:.2}</text>"#,
                left - 8.0,
                py(yv) + 4.0,
                yv
            );
        }
        let _ = writeln!(
            s,
            r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">Cited EBDI</text>"#,
            left + plot_w / 2.0,
            HEIGHT - 20.0
        );
        let _ = writeln!(
            s,
            r#"<text class="axis-label" x="22" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 22 {:.2})">Citing EBDI</text>"#,
            top + plot_h / 2.0,
            top + plot_h / 2.0
        );

        let tx = px(self.cited_threshold);
        let ty = py(self.citing_threshold);
        let _ = writeln!(
            s,
            r##"<line class="threshold" data-dimension="CITED" data-value="{}" x1="{tx:.2}" y1="{top:.2}" x2="{tx:.2}" y2="{bottom:.2}" stroke="#c0392b" stroke-dasharray="6 4"/>"##,
            self.cited_threshold
        );
        let _ = writeln!(
            s,
            r##"<line class="threshold" data-dimension="CITING" data-value="{}" x1="{left:.2}" y1="{ty:.2}" x2="{right:.2}" y2="{ty:.2}" stroke="#c0392b" stroke-dasharray="6 4"/>"##,
            self.citing_threshold
        );

        if self.quadrant_labels {
            for (x, y, anchor, name) in [
                (right - 6.0, top + 16.0, "end", "CORE"),
                (right - 6.0, bottom - 8.0, "end", "KNOWLEDGE_IMPORTER"),
                (left + 6.0, top + 16.0, "start", "KNOWLEDGE_EXPORTER"),
                (left + 6.0, bottom - 8.0, "start", "TANGENTIAL"),
            ] {
                let _ = writeln!(
                    s,
                    r##"<text class="quadrant" x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-size="12" fill="#888">{name}</text>"##
                );
            }
        }

        for p in self.points {
            let (x, y) = (px(p.cited), py(p.citing));
            let label = escape(&p.label);
            let _ = writeln!(
                s,
                r##"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="4" fill="#2c7fb8"><title>{label} (cited {:.4}, citing {:.4})</title></circle>"##,
                p.cited, p.citing
            );
            let _ = writeln!(
                s,
                r#"<text class="point-label" x="{:.2}" y="{:.2}" font-size="10">{label}</text>"#,
                x + 6.0,
                y - 6.0
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_elements_and_escapes() {
        let points = vec![
            ScatterPoint {
                label: "A&B <J>".into(),
                cited: 1.0,
                citing: 0.5,
            },
            ScatterPoint {
                label: "C".into(),
                cited: 0.2,
                citing: 0.9,
            },
        ];
        let svg = ScatterPlot {
            title: "t",
            points: &points,
            cited_threshold: 0.6,
            citing_threshold: 0.7,
            quadrant_labels: true,
        }
        .to_svg();
        assert_eq!(svg.matches(r#"class="point""#).count(), 2);
        assert_eq!(svg.matches(r#"class="threshold""#).count(), 2);
        assert!(svg.contains("A&amp;B &lt;J&gt;"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn degenerate_axis_stays_finite() {
        let points = vec![ScatterPoint {
            label: "x".into(),
            cited: 2.0,
            citing: 2.0,
        }];
        let svg = ScatterPlot {
            title: "t",
            points: &points,
            cited_threshold: 2.0,
            citing_threshold: 2.0,
            quadrant_labels: false,
        }
        .to_svg();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        assert_eq!(svg.matches(r#"class="quadrant""#).count(), 0);
    }
}
