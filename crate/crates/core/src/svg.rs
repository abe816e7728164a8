//! SVG 1.1 output. Coordinates are rounded to 9 significant digits for display only.

use std::fmt::Write;

use crate::kernel::{Point, Segment};
use crate::polygon::CposPolygon;

pub const POLYGON: &str = "#000000";
pub const DIAGONAL: &str = "#888888";
pub const AE: &str = "#1f4fd8";
pub const CSS: &str = "#d81f1f";
pub const EQUIDISTANT: &str = "#e08a00";
pub const ESS: &str = "#138a36";
pub const PD: &str = "#7b2fbe";
pub const PARALLEL: &str = "#008080";
pub const APPROXIMATE: &str = "#b0b0b0";

/// `x` rounded to 9 significant digits, shortest form.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

fn xy(p: &Point) -> (f64, f64) {
    let (x, y) = p.to_f64();
    (x, -y)
}

fn pts_attr(ps: &[(f64, f64)]) -> String {
    ps.iter()
        .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Accumulates drawing elements in call order; the frame comes from the polygon.
pub struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
    unit: f64,
}

impl Canvas {
    pub fn new(p: &CposPolygon) -> Self {
        let coords: Vec<(f64, f64)> = p.vertices().iter().map(xy).collect();
        let min = coords
            .iter()
            .fold((f64::MAX, f64::MAX), |a, c| (a.0.min(c.0), a.1.min(c.1)));
        let max = coords
            .iter()
            .fold((f64::MIN, f64::MIN), |a, c| (a.0.max(c.0), a.1.max(c.1)));
        let span = (max.0 - min.0).max(max.1 - min.1).max(f64::MIN_POSITIVE);
        Canvas {
            body: String::new(),
            min,
            max,
            unit: span / 250.0,
        }
    }

    pub fn polygon(&mut self, ps: &[Point], stroke: &str, fill: Option<&str>, class: &str) {
        let c: Vec<_> = ps.iter().map(xy).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}" fill="{}" stroke="{stroke}" stroke-width="{}"/>"#,
            pts_attr(&c),
            fill.unwrap_or("none"),
            num(self.unit)
        );
    }

    pub fn polyline(&mut self, ps: &[Point], closed: bool, stroke: &str, class: &str) {
        let mut c: Vec<_> = ps.iter().map(xy).collect();
        if closed && !c.is_empty() {
            c.push(c[0]);
        }
        self.polyline_f64(&c, stroke, class, None);
    }

    pub fn polyline_f64(&mut self, c: &[(f64, f64)], stroke: &str, class: &str, dash: Option<f64>) {
        let dash = dash
            .map(|d| {
                format!(
                    r#" stroke-dasharray="{},{}""#,
                    num(d * self.unit),
                    num(d * self.unit)
                )
            })
            .unwrap_or_default();
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" points="{}" fill="none" stroke="{stroke}" stroke-width="{}"{dash}/>"#,
            pts_attr(c),
            num(self.unit)
        );
    }

    pub fn segment(&mut self, s: &Segment, stroke: &str, class: &str, dashed: bool) {
        let (a, b) = (xy(&s.a), xy(&s.b));
        let dash = if dashed {
            format!(
                r#" stroke-dasharray="{},{}""#,
                num(4.0 * self.unit),
                num(3.0 * self.unit)
            )
        } else {
            String::new()
        };
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"{dash}/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            num(self.unit)
        );
    }

    pub fn dot(&mut self, p: &Point, fill: &str, class: &str) {
        let (x, y) = xy(p);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            num(x),
            num(y),
            num(2.5 * self.unit)
        );
    }

    pub fn ring(&mut self, p: &Point, stroke: &str, class: &str) {
        let (x, y) = xy(p);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            num(x),
            num(y),
            num(3.5 * self.unit),
            num(0.8 * self.unit)
        );
    }

    pub fn finish(self) -> String {
        let pad = 12.0 * self.unit;
        let (x0, y0) = (self.min.0 - pad, self.min.1 - pad);
        let (w, h) = (
            self.max.0 - self.min.0 + 2.0 * pad,
            self.max.1 - self.min.1 + 2.0 * pad,
        );
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="600" height="{}">"#,
            num(x0),
            num(y0),
            num(w),
            num(h),
            num((600.0 * h / w).round())
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Fill colour for faces carrying `n` chord families.
pub fn face_colour(n: usize) -> &'static str {
    const RAMP: [&str; 6] = [
        "#ffffff", "#f2f0f7", "#dadaeb", "#bcbddc", "#9e9ac8", "#756bb1",
    ];
    RAMP[n.min(RAMP.len() - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::hex_ea2;

    #[test]
    fn significant_digits() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-1.5), "-1.5");
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(123456789012.0), "123456789000");
        assert_eq!(num(2.0 / 3.0 * 1e-7), "0.0000000666666667");
    }

    #[test]
    fn frame_and_elements() {
        let p = hex_ea2();
        let mut c = Canvas::new(&p);
        c.polygon(p.vertices(), POLYGON, None, "polygon");
        let s = c.finish();
        assert!(s.starts_with("<?xml"));
        assert!(s.contains(r#"points="0,0 1,0 1,-2 0,-3 -2,-3 -2,-2""#));
        assert!(s.trim_end().ends_with("</svg>"));
    }
}
