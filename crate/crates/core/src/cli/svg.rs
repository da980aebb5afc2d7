// SPDX-License-Identifier: Apache-2.0

//! Minimal static SVG 1.1 writer. Coordinates are written with three decimals
//! so identical inputs always give byte-identical documents.

use std::fmt::Write;

pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Axis-aligned data window mapped onto a pixel rectangle (y up).
#[derive(Debug, Clone, Copy)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub width: f64,
    pub height: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    /// Data bounds padded by `pad` (fraction of the span) and stretched so
    /// both axes share one scale.
    pub fn fit_equal(x0: f64, y0: f64, width: f64, height: f64, pts: &[[f64; 2]], pad: f64) -> Self {
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in pts {
            xmin = xmin.min(p[0]);
            xmax = xmax.max(p[0]);
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
        if !xmin.is_finite() {
            (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (xmax - xmin).max(ymax - ymin).max(1e-9);
        let (cx, cy) = (0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
        let sx = span * (1.0 + 2.0 * pad);
        let (hx, hy) = if width >= height {
            (0.5 * sx * width / height, 0.5 * sx)
        } else {
            (0.5 * sx, 0.5 * sx * height / width)
        };
        Self {
            x0,
            y0,
            width,
            height,
            xmin: cx - hx,
            xmax: cx + hx,
            ymin: cy - hy,
            ymax: cy + hy,
        }
    }

    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let px = self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.width;
        let py = self.y0 + self.height - (y - self.ymin) / (self.ymax - self.ymin) * self.height;
        (px, py)
    }
}

pub struct Svg {
    body: String,
    width: f64,
    height: f64,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            body: String::new(),
            width,
            height,
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, stroke: &str, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{h:.3}" stroke="{stroke}" fill="{fill}" stroke-width="1"/>"#
        );
    }

    pub fn polyline(&mut self, vp: &Viewport, pts: &[[f64; 2]], stroke: &str, width: f64, dash: Option<&str>) {
        let mut coords = String::with_capacity(pts.len() * 16);
        for (k, p) in pts.iter().enumerate() {
            let (x, y) = vp.map(p[0], p[1]);
            if k > 0 {
                coords.push(' ');
            }
            let _ = write!(coords, "{x:.3},{y:.3}");
        }
        let dash = dash
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width:.3}"{dash}/>"#
        );
    }

    pub fn circle(&mut self, vp: &Viewport, p: [f64; 2], r: f64, fill: &str) {
        let (x, y) = vp.map(p[0], p[1]);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.3}" fill="{fill}"/>"#
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="{size:.1}" text-anchor="{anchor}">{escaped}</text>"#
        );
    }

    pub fn finish(self) -> String {
        let (w, h) = (self.width, self.height);
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
                "\n",
                r#"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="white"/>"#,
                "\n{body}</svg>\n"
            ),
            w = w,
            h = h,
            body = self.body
        )
    }
}
