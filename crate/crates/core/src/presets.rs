// SPDX-License-Identifier: Apache-2.0

//! Named planar cubic control polygons used by the figure commands.

use crate::point::ControlPolygon;

/// `(name, control points)` for the nine bundled cubics.
pub const PRESETS: [(&str, [(f64, f64); 4]); 9] = [
    ("a", [(0.0, 2.0), (3.5, 0.0), (3.5, 4.0), (0.0, 0.0)]),
    ("b", [(0.0, 1.0), (3.5, 0.0), (3.5, 4.0), (0.0, 1.0)]),
    ("c", [(0.0, 1.0), (4.5, 4.0), (5.5, 0.0), (3.5, 1.0)]),
    ("d", [(0.0, 1.0), (4.0, 0.5), (2.5, 3.0), (6.0, 3.0)]),
    ("e", [(0.0, 1.5), (4.0, 0.5), (5.0, 4.0), (3.0, 2.0)]),
    ("f", [(0.0, 3.5), (4.0, 0.5), (5.0, 4.0), (0.0, 0.0)]),
    ("g", [(0.0, 3.5), (4.0, 0.5), (4.5, 2.5), (0.0, 0.0)]),
    ("h", [(0.0, 0.0), (2.0, 2.5), (4.5, 3.0), (6.5, 1.5)]),
    ("i", [(0.0, 3.5), (5.0, 1.0), (5.0, 1.0), (0.0, 0.0)]),
];

/// Looks up a preset by its letter, optionally written `pi_<letter>`.
pub fn preset(name: &str) -> Option<ControlPolygon> {
    let lower = name.trim().to_ascii_lowercase();
    let key = lower.strip_prefix("pi_").unwrap_or(&lower);
    PRESETS
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, pts)| ControlPolygon::from_xy(pts).expect("presets are valid"))
}

/// All presets in letter order.
pub fn all() -> Vec<(&'static str, ControlPolygon)> {
    PRESETS
        .iter()
        .map(|(n, pts)| (*n, ControlPolygon::from_xy(pts).expect("presets are valid")))
        .collect()
}
