// SPDX-License-Identifier: Apache-2.0

//! Distances and hull tests used to check curves against their polygons.

use crate::par::{self, Execution};
use crate::point::Point;

/// Distance from `p` to the segment `[s, e]`.
pub fn point_segment_distance(p: &Point, s: &Point, e: &Point) -> f64 {
    let d = *e - *s;
    let len2 = d.dot(&d);
    if len2 == 0.0 {
        return p.distance(s);
    }
    let t = ((*p - *s).dot(&d) / len2).clamp(0.0, 1.0);
    p.distance(&s.lerp(e, t, 1.0 - t))
}

/// Distance from `p` to a polyline given by its vertices.
pub fn point_polyline_distance(p: &Point, line: &[Point]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [only] => p.distance(only),
        _ => line
            .windows(2)
            .map(|s| point_segment_distance(p, &s[0], &s[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Symmetric Hausdorff distance between two polylines, measured from the
/// vertices of each to the segments of the other.
pub fn hausdorff_polylines(a: &[Point], b: &[Point], exec: Execution) -> f64 {
    let ab = par::max_by(exec, a, |p| point_polyline_distance(p, b));
    let ba = par::max_by(exec, b, |p| point_polyline_distance(p, a));
    ab.max(ba)
}

/// True when `p` lies in the convex hull of `pts` up to `slack`.
///
/// Dimension 1 is an interval test; dimension 2 uses the exact hull; in
/// dimension 3 every supporting plane through three of the points is tested,
/// with lower-dimensional point sets reduced to the 2D or 1D test in their
/// affine span.
pub fn convex_hull_contains(pts: &[Point], p: &Point, slack: f64) -> bool {
    if pts.is_empty() {
        return false;
    }
    match p.dim() {
        1 => {
            let lo = pts.iter().map(|q| q[0]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|q| q[0]).fold(f64::NEG_INFINITY, f64::max);
            p[0] >= lo - slack && p[0] <= hi + slack
        }
        2 => {
            let flat: Vec<[f64; 2]> = pts.iter().map(|q| [q[0], q[1]]).collect();
            in_hull_2d(&flat, [p[0], p[1]], slack)
        }
        _ => in_hull_3d(pts, p, slack),
    }
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; returns the hull counter-clockwise without
/// collinear points.
pub fn hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &q in iter {
            while hull.len() >= start + 2
                && cross2(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull
}

fn segment_distance_2d(p: [f64; 2], s: [f64; 2], e: [f64; 2]) -> f64 {
    let (dx, dy) = (e[0] - s[0], e[1] - s[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - s[0]) * dx + (p[1] - s[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (s[0] + t * dx - p[0], s[1] + t * dy - p[1]);
    (qx * qx + qy * qy).sqrt()
}

fn in_hull_2d(points: &[[f64; 2]], p: [f64; 2], slack: f64) -> bool {
    let hull = hull_2d(points);
    match hull.len() {
        0 => false,
        1 => segment_distance_2d(p, hull[0], hull[0]) <= slack,
        2 => segment_distance_2d(p, hull[0], hull[1]) <= slack,
        k => {
            let inside = (0..k).all(|i| cross2(hull[i], hull[(i + 1) % k], p) >= 0.0);
            inside
                || (0..k)
                    .map(|i| segment_distance_2d(p, hull[i], hull[(i + 1) % k]))
                    .fold(f64::INFINITY, f64::min)
                    <= slack
        }
    }
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot3(v, v).sqrt();
    (n > 0.0).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn in_hull_3d(pts: &[Point], p: &Point, slack: f64) -> bool {
    let q: Vec<[f64; 3]> = pts.iter().map(Point::to_3d).collect();
    let x = p.to_3d();
    let scale = q
        .iter()
        .flat_map(|a| q.iter().map(move |b| dot3(sub3(*a, *b), sub3(*a, *b)).sqrt()))
        .fold(0.0, f64::max);
    let flat_tol = 1e-12 * scale.max(1.0);

    // affine span: find a spanning direction and, if any, a plane normal
    let origin = q[0];
    let dir = q.iter().find_map(|v| {
        let d = sub3(*v, origin);
        (dot3(d, d).sqrt() > flat_tol).then(|| normalize(d)).flatten()
    });
    let Some(u) = dir else {
        return p.distance(&pts[0]) <= slack;
    };
    let normal = q.iter().find_map(|v| {
        let c = cross3(u, sub3(*v, origin));
        (dot3(c, c).sqrt() > flat_tol).then(|| normalize(c)).flatten()
    });
    let Some(nrm) = normal else {
        // collinear: interval test along u plus distance to the line
        let ts: Vec<f64> = q.iter().map(|v| dot3(sub3(*v, origin), u)).collect();
        let (lo, hi) = ts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &t| (l.min(t), h.max(t)));
        let t = dot3(sub3(x, origin), u).clamp(lo, hi);
        let foot = [origin[0] + t * u[0], origin[1] + t * u[1], origin[2] + t * u[2]];
        return dot3(sub3(x, foot), sub3(x, foot)).sqrt() <= slack;
    };
    let coplanar = q
        .iter()
        .all(|v| dot3(sub3(*v, origin), nrm).abs() <= flat_tol);
    if coplanar {
        if dot3(sub3(x, origin), nrm).abs() > slack {
            return false;
        }
        let w = cross3(nrm, u);
        let proj = |v: [f64; 3]| {
            let d = sub3(v, origin);
            [dot3(d, u), dot3(d, w)]
        };
        let flat: Vec<[f64; 2]> = q.iter().map(|v| proj(*v)).collect();
        return in_hull_2d(&flat, proj(x), slack);
    }
    // full-dimensional: test every supporting plane
    let n = q.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(m) = normalize(cross3(sub3(q[j], q[i]), sub3(q[k], q[i]))) else {
                    continue;
                };
                let side: Vec<f64> = q.iter().map(|v| dot3(sub3(*v, q[i]), m)).collect();
                let max = side.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = side.iter().copied().fold(f64::INFINITY, f64::min);
                let h = dot3(sub3(x, q[i]), m);
                if max <= flat_tol && h > slack {
                    return false;
                }
                if min >= -flat_tol && h < -slack {
                    return false;
                }
            }
        }
    }
    true
}
