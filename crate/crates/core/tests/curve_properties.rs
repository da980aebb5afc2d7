// SPDX-License-Identifier: Apache-2.0

mod common;

use alphabezier::curve::{uniform_params, AffineMap};
use alphabezier::geometry::{convex_hull_contains, hausdorff_polylines};
use alphabezier::{presets, BasisSpec, BezierCurve, ControlPolygon, Execution, HomographyMap, Point};
use common::*;
use proptest::prelude::*;

fn polygon(dim: usize) -> impl Strategy<Value = ControlPolygon> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, dim), 2..=9)
        .prop_map(|rows| ControlPolygon::from_coords(&rows).unwrap())
}

fn alpha() -> impl Strategy<Value = f64> {
    prop::sample::select(ALPHA_POOL.to_vec())
}

fn build(poly: ControlPolygon, al: f64) -> BezierCurve {
    BezierCurve::with_map(poly, HomographyMap::unit(al).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn decasteljau_equals_direct(poly in polygon(2), al in alpha(), x in 0.0f64..=1.0) {
        let c = build(poly, al);
        let diam = c.polygon().diameter().max(1e-300);
        let (apex, _) = c.eval_decasteljau(x).unwrap();
        prop_assert!(apex.distance(&c.eval(x).unwrap()) <= 1e-12 * diam);
    }

    #[test]
    fn endpoints_are_interpolated(poly in polygon(3), al in alpha()) {
        let c = build(poly, al);
        prop_assert_eq!(c.eval(0.0).unwrap(), *c.polygon().first());
        prop_assert_eq!(c.eval(1.0).unwrap(), *c.polygon().last());
    }

    #[test]
    fn curve_stays_in_control_hull(poly in polygon(2), al in alpha(), x in 0.0f64..=1.0) {
        let c = build(poly, al);
        let p = c.eval(x).unwrap();
        let slack = 1e-9 * c.polygon().diameter().max(1.0);
        prop_assert!(convex_hull_contains(c.polygon().points(), &p, slack));
    }

    #[test]
    fn elevation_keeps_the_curve(poly in polygon(2), al in alpha(), x in 0.0f64..=1.0) {
        let c = build(poly, al);
        let e = c.elevate_degree().unwrap();
        prop_assert_eq!(e.degree(), c.degree() + 1);
        let diam = c.polygon().diameter().max(1e-300);
        prop_assert!(e.eval(x).unwrap().distance(&c.eval(x).unwrap()) <= 1e-12 * diam);
    }

    #[test]
    fn subdivision_children_follow_the_parent(poly in polygon(2), al in alpha(), c in 0.05f64..0.95, t in 0.0f64..=1.0) {
        let curve = build(poly, al);
        let split = curve.subdivide(c).unwrap();
        let (u, v) = split.reparams().unwrap();
        let diam = curve.polygon().diameter().max(1e-300);
        let left = split.left.eval(t).unwrap();
        let right = split.right.eval(t).unwrap();
        prop_assert!(left.distance(&curve.eval(u.eval(t).unwrap()).unwrap()) <= 1e-10 * diam);
        prop_assert!(right.distance(&curve.eval(v.eval(t).unwrap()).unwrap()) <= 1e-10 * diam);
        prop_assert_eq!(split.left.polygon().last(), split.right.polygon().first());
    }

    #[test]
    fn affine_invariance(poly in polygon(2), al in alpha(), x in 0.0f64..=1.0, m in prop::array::uniform4(-3.0f64..3.0), off in prop::array::uniform2(-5.0f64..5.0)) {
        let c = build(poly, al);
        let aff = AffineMap::new(m.to_vec(), Point::xy(off[0], off[1])).unwrap();
        let moved = c.apply_affine(&aff).unwrap();
        let lhs = moved.eval(x).unwrap();
        let rhs = aff.apply(&c.eval(x).unwrap());
        let scale = moved.polygon().diameter().max(c.polygon().diameter()).max(1.0);
        prop_assert!(lhs.distance(&rhs) <= 1e-12 * scale * 10.0);
    }

    #[test]
    fn derivatives_match_finite_differences(poly in polygon(2), al in prop::sample::select(vec![-1.0, 2.0, 5.0, f64::INFINITY]), x in 0.05f64..0.95) {
        let c = build(poly, al);
        let d1 = c.derivative(x, 1).unwrap();
        let h = 1e-6;
        let fd = (c.eval(x + h).unwrap() - c.eval(x - h).unwrap()) * (0.5 / h);
        let scale = d1.norm().max(c.polygon().diameter()).max(1.0);
        prop_assert!(fd.distance(&d1) <= 1e-5 * scale);
    }
}

#[test]
fn index_change_reparametrizes_every_preset() {
    for (name, poly) in presets::all() {
        let c = build(poly.clone(), -1.0);
        for (a, b, beta) in [(0.0, 1.0, 2.0), (2.0, 7.0, 5.0), (-3.0, -1.0, f64::INFINITY)] {
            let other = BasisSpec::new(c.degree(), HomographyMap::new(a, b, beta).unwrap()).unwrap();
            let report = c.alpha_correspondence(&other, 200).unwrap();
            assert!(report.max_deviation <= 1e-10 * report.diameter, "pi_{name} beta {beta}");
        }
    }
}

#[test]
fn endpoint_tangents_follow_the_end_edges() {
    for al in FIGURE_ALPHAS {
        let c = build(presets::preset("h").unwrap(), al);
        let t = c.endpoint_tangents().unwrap();
        let d = c.polygon().points();
        let h = 1e-7;
        let fd0 = (c.eval(h).unwrap() - c.eval(0.0).unwrap()) * (1.0 / h);
        let fd1 = (c.eval(1.0).unwrap() - c.eval(1.0 - h).unwrap()) * (1.0 / h);
        assert!(fd0.distance(&t.start) <= 1e-4 * t.start.norm());
        assert!(fd1.distance(&t.end) <= 1e-4 * t.end.norm());
        let e0 = d[1] - d[0];
        assert!((e0[0] * t.start[1] - e0[1] * t.start[0]).abs() <= 1e-9 * t.start.norm() * e0.norm());
        assert!(t.start.dot(&e0) > 0.0);
    }
}

#[test]
fn degenerate_start_tangent_is_flagged() {
    let c = build(presets::preset("i").unwrap(), 2.0);
    let t = c.endpoint_tangents().unwrap();
    assert!(!t.start_degenerate && !t.end_degenerate);
    let poly = ControlPolygon::from_xy(&[(0.0, 0.0), (0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
    let t = build(poly, 2.0).endpoint_tangents().unwrap();
    assert!(t.start_degenerate && !t.end_degenerate);
}

#[test]
fn subdivision_levels_converge_to_the_curve() {
    let c = build(presets::preset("g").unwrap(), 2.0);
    let dense: Vec<Point> = c.sample(4001).unwrap().into_iter().map(|(_, p)| p).collect();
    let mut last = f64::INFINITY;
    for depth in 0..=6 {
        let polys = c.subdivide_recursive(depth).unwrap();
        assert_eq!(polys.len(), 1 << depth);
        let mut verts: Vec<Point> = Vec::new();
        for p in &polys {
            verts.extend_from_slice(p.points());
        }
        let d = hausdorff_polylines(&verts, &dense, Execution::Sequential);
        assert!(d <= last + 1e-12, "depth {depth}: {d} > {last}");
        last = d;
    }
    assert!(last < 1e-2, "depth 6 distance {last}");
}

#[test]
fn schedules_agree() {
    let c = build(presets::preset("e").unwrap(), -1.0);
    assert_eq!(
        c.sample_with(1000, Execution::Sequential).unwrap(),
        c.sample_with(1000, Execution::Parallel).unwrap()
    );
    assert_eq!(
        c.subdivision_levels_with(5, Execution::Sequential).unwrap(),
        c.subdivision_levels_with(5, Execution::Parallel).unwrap()
    );
}

#[test]
fn curvature_is_index_invariant_along_presets() {
    for name in ["c", "d", "h"] {
        let poly = presets::preset(name).unwrap();
        let p = build(poly.clone(), -1.0);
        let q = BezierCurve::with_map(poly, HomographyMap::new(2.0, 7.0, 5.0).unwrap()).unwrap();
        for x in uniform_params(0.02, 0.98, 30) {
            let y = p.corresponding_parameter(x, q.map()).unwrap();
            let (k1, k2) = (p.curvature(x).unwrap(), q.curvature(y).unwrap());
            assert!((k1 - k2).abs() <= 1e-8 * k1.abs().max(1e-12), "pi_{name} x {x}");
        }
    }
}
