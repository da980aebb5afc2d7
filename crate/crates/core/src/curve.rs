// SPDX-License-Identifier: Apache-2.0

//! Bézier curves of index `α`: `B(x) = Σ d_i B_i(x)` over a control polygon.

use serde::Serialize;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::homography::{HomographyMap, ReparamKind, SegmentReparam};
use crate::par::{self, Execution};
use crate::point::{ControlPolygon, Point};

/// Deepest recursive subdivision accepted (`2^20` sub-polygons).
pub const MAX_SUBDIVISION_DEPTH: usize = 20;

/// Speeds at or below this are treated as singular points.
pub const SINGULAR_SPEED: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BezierCurve {
    polygon: ControlPolygon,
    spec: BasisSpec,
}

/// Triangular array of one de Casteljau run: `levels[r][i] = d_i^r(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeCasteljauTableau {
    levels: Vec<Vec<Point>>,
}

impl DeCasteljauTableau {
    fn build(points: &[Point], w: f64, cw: f64) -> Self {
        let mut levels = Vec::with_capacity(points.len());
        levels.push(points.to_vec());
        for _ in 1..points.len() {
            let prev = levels.last().unwrap();
            let next = prev
                .windows(2)
                .map(|p| p[0].lerp(&p[1], w, cw))
                .collect();
            levels.push(next);
        }
        Self { levels }
    }

    pub fn levels(&self) -> &[Vec<Point>] {
        &self.levels
    }

    pub fn level(&self, r: usize) -> &[Point] {
        &self.levels[r]
    }

    /// `d_0^n(x)`, the curve point.
    pub fn apex(&self) -> Point {
        self.levels[self.levels.len() - 1][0]
    }

    /// `d_0^0, d_0^1, …, d_0^n`.
    pub fn left_column(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l[0]).collect()
    }

    /// `d_0^n, d_1^{n-1}, …, d_n^0`.
    pub fn right_diagonal(&self) -> Vec<Point> {
        let n = self.levels.len() - 1;
        (0..=n).map(|i| self.levels[n - i][i]).collect()
    }
}

/// The two halves of a curve split at `c`, both parametrized over the
/// parent's full interval: `left(t) = parent(u(t))`, `right(t) = parent(v(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionResult {
    pub left: BezierCurve,
    pub right: BezierCurve,
    pub split: f64,
}

impl SubdivisionResult {
    /// The reparametrizations relating each child to the parent.
    pub fn reparams(&self) -> Result<(SegmentReparam, SegmentReparam)> {
        let map = *self.left.spec.map();
        Ok((
            map.reparam(self.split, ReparamKind::LeftU)?,
            map.reparam(self.split, ReparamKind::RightV)?,
        ))
    }
}

/// Curve derivatives at the two ends. A flag is set when the adjacent
/// polygon leg has zero length, in which case the vector is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointTangents {
    pub start: Point,
    pub end: Point,
    pub start_degenerate: bool,
    pub end_degenerate: bool,
}

/// `X ↦ M·X + C` on R^d, with `M` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: Vec<f64>,
    offset: Point,
}

impl AffineMap {
    pub fn new(linear: Vec<f64>, offset: Point) -> Result<Self> {
        let d = offset.dim();
        if linear.len() != d * d {
            return Err(Error::Argument(format!(
                "affine matrix needs {} entries for dimension {d}, got {}",
                d * d,
                linear.len()
            )));
        }
        if linear.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument("affine matrix has non-finite entries".into()));
        }
        Ok(Self { linear, offset })
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn apply(&self, p: &Point) -> Point {
        let d = self.dim();
        let mut out = [0.0; 3];
        for (r, slot) in out.iter_mut().enumerate().take(d) {
            let row = &self.linear[r * d..(r + 1) * d];
            *slot = row.iter().zip(p.coords()).map(|(m, x)| m * x).sum::<f64>() + self.offset[r];
        }
        Point::new(&out[..d]).expect("affine image of a finite point is finite")
    }
}

/// Outcome of comparing one curve with the same polygon under another index
/// and interval at corresponding parameters `y = f_β⁻¹(f_α(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub samples: usize,
    pub max_deviation: f64,
    pub diameter: f64,
}

impl BezierCurve {
    pub fn new(polygon: ControlPolygon, spec: BasisSpec) -> Result<Self> {
        if polygon.len() != spec.degree() + 1 {
            return Err(Error::Argument(format!(
                "polygon has {} points but degree {} needs {}",
                polygon.len(),
                spec.degree(),
                spec.degree() + 1
            )));
        }
        Ok(Self { polygon, spec })
    }

    /// Curve whose degree is read off the polygon.
    pub fn with_map(polygon: ControlPolygon, map: HomographyMap) -> Result<Self> {
        let spec = BasisSpec::new(polygon.degree(), map)?;
        Self::new(polygon, spec)
    }

    pub fn polygon(&self) -> &ControlPolygon {
        &self.polygon
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn map(&self) -> &HomographyMap {
        self.spec.map()
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn dim(&self) -> usize {
        self.polygon.dim()
    }

    /// `Σ d_i B_i(x)`.
    pub fn eval(&self, x: f64) -> Result<Point> {
        let basis = self.spec.eval(x)?;
        Ok(self.combine(&basis))
    }

    fn combine(&self, weights: &[f64]) -> Point {
        self.polygon
            .points()
            .iter()
            .zip(weights)
            .fold(Point::zero(self.dim()), |acc, (p, &b)| acc + *p * b)
    }

    /// Curve point by repeated interpolation in `w`, with the full tableau.
    pub fn eval_decasteljau(&self, x: f64) -> Result<(Point, DeCasteljauTableau)> {
        let tab = self.tableau(x)?;
        Ok((tab.apex(), tab))
    }

    pub fn tableau(&self, x: f64) -> Result<DeCasteljauTableau> {
        let (w, cw) = self.map().eval_pair(x)?;
        Ok(DeCasteljauTableau::build(self.polygon.points(), w, cw))
    }

    /// `order`-th derivative (1 or 2) with respect to `x`.
    pub fn derivative(&self, x: f64, order: u8) -> Result<Point> {
        let d = self.spec.eval_deriv(x, order)?;
        Ok(self.combine(&d))
    }

    /// Same curve written in degree `n + 1`:
    /// `d̂_i = i/(n+1)·d_{i-1} + (1 - i/(n+1))·d_i`.
    pub fn elevate_degree(&self) -> Result<BezierCurve> {
        let n = self.degree();
        let pts = self.polygon.points();
        let m = (n + 1) as f64;
        let mut out = Vec::with_capacity(n + 2);
        out.push(pts[0]);
        for i in 1..=n {
            let t = i as f64 / m;
            out.push(pts[i].lerp(&pts[i - 1], t, (m - i as f64) / m));
        }
        out.push(pts[n]);
        BezierCurve::new(ControlPolygon::new(out)?, self.spec.with_degree(n + 1)?)
    }

    /// Splits at `c ∈ (a, b)` using one tableau: the left polygon is its
    /// first column, the right polygon its anti-diagonal.
    pub fn subdivide(&self, c: f64) -> Result<SubdivisionResult> {
        let map = self.map();
        if !(c > map.a() && c < map.b()) {
            return Err(Error::Domain {
                what: "c",
                value: c,
                lo: map.a(),
                hi: map.b(),
            });
        }
        let tab = self.tableau(c)?;
        let left = BezierCurve::new(ControlPolygon::new(tab.left_column())?, self.spec)?;
        let right = BezierCurve::new(ControlPolygon::new(tab.right_diagonal())?, self.spec)?;
        Ok(SubdivisionResult {
            left,
            right,
            split: c,
        })
    }

    /// Repeated midpoint subdivision; returns the `2^depth` sub-polygons in
    /// curve order.
    pub fn subdivide_recursive(&self, depth: usize) -> Result<Vec<ControlPolygon>> {
        self.subdivide_recursive_with(depth, Execution::default())
    }

    pub fn subdivide_recursive_with(
        &self,
        depth: usize,
        exec: Execution,
    ) -> Result<Vec<ControlPolygon>> {
        Ok(self
            .subdivision_levels_with(depth, exec)?
            .pop()
            .expect("level 0 is always present"))
    }

    /// All levels `0..=depth` of the midpoint subdivision tree.
    pub fn subdivision_levels(&self, depth: usize) -> Result<Vec<Vec<ControlPolygon>>> {
        self.subdivision_levels_with(depth, Execution::default())
    }

    pub fn subdivision_levels_with(
        &self,
        depth: usize,
        exec: Execution,
    ) -> Result<Vec<Vec<ControlPolygon>>> {
        if depth > MAX_SUBDIVISION_DEPTH {
            return Err(Error::Argument(format!(
                "subdivision depth {depth} exceeds {MAX_SUBDIVISION_DEPTH}"
            )));
        }
        let mid = 0.5 * (self.map().a() + self.map().b());
        let mut levels = vec![vec![self.polygon.clone()]];
        for _ in 0..depth {
            let prev = levels.last().unwrap();
            let halves = par::map(exec, prev, |poly| {
                let child = BezierCurve {
                    polygon: poly.clone(),
                    spec: self.spec,
                };
                child
                    .subdivide(mid)
                    .map(|s| [s.left.polygon, s.right.polygon])
            });
            let next = halves
                .into_iter()
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            levels.push(next);
        }
        Ok(levels)
    }

    /// `B'(a) = n·α/((α - 1)(b - a))·(d_1 - d_0)` and
    /// `B'(b) = n(α - 1)/(α(b - a))·(d_n - d_{n-1})`.
    pub fn endpoint_tangents(&self) -> Result<EndpointTangents> {
        let ends = self.spec.endpoint_derivatives()?;
        let pts = self.polygon.points();
        let n = self.degree();
        let first = pts[1] - pts[0];
        let last = pts[n] - pts[n - 1];
        Ok(EndpointTangents {
            start: first * ends.at_a.1,
            end: last * ends.at_b.1,
            start_degenerate: first.norm() == 0.0,
            end_degenerate: last.norm() == 0.0,
        })
    }

    /// Image of the curve under an affine map, obtained by mapping the
    /// control points.
    pub fn apply_affine(&self, affine: &AffineMap) -> Result<BezierCurve> {
        if affine.dim() != self.dim() {
            return Err(Error::Argument(format!(
                "affine map of dimension {} applied to a curve in R^{}",
                affine.dim(),
                self.dim()
            )));
        }
        Ok(BezierCurve {
            polygon: self.polygon.map_points(|p| affine.apply(p)),
            spec: self.spec,
        })
    }

    /// `κ = |B' × B''| / |B'|³`; planar curves are embedded in R³.
    pub fn curvature(&self, x: f64) -> Result<f64> {
        if self.dim() < 2 {
            return Err(Error::Argument(
                "curvature needs a curve in R^2 or R^3".into(),
            ));
        }
        let d1 = self.derivative(x, 1)?;
        let speed = d1.norm();
        if speed <= SINGULAR_SPEED {
            return Err(Error::SingularPoint { x, speed });
        }
        let d2 = self.derivative(x, 2)?;
        let [c0, c1, c2] = d1.cross3(&d2);
        Ok((c0 * c0 + c1 * c1 + c2 * c2).sqrt() / (speed * speed * speed))
    }

    /// Parameter on `other`'s interval naming the same curve point as `x`:
    /// `y = f_β⁻¹(f_α(x))`.
    pub fn corresponding_parameter(&self, x: f64, other: &HomographyMap) -> Result<f64> {
        other.eval_inverse(self.map().eval(x)?)
    }

    /// Compares this curve with the same polygon under `other` at `samples`
    /// uniformly spaced parameters, pairing points through
    /// [`corresponding_parameter`](Self::corresponding_parameter).
    pub fn alpha_correspondence(
        &self,
        other: &BasisSpec,
        samples: usize,
    ) -> Result<CorrespondenceReport> {
        if other.degree() != self.degree() {
            return Err(Error::Argument(format!(
                "polygon of length {} cannot be read in degree {}",
                self.polygon.len(),
                other.degree()
            )));
        }
        let twin = BezierCurve::new(self.polygon.clone(), *other)?;
        let xs = self.sample_params(samples.max(2));
        let devs = par::try_map_range(Execution::default(), xs.len(), |k| {
            let x = xs[k];
            let y = self.corresponding_parameter(x, other.map())?;
            Ok::<_, Error>(self.eval(x)?.distance(&twin.eval(y)?))
        })?;
        Ok(CorrespondenceReport {
            samples: xs.len(),
            max_deviation: devs.into_iter().fold(0.0, f64::max),
            diameter: self.polygon.diameter(),
        })
    }

    /// `count` uniformly spaced parameters from `a` to `b`, endpoints exact.
    pub fn sample_params(&self, count: usize) -> Vec<f64> {
        uniform_params(self.map().a(), self.map().b(), count)
    }

    /// `(x, B(x))` at `count` uniform parameters.
    pub fn sample(&self, count: usize) -> Result<Vec<(f64, Point)>> {
        self.sample_with(count, Execution::default())
    }

    pub fn sample_with(&self, count: usize, exec: Execution) -> Result<Vec<(f64, Point)>> {
        let xs = self.sample_params(count);
        par::try_map_range(exec, xs.len(), |k| Ok((xs[k], self.eval(xs[k])?)))
    }
}

/// `count` points evenly spread over `[a, b]` with both ends exact.
pub fn uniform_params(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let last = count - 1;
            (0..count)
                .map(|k| {
                    if k == last {
                        b
                    } else {
                        a + (b - a) * (k as f64 / last as f64)
                    }
                })
                .collect()
        }
    }
}
