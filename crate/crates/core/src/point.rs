// SPDX-License-Identifier: Apache-2.0

//! Points in R¹, R² or R³ and control polygons built from them.

use std::ops::{Add, Index, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// A point of dimension 1, 2 or 3. Unused trailing coordinates are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: usize,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = coords.len();
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::Argument(format!(
                "points must have 1 to {MAX_DIM} coordinates, got {dim}"
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Argument(format!("non-finite coordinate {bad}")));
        }
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(coords);
        Ok(Self { coords: c, dim })
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Self {
            coords: [x, y, 0.0],
            dim: 2,
        }
    }

    pub fn zero(dim: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        Self {
            coords: [0.0; MAX_DIM],
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    /// The point embedded in R³ with zero padding.
    pub fn to_3d(&self) -> [f64; 3] {
        self.coords
    }

    /// `(1 - t)·self + t·other`.
    pub fn lerp(&self, other: &Point, t: f64, one_minus_t: f64) -> Point {
        let mut out = *self;
        for k in 0..self.dim {
            out.coords[k] = one_minus_t * self.coords[k] + t * other.coords[k];
        }
        out
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (*self - *other).norm()
    }

    /// Cross product after embedding both points in R³.
    pub fn cross3(&self, other: &Point) -> [f64; 3] {
        let [a0, a1, a2] = self.coords;
        let [b0, b1, b2] = other.coords;
        [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
    }

    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.coords()[k]
    }
}

impl Add for Point {
    type Output = Point;

    fn add(mut self, rhs: Point) -> Point {
        for k in 0..MAX_DIM {
            self.coords[k] += rhs.coords[k];
        }
        self
    }
}

impl Sub for Point {
    type Output = Point;

    fn sub(mut self, rhs: Point) -> Point {
        for k in 0..MAX_DIM {
            self.coords[k] -= rhs.coords[k];
        }
        self
    }
}

impl Mul<f64> for Point {
    type Output = Point;

    fn mul(mut self, s: f64) -> Point {
        for c in &mut self.coords {
            *c *= s;
        }
        self
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(deserializer)?;
        Point::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Ordered control points `d_0, …, d_n` of a common dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ControlPolygon {
    points: Vec<Point>,
}

impl ControlPolygon {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Argument(format!(
                "a control polygon needs at least 2 points, got {}",
                points.len()
            )));
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::Argument(
                "control points have mixed dimensions".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn from_coords<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let pts = rows
            .iter()
            .map(|r| Point::new(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    pub fn from_xy(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, y)| Point::xy(x, y)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Polynomial degree `n` of a curve over this polygon.
    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn first(&self) -> &Point {
        &self.points[0]
    }

    pub fn last(&self) -> &Point {
        &self.points[self.points.len() - 1]
    }

    /// Largest pairwise distance between control points.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max(p.distance(q));
            }
        }
        d
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Self {
        Self {
            points: self.points.iter().map(f).collect(),
        }
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl<'de> Deserialize<'de> for ControlPolygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pts = Vec::<Point>::deserialize(deserializer)?;
        ControlPolygon::new(pts).map_err(serde::de::Error::custom)
    }
}
