// SPDX-License-Identifier: Apache-2.0

//! JSON document written by the CLI and the shared number formatter.
//!
//! Every JSON output is a [`JobOutput`]. Numbers are written in their
//! shortest round-trip form, so reading a document back and serializing it
//! again reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::approx::FitResult;
use crate::basis::MaxPoint;
use crate::homography::Alpha;
use crate::point::{ControlPolygon, Point};

/// Shortest decimal that parses back to `v`, switching to exponent form for
/// very small or very large magnitudes.
pub fn fmt_num(v: f64) -> String {
    let m = v.abs();
    if m != 0.0 && m.is_finite() && !(1e-5..1e16).contains(&m) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    pub alpha: Vec<Alpha>,
    pub interval: [f64; 2],
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polygon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

/// One sampled parameter. `values` holds the basis values `B_0..B_n` for
/// `basis`, the point coordinates for curve commands and `[f, fit]` for
/// `fit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub values: Vec<f64>,
}

impl Sample {
    pub fn values(x: f64, values: Vec<f64>) -> Self {
        Self { x, values }
    }

    pub fn point(x: f64, p: &Point) -> Self {
        Self {
            x,
            values: p.coords().to_vec(),
        }
    }

    pub fn fit(x: f64, f: f64, fit: f64) -> Self {
        Self { x, values: vec![f, fit] }
    }
}

/// Outcome of one self-test identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct JobOutput {
    pub params: Params,
    #[serde(default)]
    pub samples: Vec<Sample>,
    /// Control polygons as rows of coordinates.
    #[serde(default)]
    pub polygons: Vec<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub maxima: Option<Vec<MaxPoint>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fit: Option<FitResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Vec<Check>>,
}

impl JobOutput {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output is serializable");
        s.push('\n');
        s
    }
}

pub fn polygon_rows(p: &ControlPolygon) -> Vec<Vec<f64>> {
    p.points().iter().map(|q| q.coords().to_vec()).collect()
}
