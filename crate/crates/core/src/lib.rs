// SPDX-License-Identifier: Apache-2.0

//! Rational Bernstein bases built on a homographic change of variable.
//!
//! A homography `f_α` maps a parameter interval `[a, b]` increasingly onto
//! `[0, 1]`; composing the classical Bernstein polynomials with it yields a
//! family of rational basis functions of degree `(n, n)` indexed by `α`.
//! `α = ∞` recovers the classical polynomial basis.
//!
//! The crate is organized bottom-up:
//!
//! * [`homography`]: the maps `f_α`, their inverses and derivatives, and the
//!   reparametrizations used by subdivision.
//! * [`basis`]: basis evaluation, derivatives, maxima, degree-raising
//!   identities and collocation matrices.
//! * [`curve`]: Bézier curves over control polygons (direct evaluation,
//!   de Casteljau, degree elevation, subdivision, tangents, curvature).
//! * [`approx`]: scalar function fitting in the basis.
//! * [`cli`]: the job model behind the `alphabezier` binary (CSV, JSON and SVG
//!   output).
//!
//! Batch operations (sampling, subdivision trees, distance sweeps) run on
//! rayon when the `parallel` feature is enabled and fall back to plain
//! iterators otherwise; see [`par`].

pub mod approx;
pub mod basis;
pub mod cli;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod homography;
pub mod par;
pub mod point;
pub mod presets;

pub use basis::{BasisSpec, MaxPoint};
pub use curve::{BezierCurve, DeCasteljauTableau, SubdivisionResult};
pub use error::{Error, Result};
pub use homography::{Alpha, HomographyMap, ReparamKind, SegmentReparam};
pub use par::Execution;
pub use point::{ControlPolygon, Point};
