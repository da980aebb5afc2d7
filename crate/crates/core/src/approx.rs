// SPDX-License-Identifier: Apache-2.0

//! Fitting scalar functions on `[a, b]` in the rational basis.
//!
//! Two operators are offered: interpolation at the basis maxima
//! `x_i = f_α⁻¹(i / n)` and discrete least squares on uniform samples. Both
//! report their error on the same uniform grid of [`ERROR_GRID`] points so
//! results are comparable across methods and degrees.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::basis::BasisSpec;
use crate::curve::uniform_params;
use crate::error::{Error, Result};

/// Number of uniform points on which fit errors are measured.
pub const ERROR_GRID: usize = 1001;

/// Highest degree accepted by the collocation fit.
pub const MAX_COLLOCATION_DEGREE: usize = 30;

/// Above this condition estimate least squares switches from the normal
/// equations to a QR factorization.
pub const NORMAL_EQUATIONS_MAX_COND: f64 = 1e6;

const RANK_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub coefficients: Vec<f64>,
    /// `max |f - p|` over the error grid.
    pub max_error: f64,
    /// Root-mean-square of `f - p` over the error grid.
    pub l2_error: f64,
}

impl FitResult {
    /// Value of the fitted combination `Σ c_i B_i(x)`.
    pub fn eval(&self, spec: &BasisSpec, x: f64) -> Result<f64> {
        Ok(spec
            .eval(x)?
            .iter()
            .zip(&self.coefficients)
            .map(|(b, c)| b * c)
            .sum())
    }
}

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Argument(format!("function is not finite at x = {x}")))
    }
}

fn finish<F: Fn(f64) -> f64>(f: &F, spec: &BasisSpec, coefficients: Vec<f64>) -> Result<FitResult> {
    let mut fit = FitResult {
        coefficients,
        max_error: 0.0,
        l2_error: 0.0,
    };
    let map = spec.map();
    let grid = uniform_params(map.a(), map.b(), ERROR_GRID);
    let mut sq = 0.0;
    for &x in &grid {
        let e = (sample(f, x)? - fit.eval(spec, x)?).abs();
        fit.max_error = fit.max_error.max(e);
        sq += e * e;
    }
    fit.l2_error = (sq / grid.len() as f64).sqrt();
    Ok(fit)
}

/// Interpolates `f` at the maxima abscissae of the basis.
pub fn fit_collocation<F: Fn(f64) -> f64>(f: F, spec: &BasisSpec) -> Result<FitResult> {
    let n = spec.degree();
    if n > MAX_COLLOCATION_DEGREE {
        return Err(Error::Argument(format!(
            "collocation fit supports degree <= {MAX_COLLOCATION_DEGREE}, got {n}"
        )));
    }
    let nodes: Vec<f64> = spec.maxima().iter().map(|m| m.x_star).collect();
    let values = nodes
        .iter()
        .map(|&x| sample(&f, x))
        .collect::<Result<Vec<_>>>()?;
    let coll = spec.collocation_matrix(&nodes)?;
    if !coll.is_nonsingular() {
        return Err(Error::Solve(format!(
            "collocation matrix is numerically singular (cond {:e})",
            coll.condition_number()
        )));
    }
    let m = coll.into_matrix();
    let rhs = DVector::from_vec(values.clone());
    let c = m
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Solve("LU factorization failed".into()))?;
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let residual = (&m * &c - &rhs).amax();
    if residual > 1e-9 * scale {
        return Err(Error::Solve(format!(
            "node residual {residual:e} exceeds tolerance"
        )));
    }
    finish(&f, spec, c.iter().copied().collect())
}

/// Least-squares fit of `f` sampled at `m` uniform points.
pub fn fit_least_squares<F: Fn(f64) -> f64>(f: F, spec: &BasisSpec, m: usize) -> Result<FitResult> {
    let cols = spec.degree() + 1;
    if m < cols {
        return Err(Error::Argument(format!(
            "least squares needs at least {cols} samples, got {m}"
        )));
    }
    let map = spec.map();
    let xs = uniform_params(map.a(), map.b(), m);
    let mut a = DMatrix::zeros(m, cols);
    let mut y = DVector::zeros(m);
    for (r, &x) in xs.iter().enumerate() {
        for (i, v) in spec.eval(x)?.into_iter().enumerate() {
            a[(r, i)] = v;
        }
        y[r] = sample(&f, x)?;
    }
    let sv = a.singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if smin.partial_cmp(&(RANK_TOL * smax)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Solve(format!(
            "design matrix is rank deficient (sigma_min {smin:e}, sigma_max {smax:e})"
        )));
    }
    let cond = smax / smin;
    let c = if cond <= NORMAL_EQUATIONS_MAX_COND {
        let at = a.transpose();
        (&at * &a)
            .cholesky()
            .ok_or_else(|| Error::Solve("normal equations are not positive definite".into()))?
            .solve(&(&at * &y))
    } else {
        let qr = a.qr();
        let qty = qr.q().transpose() * &y;
        qr.r()
            .solve_upper_triangular(&qty)
            .ok_or_else(|| Error::Solve("triangular factor is singular".into()))?
    };
    finish(&f, spec, c.iter().copied().collect())
}
