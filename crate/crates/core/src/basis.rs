// SPDX-License-Identifier: Apache-2.0

//! The rational Bernstein basis of index `α`:
//!
//! ```text
//! B_i(x) = C(n, i) · w^i · (1 - w)^(n - i),    w = f_α(x),   i = 0..=n.
//! ```
//!
//! Each `B_i` is a rational function of degree `(n, n)` in `x`. All the
//! classical algebra (partition of unity, recursion, degree raising) carries
//! over because it only depends on `w`; the derivatives pick up the chain rule
//! through `f_α`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homography::{Alpha, HomographyMap};

/// Largest supported degree. Binomials are accumulated in `f64`.
pub const MAX_DEGREE: usize = 60;

/// Relative threshold on the smallest singular value of a collocation matrix.
pub const COLLOCATION_RANK_TOL: f64 = 1e-10;

/// A basis family: degree plus homography.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisSpec {
    n: usize,
    map: HomographyMap,
}

/// `max_x B_i(x)`, attained at `x_star` where `f_α(x_star) = i / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxPoint {
    pub i: usize,
    pub x_star: f64,
    pub m_star: f64,
}

/// Closed-form first derivatives of the basis at the interval ends. Only
/// `B_0, B_1` move at `a` and only `B_{n-1}, B_n` move at `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointDerivatives {
    /// `(B_0'(a), B_1'(a))`.
    pub at_a: (f64, f64),
    /// `(B_{n-1}'(b), B_n'(b))`.
    pub at_b: (f64, f64),
}

/// Binomial coefficients `C(n, 0..=n)` by the multiplicative recurrence in
/// exact integer arithmetic, each correctly rounded to `f64`.
pub fn binomials(n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n + 1);
    let mut v: u128 = 1;
    c.push(1.0);
    for i in 0..n {
        v = v * (n - i) as u128 / (i + 1) as u128;
        c.push(v as f64);
    }
    c
}

/// `[1, x, x², …, x^n]` by repeated multiplication.
fn powers(x: f64, n: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    let mut v = 1.0;
    p.push(v);
    for _ in 0..n {
        v *= x;
        p.push(v);
    }
    p
}

/// Classical Bernstein values of degree `n` at `(w, 1 - w)`.
pub fn bernstein_from_w(n: usize, w: f64, cw: f64) -> Vec<f64> {
    let c = binomials(n);
    let pw = powers(w, n);
    let pc = powers(cw, n);
    (0..=n).map(|i| c[i] * pw[i] * pc[n - i]).collect()
}

impl BasisSpec {
    pub fn new(n: usize, map: HomographyMap) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::Argument(format!(
                "degree {n} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        Ok(Self { n, map })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &HomographyMap {
        &self.map
    }

    pub fn with_degree(&self, n: usize) -> Result<Self> {
        Self::new(n, self.map)
    }

    /// Same degree and interval with index `1 - α`.
    pub fn mirrored(&self) -> Self {
        Self {
            n: self.n,
            map: self.map.mirrored(),
        }
    }

    /// `[B_0(x), …, B_n(x)]` from the closed form.
    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        let (w, cw) = self.map.eval_pair(x)?;
        Ok(bernstein_from_w(self.n, w, cw))
    }

    /// Same values as [`eval`](Self::eval), built by the degree recursion
    /// `B_i^{k+1} = w·B_{i-1}^k + (1 - w)·B_i^k` from `B_0^0 = 1`.
    pub fn eval_recursive(&self, x: f64) -> Result<Vec<f64>> {
        let (w, cw) = self.map.eval_pair(x)?;
        let mut row = vec![0.0; self.n + 1];
        row[0] = 1.0;
        for k in 1..=self.n {
            for i in (0..=k).rev() {
                let left = if i > 0 { row[i - 1] } else { 0.0 };
                let right = if i < k { row[i] } else { 0.0 };
                row[i] = w * left + cw * right;
            }
        }
        Ok(row)
    }

    /// First (`order = 1`) or second (`order = 2`) derivatives of every
    /// basis function with respect to `x`.
    pub fn eval_deriv(&self, x: f64, order: u8) -> Result<Vec<f64>> {
        match order {
            1 => self.deriv1(x),
            2 => self.deriv2(x),
            _ => Err(Error::Argument(format!(
                "derivative order must be 1 or 2, got {order}"
            ))),
        }
    }

    fn deriv1(&self, x: f64) -> Result<Vec<f64>> {
        let n = self.n;
        let (w, cw) = self.map.eval_pair(x)?;
        let dw = self.map.deriv1(x)?;
        if n == 0 {
            return Ok(vec![0.0]);
        }
        let c = binomials(n);
        let pw = powers(w, n);
        let pc = powers(cw, n);
        let nf = n as f64;
        let out = (0..=n)
            .map(|i| {
                if i == 0 {
                    -nf * dw * pc[n - 1]
                } else if i == n {
                    nf * dw * pw[n - 1]
                } else {
                    // i - n·w, written against the exact complement
                    let lead = i as f64 * cw - (n - i) as f64 * w;
                    lead * dw * c[i] * pw[i - 1] * pc[n - i - 1]
                }
            })
            .collect();
        Ok(out)
    }

    /// Chain rule in `w`: `B'' = (d²B/dw²)·w'² + (dB/dw)·w''`, with the `w`
    /// derivatives taken as differences of lower-degree Bernstein values.
    fn deriv2(&self, x: f64) -> Result<Vec<f64>> {
        let n = self.n;
        let (w, cw) = self.map.eval_pair(x)?;
        let dw = self.map.deriv1(x)?;
        let ddw = self.map.deriv2(x)?;
        let nf = n as f64;
        let lower1 = if n >= 1 {
            bernstein_from_w(n - 1, w, cw)
        } else {
            Vec::new()
        };
        let lower2 = if n >= 2 {
            bernstein_from_w(n - 2, w, cw)
        } else {
            Vec::new()
        };
        let at = |v: &[f64], k: isize| -> f64 {
            if k < 0 {
                0.0
            } else {
                v.get(k as usize).copied().unwrap_or(0.0)
            }
        };
        let out = (0..=n as isize)
            .map(|i| {
                let d_w = if n >= 1 {
                    nf * (at(&lower1, i - 1) - at(&lower1, i))
                } else {
                    0.0
                };
                let d_ww = if n >= 2 {
                    nf * (nf - 1.0)
                        * (at(&lower2, i - 2) - 2.0 * at(&lower2, i - 1) + at(&lower2, i))
                } else {
                    0.0
                };
                d_ww * dw * dw + d_w * ddw
            })
            .collect();
        Ok(out)
    }

    /// Closed-form endpoint derivatives. With `h = b - a`:
    /// `B_0'(a) = -B_1'(a) = -n·α / ((α - 1)h)` and
    /// `B_n'(b) = -B_{n-1}'(b) = n(α - 1) / (α h)`; both scalars reduce to
    /// `n / h` for the classical basis.
    pub fn endpoint_derivatives(&self) -> Result<EndpointDerivatives> {
        if self.n == 0 {
            return Err(Error::Argument(
                "endpoint derivatives need degree >= 1".into(),
            ));
        }
        let nf = self.n as f64;
        let h = self.map.width();
        let (start, end) = match self.map.alpha() {
            Alpha::Finite(al) => (nf * al / ((al - 1.0) * h), nf * (al - 1.0) / (al * h)),
            Alpha::Infinity => (nf / h, nf / h),
        };
        Ok(EndpointDerivatives {
            at_a: (-start, start),
            at_b: (-end, end),
        })
    }

    /// Position and height of the unique maximum of every `B_i`.
    pub fn maxima(&self) -> Vec<MaxPoint> {
        let n = self.n;
        if n == 0 {
            return vec![MaxPoint {
                i: 0,
                x_star: self.map.a(),
                m_star: 1.0,
            }];
        }
        let c = binomials(n);
        let (a, b) = (self.map.a(), self.map.b());
        let nf = n as f64;
        (0..=n)
            .map(|i| {
                let x_star = if i == 0 {
                    a
                } else if i == n {
                    b
                } else {
                    let fi = i as f64;
                    match self.map.alpha() {
                        Alpha::Finite(al) => a + fi * (al - 1.0) * (b - a) / (nf * al - fi),
                        Alpha::Infinity => a + fi / nf * (b - a),
                    }
                };
                let p = powers(i as f64 / nf, i)[i];
                let q = powers((n - i) as f64 / nf, n - i)[n - i];
                MaxPoint {
                    i,
                    x_star,
                    m_star: c[i] * p * q,
                }
            })
            .collect()
    }

    /// Largest absolute residual of the two degree-raising identities
    /// `(1 - w)B_i^n = (n+1-i)/(n+1)·B_i^{n+1}` and
    /// `w·B_i^n = (i+1)/(n+1)·B_{i+1}^{n+1}` over `i = 0..=n`.
    pub fn elevation_residual(&self, x: f64) -> Result<f64> {
        let (w, cw) = self.map.eval_pair(x)?;
        let lo = self.eval(x)?;
        let hi = self.with_degree(self.n + 1)?.eval(x)?;
        let m = (self.n + 1) as f64;
        let mut worst: f64 = 0.0;
        for (i, &bi) in lo.iter().enumerate() {
            let r1 = cw * bi - (m - i as f64) / m * hi[i];
            let r2 = w * bi - (i as f64 + 1.0) / m * hi[i + 1];
            worst = worst.max(r1.abs()).max(r2.abs());
        }
        Ok(worst)
    }

    /// Collocation matrix `M[j][i] = B_i(x_j)` at `n + 1` strictly
    /// increasing nodes inside `[a, b]`.
    pub fn collocation_matrix(&self, xs: &[f64]) -> Result<Collocation> {
        let size = self.n + 1;
        if xs.len() != size {
            return Err(Error::Argument(format!(
                "collocation needs {size} nodes, got {}",
                xs.len()
            )));
        }
        if xs.windows(2).any(|p| p[0].partial_cmp(&p[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::Argument(
                "collocation nodes must be strictly increasing".into(),
            ));
        }
        let (a, b) = (self.map.a(), self.map.b());
        if let Some(&bad) = xs.iter().find(|&&x| !(a..=b).contains(&x)) {
            return Err(Error::Argument(format!(
                "collocation node {bad} lies outside [{a}, {b}]"
            )));
        }
        let mut m = DMatrix::zeros(size, size);
        for (j, &x) in xs.iter().enumerate() {
            for (i, v) in self.eval(x)?.into_iter().enumerate() {
                m[(j, i)] = v;
            }
        }
        Ok(Collocation::new(m))
    }
}

/// A square collocation matrix with its singular-value diagnostics.
#[derive(Debug, Clone)]
pub struct Collocation {
    matrix: DMatrix<f64>,
    sigma_min: f64,
    sigma_max: f64,
}

impl Collocation {
    fn new(matrix: DMatrix<f64>) -> Self {
        let sv = matrix.singular_values();
        let sigma_min = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let sigma_max = sv.iter().copied().fold(0.0, f64::max);
        Self {
            matrix,
            sigma_min,
            sigma_max,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn min_singular_value(&self) -> f64 {
        self.sigma_min
    }

    pub fn condition_number(&self) -> f64 {
        self.sigma_max / self.sigma_min
    }

    /// `σ_min > 1e-10·‖M‖₂`.
    pub fn is_nonsingular(&self) -> bool {
        self.sigma_min > COLLOCATION_RANK_TOL * self.sigma_max
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}
