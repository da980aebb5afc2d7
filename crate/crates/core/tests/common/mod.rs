// SPDX-License-Identifier: Apache-2.0

//! Independent numerical oracles shared by the integration tests.

#![allow(dead_code)]

use alphabezier::{Alpha, BasisSpec, HomographyMap};

/// Finite and infinite indices exercised across the suites.
pub const ALPHA_POOL: [f64; 6] = [-5.0, -1.0, 2.0, 5.0, 1e6, f64::INFINITY];

/// Indices used for figures and the preset sweeps.
pub const FIGURE_ALPHAS: [f64; 4] = [-1.0, 2.0, 5.0, f64::INFINITY];

pub fn spec(n: usize, a: f64, b: f64, alpha: f64) -> BasisSpec {
    BasisSpec::new(n, HomographyMap::new(a, b, Alpha::from(alpha)).unwrap()).unwrap()
}

pub fn unit_spec(n: usize, alpha: f64) -> BasisSpec {
    spec(n, 0.0, 1.0, alpha)
}

/// Symmetric difference quotient for `f'`.
pub fn central_diff1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Symmetric second difference quotient for `f''`.
pub fn central_diff2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    [lo, mid, hi]
        .into_iter()
        .max_by(|p, q| f(*p).total_cmp(&f(*q)))
        .unwrap()
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) == (flo <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `C(n, i)` by exact integer arithmetic.
pub fn binomial_exact(n: u64, i: u64) -> f64 {
    let mut c: u128 = 1;
    for k in 0..i {
        c = c * u128::from(n - k) / u128::from(k + 1);
    }
    c as f64
}
