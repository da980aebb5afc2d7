// SPDX-License-Identifier: Apache-2.0

//! Increasing homographies of `[a, b]` onto `[0, 1]`.
//!
//! Every strictly increasing homographic map `f` with `f(a) = 0` and
//! `f(b) = 1` has the form
//!
//! ```text
//!            α (x - a)
//! f_α(x) = -------------------     with  α < 0  or  α > 1,
//!           x + (α - 1) b - α a
//! ```
//!
//! and `α → ±∞` degenerates to the affine map `(x - a) / (b - a)`, which is
//! carried here as the explicit [`Alpha::Infinity`] variant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite indices closer than this to the forbidden band `[0, 1]` are rejected.
pub const ALPHA_MARGIN: f64 = 1e-9;

/// Relative slack (in units of `b - a`) within which out-of-range parameters
/// are clamped instead of rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Index of a homography: a finite value outside `[0, 1]`, or the classical
/// limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Infinity,
}

impl Alpha {
    /// Checks the index against the admissible range `α ≤ -ε` or `α ≥ 1 + ε`.
    pub fn validate(self) -> Result<Self> {
        match self {
            Alpha::Infinity => Ok(self),
            Alpha::Finite(v) if !v.is_finite() => Err(Error::Construction(format!(
                "alpha must be finite or the symbol inf, got {v}"
            ))),
            Alpha::Finite(v) if v <= -ALPHA_MARGIN || v >= 1.0 + ALPHA_MARGIN => Ok(self),
            Alpha::Finite(v) => Err(Error::Construction(format!(
                "alpha = {v} lies in the forbidden band [0, 1] (margin {ALPHA_MARGIN:e})"
            ))),
        }
    }

    /// The index `1 - α` that mirrors the basis under `x ↦ a + b - x`.
    pub fn mirrored(self) -> Self {
        match self {
            Alpha::Finite(v) => Alpha::Finite(1.0 - v),
            Alpha::Infinity => Alpha::Infinity,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Alpha::Infinity)
    }
}

impl From<f64> for Alpha {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            Alpha::Infinity
        } else {
            Alpha::Finite(v)
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(v) => write!(f, "{v}"),
            Alpha::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "∞" => return Ok(Alpha::Infinity),
            _ => {}
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Argument(format!("cannot parse alpha from {s:?}")))?;
        Alpha::Finite(v).validate()
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Finite(v) => serializer.serialize_f64(*v),
            Alpha::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Alpha::Finite(v).validate(),
            Raw::Str(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// The homography `f_α` on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomographyMap {
    a: f64,
    b: f64,
    alpha: Alpha,
}

impl HomographyMap {
    pub fn new(a: f64, b: f64, alpha: impl Into<Alpha>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::Construction(format!(
                "interval [{a}, {b}] must be finite with a < b"
            )));
        }
        let alpha = alpha.into().validate()?;
        Ok(Self { a, b, alpha })
    }

    /// `f_α` on the unit interval.
    pub fn unit(alpha: impl Into<Alpha>) -> Result<Self> {
        Self::new(0.0, 1.0, alpha)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// The map with index `1 - α` on the same interval.
    pub fn mirrored(&self) -> Self {
        let m = Self {
            alpha: self.alpha.mirrored(),
            ..*self
        };
        debug_assert!(m.alpha.validate().is_ok());
        m
    }

    /// Clamps `x` into `[a, b]` when it is within [`DOMAIN_SLACK`].
    pub fn check_param(&self, x: f64) -> Result<f64> {
        let slack = DOMAIN_SLACK * self.width();
        if x >= self.a && x <= self.b {
            Ok(x)
        } else if x >= self.a - slack && x < self.a {
            Ok(self.a)
        } else if x > self.b && x <= self.b + slack {
            Ok(self.b)
        } else {
            Err(Error::Domain {
                what: "x",
                value: x,
                lo: self.a,
                hi: self.b,
            })
        }
    }

    /// `D(x) = (x - a) + (α - 1)(b - a)`; `None` for the classical limit.
    pub fn denominator(&self, x: f64) -> Option<f64> {
        match self.alpha {
            Alpha::Finite(al) => Some((x - self.a) + (al - 1.0) * self.width()),
            Alpha::Infinity => None,
        }
    }

    /// `f_α(x)`. Exactly `0` at `a` and `1` at `b`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_pair(x).map(|(w, _)| w)
    }

    /// `(f_α(x), 1 - f_α(x))`, with the complement computed from its own
    /// closed form `(α - 1)(b - x) / D(x)` rather than by subtraction.
    pub fn eval_pair(&self, x: f64) -> Result<(f64, f64)> {
        let x = self.check_param(x)?;
        if x == self.a {
            return Ok((0.0, 1.0));
        }
        if x == self.b {
            return Ok((1.0, 0.0));
        }
        Ok(match self.alpha {
            Alpha::Finite(al) => {
                let d = (x - self.a) + (al - 1.0) * self.width();
                (al * (x - self.a) / d, (al - 1.0) * (self.b - x) / d)
            }
            Alpha::Infinity => {
                let h = self.width();
                ((x - self.a) / h, (self.b - x) / h)
            }
        })
    }

    /// `f_α⁻¹(w)` in closed form: `x = a + w(α - 1)(b - a) / (α - w)`.
    pub fn eval_inverse(&self, w: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Domain {
                what: "w",
                value: w,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if w == 0.0 {
            return Ok(self.a);
        }
        if w == 1.0 {
            return Ok(self.b);
        }
        let x = match self.alpha {
            Alpha::Finite(al) => self.a + w * (al - 1.0) * self.width() / (al - w),
            Alpha::Infinity => self.a + w * self.width(),
        };
        Ok(x.clamp(self.a, self.b))
    }

    /// `dw/dx = α(α - 1)(b - a) / D(x)²`.
    pub fn deriv1(&self, x: f64) -> Result<f64> {
        let x = self.check_param(x)?;
        Ok(match self.alpha {
            Alpha::Finite(al) => {
                let d = (x - self.a) + (al - 1.0) * self.width();
                al * (al - 1.0) * self.width() / (d * d)
            }
            Alpha::Infinity => 1.0 / self.width(),
        })
    }

    /// `d²w/dx² = -2α(α - 1)(b - a) / D(x)³`.
    pub fn deriv2(&self, x: f64) -> Result<f64> {
        let x = self.check_param(x)?;
        Ok(match self.alpha {
            Alpha::Finite(al) => {
                let d = (x - self.a) + (al - 1.0) * self.width();
                -2.0 * al * (al - 1.0) * self.width() / (d * d * d)
            }
            Alpha::Infinity => 0.0,
        })
    }

    /// Builds the left (`u`) or right (`v`) reparametrization splitting at `c`.
    pub fn reparam(&self, c: f64, kind: ReparamKind) -> Result<SegmentReparam> {
        SegmentReparam::new(*self, c, kind)
    }
}

/// Which half of a split interval a [`SegmentReparam`] targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReparamKind {
    /// `u : [a, b] → [a, c]` with `f ∘ u = f(c)·f`.
    LeftU,
    /// `v : [a, b] → [c, b]` with `f ∘ v = 1 - (1 - f(c))(1 - f)`.
    RightV,
}

/// Increasing bijection of `[a, b]` onto one side of a split point `c`,
/// chosen so that subdivided curves keep the same index and interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentReparam {
    kind: ReparamKind,
    c: f64,
    parent: HomographyMap,
    wc: f64,
}

impl SegmentReparam {
    pub fn new(parent: HomographyMap, c: f64, kind: ReparamKind) -> Result<Self> {
        if !(c > parent.a && c < parent.b) {
            return Err(Error::Domain {
                what: "c",
                value: c,
                lo: parent.a,
                hi: parent.b,
            });
        }
        let wc = parent.eval(c)?;
        Ok(Self {
            kind,
            c,
            parent,
            wc,
        })
    }

    pub fn kind(&self) -> ReparamKind {
        self.kind
    }

    pub fn split(&self) -> f64 {
        self.c
    }

    pub fn parent(&self) -> &HomographyMap {
        &self.parent
    }

    /// `u(t)` or `v(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let (w, cw) = self.parent.eval_pair(t)?;
        match self.kind {
            ReparamKind::LeftU => {
                if w == 1.0 {
                    return Ok(self.c);
                }
                self.parent.eval_inverse(self.wc * w)
            }
            ReparamKind::RightV => {
                if w == 0.0 {
                    return Ok(self.c);
                }
                let target = 1.0 - (1.0 - self.wc) * cw;
                self.parent.eval_inverse(target)
            }
        }
    }
}
