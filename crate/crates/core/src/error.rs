// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// reproduce the offending call.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter fell outside the interval an operation is defined on.
    #[error("{what} = {value} lies outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// An object could not be built because its defining data is invalid.
    #[error("invalid construction: {0}")]
    Construction(String),

    /// A well-formed object was passed an argument it cannot accept.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The curve has a vanishing first derivative at the requested parameter.
    #[error("singular point at x = {x}: |B'(x)| = {speed:e}")]
    SingularPoint { x: f64, speed: f64 },

    /// A linear system could not be solved to the required accuracy.
    #[error("linear solve failed: {0}")]
    Solve(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
