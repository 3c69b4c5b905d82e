//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerics, model, otto, and sweep layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix that must be symmetric is not, beyond the 1e-12 tolerance.
    #[error("matrix not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {delta:.3e} exceeds 1e-12")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    /// A matrix that must be positive semidefinite has an eigenvalue below -1e-10.
    #[error("matrix not positive semidefinite: eigenvalue {eigenvalue:.6e} is below -1e-10")]
    NotPsd { eigenvalue: f64 },

    /// An exponent would overflow f64 (exp saturates near 709).
    #[error("exponent {arg:.6e} exceeds 700; rescale energy/temperature units (k_B = 1)")]
    ExpOverflow { arg: f64 },

    /// A scalar input violates its documented domain.
    #[error("invalid parameter {name} = {value}: requires {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A grid-point evaluation failed; carries the offending coordinates.
    #[error("evaluation failed at (x = {x}, y = {y}): {source}")]
    AtGridPoint {
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },

    /// Serialization of an empty table was requested.
    #[error("refusing to serialize an empty table")]
    EmptyTable,

    /// JSON serialization failure.
    #[error("json serialization failed: {0}")]
    Json(#[from] serde_json::Error),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
