//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the closed-form geometry layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("{op}: {name} = {value} is outside the domain ({constraint})")]
    Domain {
        op: &'static str,
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The real length is not below the tube-existence threshold W(1), so no
    /// maximal solid tube is defined for the geodesic.
    #[error("real length {ell} is not below the tube-existence threshold {threshold}")]
    OutOfMeyerhoffRange { ell: f64, threshold: f64 },
}

impl GeometryError {
    pub(crate) fn domain(
        op: &'static str,
        name: &'static str,
        value: f64,
        constraint: &'static str,
    ) -> Self {
        GeometryError::Domain {
            op,
            name,
            value,
            constraint,
        }
    }
}

/// Errors raised while parsing or validating spectrum data and reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    /// The input is not syntactically well formed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The input parses but does not match the expected schema.
    #[error("schema error: {message}")]
    Schema { message: String },

    /// A field carries a value that violates its invariant.
    #[error("invalid value in {context}: {message}")]
    Value { context: String, message: String },
}

/// Errors raised by the OBJ reader.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObjError {
    #[error("obj parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
