//! Crate-wide error type.

use thiserror::Error;

use crate::poly::CliffordPolynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("dimension must be between 1 and {max}, got {n}")]
    InvalidDimension { n: usize, max: usize },

    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("generator index {index} out of range 1..={n}")]
    BladeIndexOutOfRange { index: usize, n: usize },

    #[error("blade indices must be strictly increasing, got {0:?}")]
    BladeNotIncreasing(Vec<usize>),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("evaluation point has length {actual}, expected {expected}")]
    PointLengthMismatch { expected: usize, actual: usize },

    #[error("multi-index has length {actual}, expected {expected}")]
    MultiIndexLengthMismatch { expected: usize, actual: usize },

    #[error("step h must be nonzero for the {family} family")]
    ZeroStep { family: &'static str },

    #[error("step h is required for the {family} family")]
    MissingStep { family: &'static str },

    #[error("scale parameter must be positive, got {0}")]
    ScaleNotPositive(String),

    #[error("operator is not unitriangular on the degree grading; residual {0}")]
    NotDegreeGraded(Box<CliffordPolynomial>),

    #[error("operator does not lower degree; exponential residual {0}")]
    NotLocallyNilpotent(Box<CliffordPolynomial>),

    #[error("input is not polymonogenic of degree {k}: (D')^{k} f = {witness} != 0")]
    NotPolymonogenic {
        k: u32,
        witness: Box<CliffordPolynomial>,
    },

    #[error("component {index} is not monogenic: D' f_{index} = {witness} != 0")]
    ComponentNotMonogenic {
        index: usize,
        witness: Box<CliffordPolynomial>,
    },

    #[error("input is not harmonic: Delta' f = {witness} != 0")]
    NotHarmonic { witness: Box<CliffordPolynomial> },

    #[error("input is not concentrated in a single degree: found degrees {found:?}, expected {expected}")]
    NotEulerHomogeneous { expected: usize, found: Vec<usize> },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("{what} must be at least 1")]
    AtLeastOne { what: &'static str },

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),

    #[error("suite {suite:?} requires the {family} family")]
    SuiteFamilyMismatch {
        suite: &'static str,
        family: &'static str,
    },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
