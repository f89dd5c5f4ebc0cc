use alloc::string::String;

use crate::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: ({left_vars} vars, |x{left_abs}|) vs ({right_vars} vars, |x{right_abs}|)")]
    RingMismatch {
        left_vars: usize,
        left_abs: usize,
        right_vars: usize,
        right_abs: usize,
    },
    #[error("abs variable x{abs_var} out of range for {num_vars} variables")]
    AbsVarOutOfRange { num_vars: usize, abs_var: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("tensor is not homogeneous")]
    NotHomogeneous,
    #[error("tensor degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("filtration level {k} out of range 0..={n}")]
    FiltrationOutOfRange { k: usize, n: usize },
    #[error("clifford scale must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("anticommutator relation violated for generator indices {i}, {j}")]
    RelationViolated { i: usize, j: usize },
    #[error("expected {expected} generator images, got {actual}")]
    WrongImageCount { expected: usize, actual: usize },
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("duplicate chart id `{0}`")]
    DuplicateChart(String),
    #[error("point with {actual} coordinates does not lie in the {expected}-dimensional base of chart `{chart}`")]
    PointOutsideBase {
        chart: String,
        expected: usize,
        actual: usize,
    },
    #[error("conflicting identification at a point of chart `{chart}`: {reason}")]
    ConflictingIdentification { chart: String, reason: String },
    #[error("dual rank {rank} exceeds fibre dimension {fibre_dim} on chart `{chart}`")]
    DualRankTooLarge {
        chart: String,
        rank: usize,
        fibre_dim: usize,
    },
    #[error("bundles do not share a base: {0}")]
    BaseMismatch(String),
    #[error("chart `{0}` carries no pseudo-metric")]
    MissingMetric(String),
    #[error("dual of chart `{0}` is undefined: its dual dimension is not constant")]
    NonConstantDual(String),
    #[error("dual gluing obstructed at locus point {locus_index} of gluing {gluing}: {reason}")]
    DualGluingObstructed {
        gluing: usize,
        locus_index: usize,
        reason: String,
    },
    #[error("pseudo-metrics are incompatible along gluing {gluing}")]
    IncompatibleMetrics { gluing: usize },
    #[error("standard action needs the module convention (scale 1), got scale {0}; with another scale c(v)^2 = -q(v,v) contradicts the algebra relation")]
    ConventionConflict(Rational),
    #[error("Clifford actions are incompatible along the gluing")]
    IncompatibleActions,
}
