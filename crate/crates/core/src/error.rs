use thiserror::Error;

/// Errors raised by curve construction, path handling and the capacity engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("index k must be at least 1")]
    InvalidK,
    #[error("vertex {index} is invalid: {reason}")]
    InvalidVertex { index: usize, reason: String },
    #[error("polar angles are not strictly increasing at vertex {index}")]
    NonMonotoneAngles { index: usize },
    #[error("curve violates declared shape class {declared}")]
    ShapeClassViolation { declared: String },
    #[error("zero normal vector")]
    ZeroVector,
    #[error("operation requires a complete curve (angle range [0, pi/2])")]
    IncompleteCurve,
    #[error("sub-arc [{start}, {end}] is outside the curve's angle range")]
    ArcOutOfRange { start: f64, end: f64 },
    #[error("mode {mode} is not admitted by the curve(s) involved")]
    ModeMismatch { mode: String },
    #[error("curve must be complete and convex or concave")]
    NotCompleteOrNotStrict,
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
    #[error("scale must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("search box {box_bound} is too small: an optimum touches its boundary")]
    BoxTooSmall { box_bound: i64 },
    #[error(
        "search budget exceeded: {needed_cells} table cells needed, budget {budget}; \
         certified upper bound so far {upper_bound:?}"
    )]
    SearchBudgetExceeded { needed_cells: u64, budget: u64, upper_bound: Option<f64> },
    #[error("exact arithmetic overflowed the 64-bit search representation")]
    ArithmeticOverflow,
    #[error("support argmax for normal ({0}, {1}) is a whole edge")]
    UnresolvedFace(i64, i64),
    #[error("optimal path edge with normal ({0}, {1}) has a face as support set")]
    FaceAmbiguity(i64, i64),
    #[error("no optimal path available")]
    NoOptimum,
    #[error("random curve generation failed after {attempts} attempts")]
    GenerationFailed { attempts: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
