use num_bigint::BigInt;
use thiserror::Error;

use crate::spline::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplineError {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: BigInt, m: BigInt },

    #[error("x = {y} (mod {a}), x = 0 (mod {b}) has no solution: gcd({a}, {b}) does not divide {y}")]
    NoSolution { y: BigInt, a: BigInt, b: BigInt },

    #[error("expected {expected} entries, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),

    #[error("label of edge e_{edge} must be positive, got {label}")]
    NonPositiveLabel { edge: usize, label: BigInt },

    #[error("edge e_{edge} ({u}, {v}) is invalid on {vertices} vertices")]
    InvalidEdge {
        edge: usize,
        u: usize,
        v: usize,
        vertices: usize,
    },

    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("King basis needs coprime last labels, but gcd({left}, {right}) = {gcd}")]
    KingPrecondition {
        left: BigInt,
        right: BigInt,
        gcd: BigInt,
    },

    #[error("candidate {index} is malformed: {reason}")]
    MalformedBasis { index: usize, reason: String },

    #[error("not a spline: {} violated edge(s)", .0.len())]
    NotASpline(Vec<Violation>),

    #[error("not in span: entry {position} ({value}) is not a multiple of leading entry {leading} of basis element {index}")]
    NotInSpan {
        index: usize,
        position: usize,
        value: BigInt,
        leading: BigInt,
    },

    #[error("{what} = {numerator}/{denominator} is not an integer")]
    NonIntegral {
        what: &'static str,
        numerator: BigInt,
        denominator: BigInt,
    },

    #[error("operation needs a {expected}-cycle, got {found} vertices")]
    CycleLength { expected: usize, found: usize },

    #[error("search exceeded its budget: {0}")]
    Budget(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, SplineError>;
