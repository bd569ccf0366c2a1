//! Error types shared across the engine.

use thiserror::Error;

/// Failure to parse an expression; positions are byte offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("bad exponent at {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("zero denominator at {pos}")]
    ZeroDenominator { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different square-root contexts")]
    MismatchedContext,
}

/// Failures of the geometric pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("graphing function {which} has non-real coefficients")]
    ComplexGraph { which: &'static str },
    #[error("degenerate graph: the generator denominator {denominator} vanishes identically")]
    DegenerateGraph { denominator: String },
    #[error("not class II: {reason}")]
    NotClassII { reason: String, locus: Option<String> },
    #[error("consistency check '{check}' failed with residual {residual}")]
    Consistency { check: String, residual: String },
    #[error("{what} vanishes at the evaluation point")]
    VanishingValue { what: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
