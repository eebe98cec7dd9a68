use std::fmt;

use crate::exactla::Q;

/// Which argument of a bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

fn show(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("not adjoint: {map} differs on basis pair ({left}, {right})")]
    NotAdjoint { map: &'static str, left: usize, right: usize },

    #[error("not a generalized inverse pair: {identity} fails on basis vector {basis}")]
    NotGeneralizedInverse { identity: &'static str, basis: usize },

    #[error("form does not descend: nonzero on killed {side} vector {}", show(.witness))]
    DoesNotDescend { side: Side, witness: Vec<Q> },

    #[error("{map} does not descend: the relator {} is not killed", show(.witness))]
    MapDoesNotDescend { map: String, witness: Vec<Q> },

    #[error("{map} is not bijective: rank {rank} on a space of dimension {dim}")]
    NotBijective { map: String, rank: usize, dim: usize },

    #[error("not a groupoid: {axiom} (witness: {witness})")]
    NotAGroupoid { axiom: String, witness: String },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("solution not unique: {0}")]
    NotUnique(String),

    #[error("functional is not faithful: {0}")]
    NotFaithful(String),

    #[error("functional is not {side}-invariant on basis vector {basis}")]
    NotInvariant { side: Side, basis: usize },

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("spanning failure: {0}")]
    SpanningFailure(String),

    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
