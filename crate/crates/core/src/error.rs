use thiserror::Error;

use crate::monomial::BiDegree;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not bihomogeneous: {0} and {1} disagree")]
    NotBihomogeneous(BiDegree, BiDegree),
    #[error("zero polynomial has no bidegree")]
    ZeroPolynomial,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{name}' at byte {offset} (expected one of s, u, t, v)")]
    UnknownVariable { offset: usize, name: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("generator {name}: declared bidegree {declared} but computed {computed}")]
    BidegreeMismatch {
        name: String,
        declared: BiDegree,
        computed: BiDegree,
    },
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("module elements live in different ambient free modules")]
    AmbientMismatch,
    #[error("cannot saturate by the zero element")]
    ZeroElement,
    #[error("Hilbert function did not stabilize before corner {0}")]
    NoStabilization(BiDegree),
    #[error("base locus is not zero-dimensional")]
    NotZeroDimensional,
    #[error("point {0} is not a base point")]
    PointNotOnLocus(String),
    #[error("base locus has non-rational points; only the global LCI test is available")]
    RequiresRationalPoints,
    #[error("expected exactly 3 generators, got {0}")]
    WrongGeneratorCount(usize),
    #[error("vector is not a syzygy of the generators")]
    NotASyzygy,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
