use thiserror::Error;

/// Errors produced anywhere in the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field size {p}^{degree} is out of range")]
    FieldTooLarge { p: u32, degree: usize },
    #[error("no embedding of GF({p}^{from}) into GF({p}^{to})")]
    NoEmbedding { p: u32, from: usize, to: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("function has a pole at the place")]
    PoleAtPlace,
    #[error("Newton polygon needs at least two finite points")]
    DegeneratePolygon,
    #[error("refinement did not terminate within depth {0}")]
    DepthExceeded(usize),
    #[error("polynomial is inseparable in y")]
    Inseparable,
    #[error("polynomial is not squarefree in y over the rational function field")]
    NotSquarefree,
    #[error("power series precision exhausted at {0} terms")]
    PrecisionExhausted(usize),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("genus cap {0} too small for the L-polynomial reconstruction")]
    CapTooSmall(usize),
    #[error("constant field is larger than the base field (place degrees share factor {0})")]
    NotAbsolutelyIrreducible(usize),
    #[error("oracle genus inconsistent with different bounds: {0}")]
    InconsistentOracle(String),
    #[error("Abhyankar's lemma needs a tame side: e1={e1}, e2={e2} both divisible by p={p}")]
    BothWild { e1: u64, e2: u64, p: u64 },
    #[error("invalid hypotheses: {0}")]
    InvalidHypotheses(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("cannot identify place across sides: {0}")]
    IdentificationFailed(String),
    #[error("parse error at offset {offset}: expected one of {}", expected.join(", "))]
    Parse { offset: usize, expected: Vec<String> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
