use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Ring axiom names reported by table validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Associativity,
    LeftDistributivity,
    RightDistributivity,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axiom::Associativity => "associativity a(bc) = (ab)c",
            Axiom::LeftDistributivity => "left distributivity a(b+c) = ab+ac",
            Axiom::RightDistributivity => "right distributivity (a+b)c = ac+bc",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus list: {0}")]
    InvalidModuli(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("table entry {value} at ({row}, {col}) is outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("{axiom} fails at (a, b, c) = ({}, {}, {})", .witness.0, .witness.1, .witness.2)]
    AxiomViolation {
        axiom: Axiom,
        witness: (usize, usize, usize),
    },
    #[error("order {order} exceeds the {what} cap of {cap}")]
    SizeCapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("ring is commutative; its commuting graph has no vertices")]
    CommutativeRing,
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid clique union: {0}")]
    InvalidCliqueUnion(String),
    #[error("matrix dimension {n} exceeds the exact-spectrum cap of {cap}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("characteristic polynomial coefficient is not an integer (step {step})")]
    NonIntegralCoefficient { step: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(String),
    #[error("unknown theorem id '{0}'")]
    UnknownTheorem(String),
    #[error("cannot parse ring spec '{spec}': {reason}")]
    RingSpec { spec: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
