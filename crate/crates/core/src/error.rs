use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero input")]
    ZeroInput,

    #[error("constant polynomial")]
    ConstantPolynomial,

    #[error("no feasible sets")]
    NoFeasibleSets,

    #[error("symmetric exchange fails at ({f1}, {f2}, {e})")]
    ExchangeFails { f1: String, f2: String, e: String },

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("ground set has {0} elements; at most 30 are supported")]
    GroundTooLarge(usize),

    #[error("ground sets not disjoint")]
    NotDisjoint,

    #[error("delcon engine requires an even delta-matroid")]
    NotEven,

    #[error("relation check requires even widths")]
    OddWidth,

    #[error("not a delta-matroid Tutte polynomial: {0}")]
    NotTuttePolynomial(String),

    #[error("criterion undefined: {0}")]
    CriterionUndefined(String),

    #[error("exhaustive bound exceeded; use samplers")]
    BoundExceeded,

    #[error("invalid ribbon graph: {0}")]
    InvalidMap(String),

    #[error("unknown edge {0:?}")]
    UnknownEdge(String),

    #[error("join vertex must be non-isolated")]
    IsolatedJoinVertex,

    #[error("json: {0}")]
    Json(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
