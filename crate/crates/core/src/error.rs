use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("carrier is empty")]
    EmptyCarrier,

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}` referenced")]
    UnknownElementReference(String),

    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),

    #[error("unary operation is not defined on `{0}`")]
    IncompleteOperation(String),

    #[error("carrier has {size} elements, limit is {cap}")]
    CarrierTooLarge { size: usize, cap: usize },

    #[error(
        "carrier has {size} elements, direct triple enumeration is limited to {cap}; \
         use the reduction method or raise --triple-cap"
    )]
    TripleCapExceeded { size: usize, cap: usize },

    #[error("invalid carrier limit `{0}` (must be between 1 and 64)")]
    InvalidCarrierLimit(String),

    #[error("poset has no least or no greatest element")]
    UnboundedPoset,

    #[error("poset is not a lattice: `{0}` and `{1}` lack a join or meet")]
    NotALattice(String, String),

    #[error("unary operation is not a complementation")]
    NotComplemented,

    #[error("enumeration size {size} outside 1..={cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("no bundled fixture named `{0}`")]
    UnknownFixture(String),

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("malformed claim `{0}`, expected `premise=>conclusion`")]
    MalformedClaim(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
