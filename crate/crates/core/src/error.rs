use thiserror::Error;

use crate::closure::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table shape: {0}")]
    TableShape(String),

    #[error("table `{op}` entry at {position:?} is {value}, outside carrier of size {size}")]
    OutOfRange {
        op: String,
        position: Vec<usize>,
        value: usize,
        size: usize,
    },

    #[error("axiom `{axiom}` fails at assignment {assignment:?}")]
    AxiomViolation {
        axiom: String,
        assignment: Vec<usize>,
    },

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("operation `{op}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("signatures differ")]
    SignatureMismatch,

    #[error("congruences live on different fibres (carrier sizes {0} and {1})")]
    FibreMismatch(usize, usize),

    #[error("invalid congruence: {0}")]
    InvalidCongruence(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("morphism is not surjective, so not in the class of quotients")]
    NotInE,

    #[error("operator is not extensive: {0}")]
    NotExtensive(Box<Witness>),

    #[error("operator is not natural: {0}")]
    NotNatural(Box<Witness>),

    #[error("operator is not idempotent: {0}")]
    NotIdempotent(Box<Witness>),

    #[error("operator is not cohereditary: {0}")]
    NotCohereditary(Box<Witness>),

    #[error("operator value is not a congruence: {0}")]
    NotCongruence(Box<Witness>),

    #[error("precondition failed: {0}")]
    PreconditionFailed(Box<Witness>),

    #[error("not a reflection: {0}")]
    NotReflection(Box<Witness>),

    #[error("predicate is not reflective on this universe: {0}")]
    NotReflective(Box<Witness>),

    #[error("relational composite is not a congruence: {0}")]
    CompositeNotCongruence(Box<Witness>),

    #[error("operators or reflectors are defined over different universes")]
    UniverseMismatch,

    #[error("universe is not closed under quotients")]
    UniverseNotQuotientClosed,

    #[error("algebra is not isomorphic to any member of the universe")]
    NotInUniverse,

    #[error("algebra `{0}` is not a commutative rng")]
    NotRng(String),

    #[error("algebra `{0}` is not a quandle")]
    NotQuandle(String),

    #[error("algebra `{0}` is not a group")]
    NotGroup(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("size {size} too large for {what} (limit {limit})")]
    SizeTooLarge {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable kebab-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TableShape(_) => "table-shape",
            Error::OutOfRange { .. } => "out-of-range",
            Error::AxiomViolation { .. } => "axiom-violation",
            Error::UnknownOp(_) => "unknown-op",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::InvalidSignature(_) => "invalid-signature",
            Error::SignatureMismatch => "signature-mismatch",
            Error::FibreMismatch(..) => "fibre-mismatch",
            Error::InvalidCongruence(_) => "invalid-congruence",
            Error::NotHomomorphism(_) => "not-homomorphism",
            Error::NotInE => "not-surjective",
            Error::NotExtensive(_) => "not-extensive",
            Error::NotNatural(_) => "not-natural",
            Error::NotIdempotent(_) => "not-idempotent",
            Error::NotCohereditary(_) => "not-cohereditary",
            Error::NotCongruence(_) => "not-congruence",
            Error::PreconditionFailed(_) => "precondition-failed",
            Error::NotReflection(_) => "not-reflection",
            Error::NotReflective(_) => "not-reflective",
            Error::CompositeNotCongruence(_) => "composite-not-congruence",
            Error::UniverseMismatch => "universe-mismatch",
            Error::UniverseNotQuotientClosed => "universe-not-quotient-closed",
            Error::NotInUniverse => "not-in-universe",
            Error::NotRng(_) => "not-rng",
            Error::NotQuandle(_) => "not-quandle",
            Error::NotGroup(_) => "not-group",
            Error::InvalidIdeal(_) => "invalid-ideal",
            Error::SizeTooLarge { .. } => "size-too-large",
            Error::Json(_) => "json",
        }
    }

    /// The counterexample carried by a failed mathematical check.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::NotExtensive(w)
            | Error::NotNatural(w)
            | Error::NotIdempotent(w)
            | Error::NotCohereditary(w)
            | Error::NotCongruence(w)
            | Error::PreconditionFailed(w)
            | Error::NotReflection(w)
            | Error::NotReflective(w)
            | Error::CompositeNotCongruence(w) => Some(w),
            _ => None,
        }
    }
}
