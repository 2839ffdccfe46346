use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NominalError {
    #[error("not an injective map: {0}")]
    NonInjective(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("value {value} is not a member of {set}")]
    NotMember { value: String, set: String },

    #[error("{set} only carries a permutation action; cannot apply substitution {subst}")]
    NoSubstitutionAction { set: String, subst: String },

    #[error("summands of {set} overlap on orbit {witness}; wrap one side with tag(..)")]
    OverlappingSummands { set: String, witness: String },

    #[error("{set} has dimension {dimension} > 1 (witness orbit {witness})")]
    DimensionTooLarge { set: String, dimension: usize, witness: String },

    #[error("separation violated at position {position}: {detail}")]
    SeparationViolation { position: usize, detail: String },

    #[error("automaton kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },

    #[error("free element {0} does not match its base orbit")]
    MalformedFreeElem(String),

    #[error("unknown {kind} \"{name}\"")]
    Unknown { kind: &'static str, name: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = NominalError> = std::result::Result<T, E>;
