use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("presentation has no generators")]
    EmptyGeneratorList,
    #[error("relator {0} freely reduces to the empty word")]
    EmptyRelator(usize),
    #[error("rewriting system is not known to be confluent")]
    RewritingIncomplete,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot truncate at height {requested} above the known precision {known}")]
    TruncationAboveKnowledge { requested: String, known: String },
    #[error("operands live over different characters")]
    CharacterMismatch,
    #[error("operands live over different coefficient fields")]
    FieldMismatch,
    #[error("element is zero")]
    ZeroElement,
    #[error("lowest stratum is not a monomial unit ({0} terms)")]
    NotMonomialUnit(usize),
    #[error("character is zero")]
    ZeroCharacter,
    #[error("relator is a proper power")]
    ProperPowerRelator,
    #[error("presentation has {0} relators, expected exactly one")]
    NotOneRelator(usize),
    #[error("permutation images do not define a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("permutation action is not transitive")]
    NotTransitive,
    #[error("character is not integral")]
    NonIntegralCharacter,
    #[error("degree {degree} is outside the complex range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("quotient map is not surjective onto Z^{0}")]
    NotSurjective(usize),
    #[error("quotient map does not kill relator {0}")]
    QuotientNotDefined(usize),
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("series exceeded {0} terms")]
    TermBudget(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
