use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidField(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate vertex or arrow name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("malformed relation {0:?}: {1}")]
    MalformedRelation(Vec<String>, String),
    #[error("algebra is infinite-dimensional: relation-free paths of unbounded length exist (witness of length {0})")]
    InfiniteDimensional(usize),
    #[error("algebra must have at least one vertex")]
    EmptyQuiver,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("could not split a decomposable module of dimension vector {0:?}")]
    IdempotentSplitFailure(Vec<usize>),
    #[error("dimension bound {bound:?} is below projective dimension vector {projective:?}")]
    BoundTooSmall { bound: Vec<usize>, projective: Vec<usize> },
    #[error("enumeration not certifiably complete: {0}")]
    NotCertifiablyComplete(String),
    #[error("too many indecomposables ({0}); at most 64 are supported")]
    TooManyIndecomposables(usize),
    #[error("module is not a direct sum of catalogued indecomposables")]
    NotCatalogued,
    #[error("unknown module label `{0}`")]
    UnknownModule(String),
    #[error("module {0} is not tau-rigid")]
    NotTauRigid(String),
    #[error("module {0} does not lie in the wide subcategory")]
    NotInW(String),
    #[error("rank mismatch for J{object}: {found} relative projectives, expected {expected}")]
    RankMismatch { object: String, found: usize, expected: usize },
    #[error("{object} is not compatible with {with}")]
    Incompatible { object: String, with: String },
    #[error("E-map case (b) for {object} over {over}: {count} relative projectives match, expected exactly one")]
    NoUniqueMatch { object: String, over: String, count: usize },
    #[error("E-map over {over} has no preimage for {target}")]
    NoPreimage { over: String, target: String },
    #[error("E-map over {over} has {count} preimages for {target}")]
    MultiplePreimages { over: String, target: String, count: usize },
    #[error("sequence {0} is not TF-ordered")]
    NotTFOrdered(String),
    #[error("not a tau-exceptional sequence: {0}")]
    NotExceptional(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("not a tau-exceptional pair: {0}")]
    NotAPair(String),
    #[error(
        "irregular mutation ambiguity in context {context}: {sources} unmatched sources, {targets} unmatched targets"
    )]
    IrregularAmbiguity { context: String, sources: usize, targets: usize },
    #[error("mutation index {index} out of range {lo}..{hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("gen-minimality of {0} disagrees between the summand test and the split-projective characterization")]
    CharacterizationMismatch(String),
    #[error("no transposition word found within {0} iterations")]
    OrbitExhausted(usize),
    #[error("normalization step did not strictly enlarge FiltGen at {0}")]
    NoStrictIncrease(String),
    #[error("sequences have different perpendicular categories")]
    DifferentJ,
}
