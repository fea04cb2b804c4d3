use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("invalid symbol `{0}`: symbols are nonempty and contain no whitespace")]
    InvalidSymbol(String),
    #[error("empty word: the free semigroup has no empty word")]
    EmptyWord,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("bound must be at least 1, got {0}")]
    InvalidBound(usize),
    #[error("universe with {size} words exceeds the supported maximum of {max}")]
    UniverseTooLarge { size: u128, max: usize },
    #[error("word `{0}` is not in the universe")]
    OutsideUniverse(String),
    #[error("relations are over different universes")]
    UniverseMismatch,
    #[error("word `{0}` appears in more than one class")]
    OverlappingClasses(String),
    #[error("`{u}` and `{v}` are not related")]
    NotRelated { u: String, v: String },
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("table is not commutative: {0}*{1} != {1}*{0}")]
    NotCommutative(usize, usize),
    #[error("letter `{0}` has no image under the letter map")]
    UnassignedLetter(String),
    #[error("cap {cap} is shorter than the input words (need at least {needed})")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
