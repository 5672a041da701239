use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("symbol {0:?} appears more than once in the alphabet")]
    DuplicateSymbol(String),
    #[error("symbol {0:?} is reserved and cannot be an alphabet member")]
    ReservedSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("period structure is empty")]
    EmptyStructure,
    #[error("period structure must start with p_0 = 1, found {0}")]
    FirstPeriodNotOne(usize),
    #[error("periods must be strictly increasing: p_{index} = {prev} is followed by {next}")]
    NotIncreasing { index: usize, prev: usize, next: usize },
    #[error("p_{index} = {prev} does not divide p_{next_index} = {next}", next_index = index + 1)]
    NonDividingPeriods { index: usize, prev: usize, next: usize },
    #[error("a spec needs at least one scheduled level")]
    NoLevels,

    #[error("fill for level {level} is out of range (horizon {horizon})")]
    FillLevelOutOfRange { level: usize, horizon: usize },
    #[error("level {0} has more than one fill step")]
    DuplicateFillLevel(usize),
    #[error("residue {residue} is out of range for modulus {modulus} at level {level}")]
    ResidueOutOfRange { level: usize, residue: usize, modulus: usize },
    #[error("level {level} assigns residue {residue}, which is already filled")]
    FillOnFilledPosition { level: usize, residue: usize },
    #[error("modulus {modulus} is not a multiple of the word period {period}")]
    IncompatiblePeriod { period: usize, modulus: usize },

    #[error("level {level} is out of range [{min}, {max}]")]
    LevelOutOfRange { level: usize, min: usize, max: usize },
    #[error("invalid range [{lo}, {hi})")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("relabeling at residue {0} is not a bijection of the alphabet")]
    NotABijection(usize),
    #[error("specs do not share alphabet and period structure")]
    StructureMismatch,

    #[error("base word is empty")]
    EmptyBase,
    #[error("congruence parameters need an odd modulus k and 0 <= j < k (got k = {k}, j = {j})")]
    BadCongruenceParams { k: usize, j: usize },
    #[error("no defined factor of the requested length")]
    AllBlank,
    #[error("measure covers words up to length {available}, {requested} requested")]
    InsufficientMeasureDepth { requested: usize, available: usize },
    #[error("invalid weight scheme: {0}")]
    BadWeights(String),

    #[error("ratio {ratio} at level {level} must be at least 2")]
    BadRatio { level: usize, ratio: usize },
    #[error("word b_{level} has length {found}, expected {expected}")]
    LengthLawViolation { level: usize, expected: usize, found: usize },
    #[error("level {level} has {found} blanks per period, expected {expected}")]
    BlankCountMismatch { level: usize, expected: usize, found: usize },
    #[error("the language of the forbidden-word shift is empty")]
    EmptyLanguage,
    #[error("prefix {0:?} cannot be extended inside the language")]
    DeadEnd(String),
    #[error("symbol {0:?} is not binary")]
    NonBinarySymbol(String),

    #[error("parse error: {0}")]
    Parse(String),
}
