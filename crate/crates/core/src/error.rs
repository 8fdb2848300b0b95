use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("words must be non-empty")]
    EmptyWord,
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("index {index} is outside the window [{start}, {end})")]
    OutOfWindow { index: i64, start: i64, end: i64 },
    #[error("length {n} out of range (window length {len})")]
    LengthOutOfRange { n: usize, len: usize },
    #[error("window too short: {what} not stabilized at n = {n}")]
    WindowTooShort { what: &'static str, n: usize },
    #[error("seed `{0}` is not self-prolongable")]
    NotSelfProlongable(String),
    #[error("no jump value for centered word `{0}`")]
    MissingJump(String),
    #[error("jump values must be positive (word `{0}`)")]
    ZeroJump(String),
    #[error("index {index} has margin smaller than the jump radius {radius}")]
    InsufficientMargin { index: usize, radius: usize },
    #[error("jump is not bijective on the window: {0}")]
    NotBijective(String),
    #[error("S-orbit leaves the window before reaching index {target}")]
    OrbitExitsWindow { target: usize },
    #[error("word of length {len} is shorter than the strict minimum {min}")]
    WordTooShort { len: usize, min: usize },
    #[error("`{word}` occurs {found} times, at least {needed} needed")]
    TooFewOccurrences { word: String, found: usize, needed: usize },
    #[error("`{0}` does not occur in the window")]
    NoOccurrence(String),
    #[error("{0} and {1} are not consecutive occurrences")]
    NotConsecutive(usize, usize),
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("cocycle index {n} outside trace range [{min}, {max}]")]
    CocycleOutOfRange { n: i64, min: i64, max: i64 },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Stable machine-readable class name, used by the command-line front end.
    pub fn class(&self) -> &'static str {
        match self {
            Error::EmptyAlphabet | Error::DuplicateSymbol(_) | Error::UnknownSymbol(_) => "alphabet",
            Error::EmptyWord | Error::AlphabetMismatch => "word",
            Error::OutOfWindow { .. } | Error::LengthOutOfRange { .. } => "out-of-window",
            Error::WindowTooShort { .. } => "window-too-short",
            Error::NotSelfProlongable(_) => "seed",
            Error::MissingJump(_) | Error::ZeroJump(_) => "jump",
            Error::InsufficientMargin { .. } => "margin",
            Error::NotBijective(_) => "not-bijective",
            Error::OrbitExitsWindow { .. } => "orbit-exits-window",
            Error::WordTooShort { .. } => "word-too-short",
            Error::TooFewOccurrences { .. } | Error::NoOccurrence(_) => "too-few-occurrences",
            Error::NotConsecutive(..) => "not-consecutive",
            Error::DegreeMismatch(..) | Error::InvalidPermutation(_) => "permutation",
            Error::CocycleOutOfRange { .. } => "cocycle-range",
            Error::InvalidPresentation(_) => "presentation",
            Error::InvalidSpec(_) => "spec",
            Error::Parse { .. } => "parse",
        }
    }
}
