use std::fmt;

use thiserror::Error;

/// Line/column position inside parsed text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn new(line: usize, column: usize) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{pos}: parse error: {message}")]
    Parse { pos: Pos, message: String },
    #[error("{pos}: unknown generator `{name}`")]
    UnknownGenerator { name: String, pos: Pos },
    #[error("{pos}: malformed exponent: {message}")]
    MalformedExponent { pos: Pos, message: String },
    #[error("invalid group specification: {0}")]
    InvalidGroupSpec(String),
    #[error("operands live in different group contexts")]
    ContextMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("the group context has no `t` factor")]
    NoTFactor,
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("weak reduction needs `t` to be a free integer factor")]
    UnsupportedWeakContext,
    #[error("operation requires full reduction mode")]
    RequiresFullMode,
    #[error("`{0}` is not an element of the base group")]
    NonBaseElement(String),
    #[error("bar word has no y letter")]
    NoYLetter,
    #[error("barbell cuff is knotted: {0}")]
    CuffKnotted(&'static str),
    #[error("bar word `{0}` contains letters other than x and y")]
    BaseLettersPresent(String),
    #[error("operation is only defined for the 4-sphere context")]
    NotS4Context,
    #[error("`{0}` is not a single group element")]
    NotAWord(String),
    #[error("inversion routes disagree: {0}")]
    InconsistentRoutes(String),
}

impl Error {
    /// True for errors that reject the reduction setting rather than the input.
    pub fn is_unsupported_context(&self) -> bool {
        matches!(
            self,
            Error::NoTFactor
                | Error::UnsupportedWeakContext
                | Error::RequiresFullMode
                | Error::CuffKnotted(_)
                | Error::NotS4Context
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
