use thiserror::Error;

/// Errors raised by the machine, word, and acceptor operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("state `{0}` is not declared")]
    UnknownState(String),

    #[error("symbol `{0}` does not name a generator")]
    UnknownSymbol(String),

    #[error("accepting label `{0}` is not declared")]
    UnknownLabel(String),

    #[error("alphabets do not match")]
    AlphabetMismatch,

    #[error("machine is not invertible: state `{0}` repeats an output letter")]
    NotInvertible(String),

    #[error("machine is not reversible: its dual is not invertible")]
    NotReversible,

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid acceptor: {0}")]
    InvalidAcceptor(String),

    #[error("(padding, padding) is not a letter")]
    DoublePadding,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("word syntax error: {0}")]
    WordSyntax(String),

    #[error("resource cap exceeded: {what} grew past {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("multiplication table does not define a group: {0}")]
    NotAGroup(String),

    #[error("matrix determinant is even, the affine map is not invertible on the binary tree")]
    EvenDeterminant,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("language is not invariant under the dual action: `{word}` maps to `{image}`")]
    NotInvariant { word: String, image: String },

    #[error("malformed automatic structure: {0}")]
    MalformedStructure(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("distance oracle failed: {0}")]
    Oracle(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable machine-readable tag, used by the command line front-end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownLetter(_) => "unknown-letter",
            Error::UnknownState(_) => "unknown-state",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::UnknownLabel(_) => "unknown-label",
            Error::AlphabetMismatch => "alphabet-mismatch",
            Error::NotInvertible(_) => "not-invertible",
            Error::NotReversible => "not-reversible",
            Error::InvalidMachine(_) => "invalid-machine",
            Error::InvalidAcceptor(_) => "invalid-acceptor",
            Error::DoublePadding => "double-padding",
            Error::Parse { .. } => "parse",
            Error::WordSyntax(_) => "word-syntax",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::NotAGroup(_) => "not-a-group",
            Error::EvenDeterminant => "even-determinant",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NotInvariant { .. } => "not-invariant",
            Error::MalformedStructure(_) => "malformed-structure",
            Error::Disconnected => "disconnected",
            Error::Oracle(_) => "oracle",
            Error::Overflow(_) => "overflow",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
