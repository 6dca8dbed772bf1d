//! Error types shared by all machine and property operations.

use std::fmt;

/// What went wrong while parsing a machine document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The first line does not start with `@NFA` or `@Transducer`.
    MissingHeader,
    /// The header lacks the `*` separating final from initial states.
    MissingStarSeparator,
    /// A transition row has the wrong number of tokens.
    WrongArity { expected: usize, found: usize },
    /// The document does not end with a line terminator.
    MissingLineTerminator,
    /// A token starting with `@` that is not a known directive.
    UnknownDirective(String),
    /// A token that cannot serve as a state name or symbol.
    BadToken(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => {
                write!(f, "expected a header starting with @NFA or @Transducer")
            }
            ParseErrorKind::MissingStarSeparator => {
                write!(f, "header is missing the `*` separator")
            }
            ParseErrorKind::WrongArity { expected, found } => {
                write!(f, "expected {expected} tokens in transition row, found {found}")
            }
            ParseErrorKind::MissingLineTerminator => {
                write!(f, "document must end with a line terminator")
            }
            ParseErrorKind::UnknownDirective(tok) => write!(f, "unknown directive `{tok}`"),
            ParseErrorKind::BadToken(tok) => write!(f, "invalid token `{tok}`"),
        }
    }
}

/// Errors raised by machine constructors and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Text-format parse failure; line numbers are 1-based.
    #[error("parse error at line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    /// An operation required epsilon-free input automata.
    #[error("operation requires automata with no epsilon transitions")]
    EpsilonTransitions,

    /// Machine construction with inconsistent components.
    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    /// Alphabets of the operands are incompatible.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// Maximality was queried for a language that fails the property.
    #[error("language does not satisfy the property")]
    PropertyNotSatisfied,

    /// UD-code maximality was queried for a language that is not a UD code.
    #[error("language is not a uniquely decipherable code")]
    NotUdCode,

    /// Malformed trajectory regular expression.
    #[error("trajectory expression: {0}")]
    TrajectorySyntax(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
