use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra error: {0}")]
    Algebra(String),

    #[error("cannot parse {literal} as a weight of algebra {algebra}")]
    WeightLiteral { algebra: String, literal: String },

    #[error("quotient construction failed: {0}")]
    Quotient(String),

    #[error("term parse error at byte {at}: {msg}")]
    TermParse { at: usize, msg: String },

    #[error("grammar parse error on line {line}: {msg}")]
    GrammarParse { line: usize, msg: String },

    #[error("invalid automaton: {0}")]
    InvalidWta(String),

    #[error("invalid run: {0}")]
    InvalidRun(String),

    #[error("automaton recognizes the constant-zero mapping; no useful state")]
    EmptySemantics,

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("automaton file error: {0}")]
    File(String),
}
