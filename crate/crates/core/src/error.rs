use thiserror::Error;

/// Errors reported while building or checking models and complexes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("composition of consecutive maps is not zero{}", degree_suffix(.degree))]
    CompositionNotZero { degree: Option<usize> },

    #[error(
        "precubical identity violated at cell `{cell}` (n={n}, i={i}, j={j}, alpha={alpha}, beta={beta}): \
         `{left}` != `{right}`"
    )]
    PrecubicalIdentityViolated {
        n: usize,
        i: usize,
        j: usize,
        alpha: u8,
        beta: u8,
        cell: String,
        left: String,
        right: String,
    },

    #[error("dangling face: {0}")]
    DanglingFace(String),

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("functoriality violated: {0}")]
    FunctorialityViolated(String),

    #[error("index {index} out of range (valid range 1..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("bad interval [{lo},{hi}]")]
    BadInterval { lo: i64, hi: i64 },

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("independence relation is not irreflexive at `{0}`")]
    ReflexiveIndependence(String),

    #[error("action not compatible: {0}")]
    ActionNotCompatible(String),

    #[error("not a partially ordered set: {0}")]
    NotAPoset(String),

    #[error("family of faces is not downward closed: {0}")]
    NotDownwardClosed(String),

    #[error("event `{0}` occurs in no transition")]
    UnusedEvent(String),

    #[error("event `{event}` is nondeterministic at state `{state}`: `{first}` and `{second}`")]
    NondeterministicEvent {
        state: String,
        event: String,
        first: String,
        second: String,
    },

    #[error(
        "broken diamond: independent `{e1}`,`{e2}` with `{s}` -{e1}-> `{s1}` -{e2}-> `{u}` \
         has no closing path through `{e2}` then `{e1}`"
    )]
    BrokenDiamond {
        s: String,
        e1: String,
        e2: String,
        s1: String,
        u: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn degree_suffix(degree: &Option<usize>) -> String {
    match degree {
        Some(n) => format!(" (d_{} . d_{})", n - 1, n),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
