use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("operands use different variable sets")]
    VarSetMismatch,

    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid frame system: {0}")]
    Frames(#[from] FrameError),

    #[error("ambient monomial count {count} exceeds cap {cap}")]
    AmbientTooLarge { count: u128, cap: u128 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    BadInput(String),
}

/// Violations of the frame-system compatibility conditions. The numbered
/// variants mirror the three conditions checked, in the order they are
/// checked, so the first failure names the condition that broke.
#[derive(Debug, Error)]
pub enum FrameError {
    #[error("frame {index}: {msg}")]
    InvalidFrame { index: usize, msg: String },

    #[error("condition 1 fails for pair ({i},{j}): {msg}")]
    SharedEdge { i: usize, j: usize, msg: String },

    #[error("condition 2 fails: pairs ({i},{j}) and ({j},{k}) share edge {edge} but pair ({i},{k}) maps elsewhere")]
    Transitivity {
        i: usize,
        j: usize,
        k: usize,
        edge: String,
    },

    #[error("condition 3 fails for frame {j}: active edge {edge} is not matched with any other frame")]
    Coverage { j: usize, edge: String },

    #[error("frames {i} and {j} sit on opposite sides of shared edge {edge}, so they induce different completion subtrees")]
    SideMismatch { i: usize, j: usize, edge: String },

    #[error("class on edge {edge} needs {need} completions but {msg}")]
    Completions {
        edge: String,
        need: usize,
        msg: String,
    },
}
