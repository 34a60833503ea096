use thiserror::Error;

/// Everything that can go wrong while building or evaluating a finite model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell count {0} is not a power of two >= 2")]
    InvalidCellCount(usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("cell space mismatch: {left} cells vs {right} cells")]
    SpaceMismatch { left: usize, right: usize },

    #[error("cell {cell} out of range for a space of {cells} cells")]
    CellOutOfRange { cell: usize, cells: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cycle starting at cell {start} has length {length}, shorter than the required {required}")]
    CycleTooShort {
        start: usize,
        length: usize,
        required: usize,
    },

    #[error(
        "coverage guarantee needs min cycle length >= {required}, found {min_cycle}; \
         smallest achievable eps at this height is {achievable_eps}"
    )]
    CoverageUnattainable {
        required: u128,
        min_cycle: usize,
        achievable_eps: String,
    },

    #[error("base is not aperiodic at scale {required}: min cycle length is {min_cycle}")]
    NotAperiodic { required: usize, min_cycle: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
