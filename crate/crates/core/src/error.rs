use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation {0:?}: expected each of 1..=n exactly once")]
    InvalidPermutation(String),

    #[error("generator s_{index} is out of range for S_{n} (need 1 <= i <= n-1)")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("row {row} is out of range for a {n}x{n} grid")]
    RowOutOfRange { row: usize, n: usize },

    #[error("box ({row},{col}) lies outside the {n}x{n} grid")]
    OutOfGrid { row: usize, col: usize, n: usize },

    #[error("cross at ({row},{col}) lies on or below the antidiagonal of the {n}x{n} grid")]
    OutsideStaircase { row: usize, col: usize, n: usize },

    #[error("grid size {n} is not supported (maximum {max})")]
    GridTooLarge { n: usize, max: usize },

    #[error("pipe dream is not reduced")]
    NotReduced,

    #[error("rows ({row},{}) columns {left}..={right} do not form a chutable rectangle", row + 1)]
    NotChutable {
        row: usize,
        left: usize,
        right: usize,
    },

    #[error("invalid intron: {0}")]
    InvalidIntron(String),

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("pipe dreams of different grid sizes ({0} and {1}) cannot be combined")]
    MixedGridSizes(usize, usize),

    #[error("word {0} is not a reduced word")]
    NonReducedWord(String),

    #[error("offspring of distinct parents overlap under mitosis_{0}")]
    SharedOffspring(usize),

    #[error("simplicial complex is not pure")]
    ImpureComplex,

    #[error("facet order is not a permutation of 0..{0}")]
    InvalidFacetOrder(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
