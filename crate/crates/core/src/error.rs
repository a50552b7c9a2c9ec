use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term of the divisor is not a unit")]
    NonUnitConstant,

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("operation needs a finite ambient Grassmannian")]
    StableAmbient,

    #[error("partition ({i},{j}) is not a valid type (need i >= j >= 0)")]
    InvalidPartition { i: i64, j: i64 },

    #[error("partition {partition} lies outside the box of Gr({d},{m})")]
    OutsideBox { partition: String, d: u32, m: u32 },

    #[error("special class index h = {h} out of range 0..={max}")]
    SpecialIndexOutOfRange { h: u32, max: u32 },

    #[error("class is not homogeneous")]
    NotHomogeneous,

    #[error("degrees {left} + {right} do not add up to the top degree {top}")]
    DegreeMismatch { left: u32, right: u32, top: u32 },

    #[error("degree {degree} exceeds m-2 = {limit}; the monomial set is linearly dependent there")]
    DegreeTooHigh { degree: u32, limit: u32 },

    #[error("invalid embedding context (m = {m}, n = {n}); need n >= m >= 4")]
    InvalidContext { m: u32, n: u32 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid search box: {0}")]
    InvalidBox(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
