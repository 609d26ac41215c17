use thiserror::Error;

/// Errors produced by geometry, filtering, analysis and persistence.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tangent vector degenerate at parameter {s}: |z'(s)| = {speed} < 1e-10")]
    DegenerateTangent { s: f64, speed: f64 },

    #[error("point ({x}, {y}) is not strictly inside the acquisition curve")]
    NotInside { x: f64, y: f64 },

    #[error("radial grid is not uniform: max deviation {deviation} exceeds {tolerance}")]
    NonUniformGrid { deviation: f64, tolerance: f64 },

    #[error("window argument {s} outside [0, {b}]")]
    OutOfRange { s: f64, b: f64 },

    #[error("edge probe extends outside the image grid")]
    ProbeOutsideGrid,

    #[error("all samples on the artifact circle were excluded")]
    EmptySampleSet,

    #[error("invalid {what}: {why}")]
    Validation { what: &'static str, why: String },

    #[error("malformed file {path}: {why}")]
    Format { path: String, why: String },

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(what: &'static str, why: impl Into<String>) -> Self {
        Error::Validation {
            what,
            why: why.into(),
        }
    }
}
