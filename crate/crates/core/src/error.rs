use thiserror::Error;

/// Errors raised by construction, geometry and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polygon is not simple: {0}")]
    NonSimplePolygon(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("point ({x}, {y}) lies outside the free space")]
    PointOutsideFreeSpace { x: f64, y: f64 },

    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    #[error("unknown point id {0}")]
    UnknownId(usize),

    #[error("graph has no planar embedding: {0}")]
    NotPlanar(String),

    #[error("fault set contains endpoint {0}")]
    FaultedEndpoint(usize),

    #[error("exhaustive certification needs {checks} checks, above the budget of {budget}")]
    BudgetTooLarge { checks: u128, budget: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance generation failed: {0}")]
    GenerationFailed(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
