use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("point {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("order-{order} stencil at x = {x} with step {step} leaves the domain")]
    StencilOutOfDomain { order: usize, x: f64, step: f64 },

    #[error("derivative order {0} is not supported")]
    UnsupportedOrder(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "reference quadrature did not converge within {cells} cells (last change {last_change:e})"
    )]
    NoConvergence { cells: usize, last_change: f64 },

    #[error("total variation of f^({order}) still grows {growth_pct:.2}% per doubling at {points} points")]
    TvDiverging {
        order: usize,
        growth_pct: f64,
        points: usize,
    },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("tolerance {tol:e} not reached within {max_cells} cells (bound {bound:e})")]
    ToleranceUnreachable {
        tol: f64,
        max_cells: usize,
        bound: f64,
    },
}

impl Error {
    /// Short reason code, used in tabular output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInterval { .. } => "InvalidInterval",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::Domain { .. } => "DomainError",
            Error::StencilOutOfDomain { .. } => "StencilOutOfDomain",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::TvDiverging { .. } => "TVDiverging",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::ToleranceUnreachable { .. } => "ToleranceUnreachable",
        }
    }
}
