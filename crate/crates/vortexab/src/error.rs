//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value out of representable range for order {alpha}, argument {arg}")]
    Overflow { alpha: f64, arg: f64 },

    #[error("resonant Robin condition: degenerate denominator at alpha {alpha}, u {u}")]
    ResonantRobin { alpha: f64, u: f64 },

    #[error(
        "partial-wave truncation failed: tail bound {achieved:.3e} above tolerance {requested:.3e} within {n_budget} channels"
    )]
    TruncationFailure {
        achieved: f64,
        requested: f64,
        n_budget: usize,
    },

    #[error("quadrature error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    QuadratureTolerance { estimate: f64, tolerance: f64 },

    #[error("grid too coarse for requested quadrature: {0}")]
    GridTooCoarse(String),

    #[error("short-wavelength form requested below validity gate: kr_c = {kr_c:.3} < {gate:.3}")]
    ValidityGate { kr_c: f64, gate: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
