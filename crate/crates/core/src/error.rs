use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{quantity} must be {requirement}, got {value:e}")]
    InvalidScalar {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("separation {a_m:e} m is below the validity floor {floor_m:e} m")]
    BelowSeparationFloor { a_m: f64, floor_m: f64 },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("empty table: no data rows found")]
    EmptyTable,

    #[error("permittivity diverges at zero frequency; use the static reflection limit instead")]
    DivergingPermittivity,

    #[error("the ideal metal has no finite permittivity; evaluate the unit-reflection limit directly")]
    IdealMetalPermittivity,

    #[error(
        "nonperturbative breakdown: separation too small for this polarizability \
         (critical separation {critical_separation_m:.4e} m)"
    )]
    NonperturbativeBreakdown { critical_separation_m: f64 },

    #[error(
        "quadrature did not converge for {context}: estimate {estimate:e}, \
         error bound {error_bound:e} after {panels} panels"
    )]
    QuadratureDidNotConverge {
        context: &'static str,
        estimate: f64,
        error_bound: f64,
        panels: usize,
    },

    #[error("Matsubara sum did not converge within {max_terms} terms")]
    SumDidNotConverge { max_terms: usize },

    #[error("temperature is zero: use the zero-temperature integral mode")]
    ZeroTemperatureMode,

    #[error("temperature is nonzero: the zero-temperature integral mode requires T = 0")]
    NonzeroTemperatureMode,

    #[error("relative deviation undefined: the perturbative reference vanishes")]
    UndefinedDeviation,

    #[error("series outside its convergence margin: {reason}")]
    SeriesOutOfRange { reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
