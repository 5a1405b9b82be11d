// `!(x > 0.0)`-style guards are used throughout validation so that NaN
// falls into the rejecting branch; `x <= 0.0` would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Atom-surface dispersion interaction at arbitrary temperature.
//!
//! Evaluates the free energy and force between a ground-state atom and a
//! thick real-material wall, both nonperturbatively (the full Matsubara
//! logarithm) and in the standard first-order Lifshitz approximation, from
//! pluggable permittivity and polarizability models. Closed-form limits —
//! the classical zero-frequency term, the ideal-metal series, the
//! zero-temperature Casimir-Polder expansion — double as oracles for the
//! quadrature kernel and power the `self-check` command.

pub mod config;
pub mod error;
pub mod kernel;
pub mod limits;
pub mod permittivity;
pub mod polarizability;
pub mod quadrature;
pub mod quantities;
pub mod selfcheck;
pub mod summation;
pub mod sweep;

pub use error::{Error, Result};
pub use kernel::{
    evaluate, free_energy_exact, free_energy_perturbative, relative_deviation, EvalSettings,
    Evaluation, InteractionResult, Scenario,
};
pub use permittivity::{Extrapolation, OpticalTable, PermittivityModel};
pub use polarizability::{PolarizabilityModel, PolarizabilityTable, TableUnits};
pub use quantities::{Separation, Temperature};
