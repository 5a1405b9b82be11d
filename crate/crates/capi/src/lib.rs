//! C ABI over the casimir-polder library.
//!
//! The surface follows the usual opaque-handle pattern: a `CpScenario` is
//! built through setters, evaluated with [`cp_evaluate`], and released with
//! [`cp_scenario_free`]. Every fallible call returns a [`CpStatus`]; the
//! human-readable cause of the last failure on the current thread is
//! available from [`cp_last_error_message`].
//!
//! All `unsafe` lives in this crate; the wrapped library is safe Rust.
//! Pointer contract, for every function taking raw pointers: handles must
//! come from [`cp_scenario_new`] and not be freed; paths must be
//! NUL-terminated UTF-8; output pointers must be writable. Null pointers
//! are detected and reported, anything else dangling is the caller's UB.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};

use casimir_polder::error::Error;
use casimir_polder::kernel::{self, EvaluationMode, Scenario};
use casimir_polder::permittivity::{Extrapolation, OpticalTable, PermittivityModel};
use casimir_polder::polarizability::{PolarizabilityModel, PolarizabilityTable, TableUnits};
use casimir_polder::quantities::{PolarizabilityValue, Separation, Temperature};

/// Result code of every fallible C-API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument lies outside its domain (negative separation, ε < 1, …).
    InvalidArgument = 2,
    /// The scenario is missing a wall or an atom model.
    IncompleteScenario = 3,
    /// Physics domain error (nonperturbative breakdown, wrong mode).
    DomainError = 4,
    /// Quadrature or summation failed to converge.
    NumericalError = 5,
    /// File could not be read or parsed.
    IoError = 6,
    /// Internal panic; the message carries details.
    InternalError = 7,
}

/// How a result was obtained: Matsubara summation or the T = 0 integral.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpMode {
    MatsubaraSum = 0,
    ZeroTemperatureIntegral = 1,
}

/// Evaluation output: both theories plus their relative deviations.
/// `delta_f`/`delta_force` are NaN when the perturbative reference is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CpInteraction {
    /// Nonperturbative free energy (J).
    pub free_energy_j: f64,
    /// Nonperturbative force (N).
    pub force_n: f64,
    /// Perturbative (first-order Lifshitz) free energy (J).
    pub free_energy_perturbative_j: f64,
    /// Perturbative force (N).
    pub force_perturbative_n: f64,
    /// (exact − perturbative)/perturbative for the free energy.
    pub delta_f: f64,
    /// (exact − perturbative)/perturbative for the force.
    pub delta_force: f64,
    /// Matsubara terms summed (or quadrature panels at T = 0).
    pub terms_used: u64,
    pub mode: CpMode,
}

/// Opaque scenario builder.
pub struct CpScenario {
    separation_m: f64,
    temperature_k: f64,
    floor_m: f64,
    wall: Option<PermittivityModel>,
    atom: Option<PolarizabilityModel>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> CpStatus {
    match err {
        Error::InvalidScalar { .. } | Error::Config(_) | Error::BelowSeparationFloor { .. } => {
            CpStatus::InvalidArgument
        }
        Error::NonperturbativeBreakdown { .. }
        | Error::ZeroTemperatureMode
        | Error::NonzeroTemperatureMode
        | Error::UndefinedDeviation
        | Error::SeriesOutOfRange { .. }
        | Error::DivergingPermittivity
        | Error::IdealMetalPermittivity => CpStatus::DomainError,
        Error::QuadratureDidNotConverge { .. } | Error::SumDidNotConverge { .. } => {
            CpStatus::NumericalError
        }
        Error::Parse { .. } | Error::EmptyTable | Error::Io(_) => CpStatus::IoError,
    }
}

fn fail(err: &Error) -> CpStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Allocate a scenario with the defaults: a = 10 nm, T = 300 K, no wall,
/// no atom. Free with [`cp_scenario_free`].
#[no_mangle]
pub extern "C" fn cp_scenario_new() -> *mut CpScenario {
    Box::into_raw(Box::new(CpScenario {
        separation_m: 10e-9,
        temperature_k: 300.0,
        floor_m: kernel::DEFAULT_SEPARATION_FLOOR,
        wall: None,
        atom: None,
    }))
}

/// Release a scenario created by [`cp_scenario_new`]. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_free(scenario: *mut CpScenario) {
    if !scenario.is_null() {
        drop(unsafe { Box::from_raw(scenario) });
    }
}

unsafe fn with_scenario<'a>(ptr: *mut CpScenario) -> Result<&'a mut CpScenario, CpStatus> {
    if ptr.is_null() {
        set_error("scenario pointer is null");
        return Err(CpStatus::NullPointer);
    }
    Ok(unsafe { &mut *ptr })
}

unsafe fn read_path(ptr: *const c_char) -> Result<String, CpStatus> {
    if ptr.is_null() {
        set_error("path pointer is null");
        return Err(CpStatus::NullPointer);
    }
    match unsafe { CStr::from_ptr(ptr) }.to_str() {
        Ok(s) => Ok(s.to_owned()),
        Err(_) => {
            set_error("path is not valid UTF-8");
            Err(CpStatus::InvalidArgument)
        }
    }
}

macro_rules! ffi_try {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

/// Set the atom-surface separation (m).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_separation(
    scenario: *mut CpScenario,
    a_m: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    if let Err(e) = Separation::new(a_m) {
        return fail(&e);
    }
    s.separation_m = a_m;
    CpStatus::Ok
}

/// Set the validity floor on the separation (m); default 0.8 nm.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_separation_floor(
    scenario: *mut CpScenario,
    floor_m: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    if floor_m.is_nan() || floor_m < 0.0 || !floor_m.is_finite() {
        set_error("separation floor must be non-negative and finite");
        return CpStatus::InvalidArgument;
    }
    s.floor_m = floor_m;
    CpStatus::Ok
}

/// Set the temperature (K); 0 selects the zero-temperature integral mode.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_temperature(
    scenario: *mut CpScenario,
    temperature_k: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    if let Err(e) = Temperature::new(temperature_k) {
        return fail(&e);
    }
    s.temperature_k = temperature_k;
    CpStatus::Ok
}

/// Ideal-metal wall (unit reflection coefficients).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_wall_ideal(scenario: *mut CpScenario) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    s.wall = Some(PermittivityModel::IdealMetal);
    CpStatus::Ok
}

/// Lossless plasma wall, ε(iξ) = 1 + ω_p²/ξ² (ω_p in rad/s).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_wall_plasma(
    scenario: *mut CpScenario,
    omega_p_rad_s: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    match PermittivityModel::plasma(omega_p_rad_s) {
        Ok(model) => {
            s.wall = Some(model);
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Dissipative Drude wall, ε(iξ) = 1 + ω_p²/(ξ(ξ+γ)) (both rad/s).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_wall_drude(
    scenario: *mut CpScenario,
    omega_p_rad_s: f64,
    gamma_rad_s: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    match PermittivityModel::drude(omega_p_rad_s, gamma_rad_s) {
        Ok(model) => {
            s.wall = Some(model);
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Frequency-independent dielectric wall with ε ≥ 1.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_wall_constant(
    scenario: *mut CpScenario,
    eps: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    match PermittivityModel::constant(eps) {
        Ok(model) => {
            s.wall = Some(model);
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Tabulated optical data (`energy_eV n k` lines) with Kramers-Kronig
/// transform and a free-electron extrapolation below the tabulated range:
/// plasma when `use_drude_extrapolation` is zero, Drude otherwise.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_wall_tabulated_file(
    scenario: *mut CpScenario,
    path: *const c_char,
    use_drude_extrapolation: c_int,
    omega_p_rad_s: f64,
    gamma_rad_s: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    let path = ffi_try!(unsafe { read_path(path) });
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            set_error(&format!("cannot open {path}: {e}"));
            return CpStatus::IoError;
        }
    };
    let table = match OpticalTable::parse(BufReader::new(file)) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let extrapolation = if use_drude_extrapolation != 0 {
        Extrapolation::Drude {
            omega_p: omega_p_rad_s,
            gamma: gamma_rad_s,
        }
    } else {
        Extrapolation::Plasma {
            omega_p: omega_p_rad_s,
        }
    };
    match PermittivityModel::tabulated_kk(table, extrapolation) {
        Ok(model) => {
            s.wall = Some(model);
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Frequency-independent polarizability α(iξ) = α₀ (m³).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_atom_static(
    scenario: *mut CpScenario,
    alpha0_m3: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    match PolarizabilityValue::new(alpha0_m3) {
        Ok(alpha0) => {
            s.atom = Some(PolarizabilityModel::static_alpha(alpha0));
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Single-oscillator polarizability α₀/(1 + ξ²/ω₀²) (α₀ in m³, ω₀ in rad/s).
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_atom_oscillator(
    scenario: *mut CpScenario,
    alpha0_m3: f64,
    omega0_rad_s: f64,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    let alpha0 = match PolarizabilityValue::new(alpha0_m3) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    match PolarizabilityModel::single_oscillator(alpha0, omega0_rad_s) {
        Ok(model) => {
            s.atom = Some(model);
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Tabulated polarizability from a `xi alpha` file; the α column is in
/// atomic units when `atomic_units` is nonzero, m³ otherwise.
#[no_mangle]
pub unsafe extern "C" fn cp_scenario_set_atom_table_file(
    scenario: *mut CpScenario,
    path: *const c_char,
    atomic_units: c_int,
) -> CpStatus {
    let s = ffi_try!(unsafe { with_scenario(scenario) });
    let path = ffi_try!(unsafe { read_path(path) });
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            set_error(&format!("cannot open {path}: {e}"));
            return CpStatus::IoError;
        }
    };
    let units = if atomic_units != 0 {
        TableUnits::AtomicUnits
    } else {
        TableUnits::Si
    };
    match PolarizabilityTable::parse(BufReader::new(file), units) {
        Ok(table) => {
            s.atom = Some(PolarizabilityModel::Tabulated(table));
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

fn build_scenario(s: &CpScenario) -> Result<Scenario, CpStatus> {
    let wall = s.wall.clone().ok_or_else(|| {
        set_error("no wall material set");
        CpStatus::IncompleteScenario
    })?;
    let atom = s.atom.clone().ok_or_else(|| {
        set_error("no atom model set");
        CpStatus::IncompleteScenario
    })?;
    let separation = Separation::new(s.separation_m).map_err(|e| fail(&e))?;
    let temperature = Temperature::new(s.temperature_k).map_err(|e| fail(&e))?;
    Scenario::with_floor(separation, temperature, wall, atom, s.floor_m).map_err(|e| fail(&e))
}

/// Evaluate the scenario: exact and perturbative free energy and force,
/// by Matsubara summation (T > 0) or the zero-temperature integral (T = 0).
#[no_mangle]
pub unsafe extern "C" fn cp_evaluate(
    scenario: *const CpScenario,
    out: *mut CpInteraction,
) -> CpStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return CpStatus::NullPointer;
    }
    if scenario.is_null() {
        set_error("scenario pointer is null");
        return CpStatus::NullPointer;
    }
    let s = unsafe { &*scenario };
    let built = match build_scenario(s) {
        Ok(b) => b,
        Err(status) => return status,
    };
    let result = catch_unwind(AssertUnwindSafe(|| kernel::evaluate(&built)));
    let evaluation = match result {
        Ok(Ok(ev)) => ev,
        Ok(Err(e)) => return fail(&e),
        Err(_) => {
            set_error("internal panic during evaluation");
            return CpStatus::InternalError;
        }
    };
    let (delta_f, delta_force) =
        kernel::deviation_from(&evaluation).unwrap_or((f64::NAN, f64::NAN));
    unsafe {
        *out = CpInteraction {
            free_energy_j: evaluation.exact.free_energy,
            force_n: evaluation.exact.force,
            free_energy_perturbative_j: evaluation.perturbative.free_energy,
            force_perturbative_n: evaluation.perturbative.force,
            delta_f,
            delta_force,
            terms_used: evaluation.exact.terms_used as u64,
            mode: match evaluation.exact.mode {
                EvaluationMode::MatsubaraSum => CpMode::MatsubaraSum,
                EvaluationMode::ZeroTemperatureIntegral => CpMode::ZeroTemperatureIntegral,
            },
        };
    }
    CpStatus::Ok
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
