//! The dimensionless Matsubara kernel.
//!
//! Everything here works in the scaled variables y = 2aq and ζ = 2aξ/c.
//! The free energy is a primed sum over Matsubara frequencies,
//!
//!   F(a,T) = k_BT Σ'_l ln[1 − (α(iξ_l)/(8a³)) I_l],
//!   I_l   = ∫_{ζ_l}^∞ dy e^{−y} [(2y² − ζ_l²) r_TM − ζ_l² r_TE],
//!
//! the force carries the extra weight y in the integrand and a 1/L_l
//! enhancement, and the perturbative (first-order) theory keeps −x_l in
//! place of ln(1 − x_l). The l = 0 term uses the analytic ζ → 0 limit of
//! the reflection coefficients: the TE part is annihilated by the ζ₀² = 0
//! weight, and r_TM reduces to the static reflection factor — 1 for any
//! free-electron metal, (ε(0)−1)/(ε(0)+1) for a dielectric.
//!
//! Truncation is certified, not guessed: every term is bounded by the
//! ideal-metal majorant x̄(ζ) = (α(0)r₀/4a³)(ζ²+2ζ+2)e^{−ζ}, whose tail sum
//! has a closed form; the loop stops once that tail bound drops below the
//! requested fraction of each accumulated quantity.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::permittivity::PermittivityModel;
use crate::polarizability::PolarizabilityModel;
use crate::quadrature::{integrate, QuadratureOutcome};
use crate::quantities::{
    matsubara_frequency, PermittivityValue, Separation, Temperature, HBAR, SPEED_OF_LIGHT,
};
use crate::summation::CompensatedSum;

/// Lifshitz theory stops being meaningful below ~8–10 Å; default validity
/// floor for scenario separations.
pub const DEFAULT_SEPARATION_FLOOR: f64 = 0.8e-9;

/// An atom-surface configuration: separation, temperature, wall material,
/// atomic polarizability.
#[derive(Debug, Clone)]
pub struct Scenario {
    separation: Separation,
    temperature: Temperature,
    wall: PermittivityModel,
    atom: PolarizabilityModel,
}

impl Scenario {
    pub fn new(
        separation: Separation,
        temperature: Temperature,
        wall: PermittivityModel,
        atom: PolarizabilityModel,
    ) -> Result<Self> {
        Self::with_floor(
            separation,
            temperature,
            wall,
            atom,
            DEFAULT_SEPARATION_FLOOR,
        )
    }

    /// Construct with a custom validity floor (m) on the separation.
    pub fn with_floor(
        separation: Separation,
        temperature: Temperature,
        wall: PermittivityModel,
        atom: PolarizabilityModel,
        floor_m: f64,
    ) -> Result<Self> {
        if separation.meters() < floor_m {
            return Err(Error::BelowSeparationFloor {
                a_m: separation.meters(),
                floor_m,
            });
        }
        Ok(Self {
            separation,
            temperature,
            wall,
            atom,
        })
    }

    pub fn separation(&self) -> Separation {
        self.separation
    }

    pub fn temperature(&self) -> Temperature {
        self.temperature
    }

    pub fn wall(&self) -> &PermittivityModel {
        &self.wall
    }

    pub fn atom(&self) -> &PolarizabilityModel {
        &self.atom
    }
}

/// Numerical controls for the kernel evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EvalSettings {
    /// Relative tolerance of each y-integral.
    pub quad_rel_tol: f64,
    /// Relative tolerance of the Matsubara-sum truncation (tail bound
    /// against accumulated sum).
    pub sum_rel_tol: f64,
    /// Hard cap on the number of Matsubara terms.
    pub max_terms: usize,
    /// Length of the integration window in t = y − ζ; the remainder is
    /// bounded analytically and charged to the error estimate.
    pub y_span: f64,
    /// Panel budget per adaptive quadrature.
    pub max_panels: usize,
    /// Relative tolerance of the outer ζ-integral in the T = 0 mode.
    pub zero_t_rel_tol: f64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-10,
            sum_rel_tol: 1e-9,
            max_terms: 1_000_000,
            y_span: 60.0,
            max_panels: 256,
            zero_t_rel_tol: 1e-9,
        }
    }
}

/// Per-l diagnostics of the Matsubara sum.
#[derive(Debug, Clone, Copy)]
pub struct MatsubaraTerm {
    pub index: usize,
    /// ζ_l = 2aξ_l/c.
    pub zeta: f64,
    /// I_l, the plain-exponential kernel integral.
    pub integral: f64,
    /// J_l, the y-weighted kernel integral entering the force.
    pub force_integral: f64,
    /// x_l = α(iξ_l) I_l / (8a³); kept explicitly so ln L_l can be formed
    /// as ln_1p(−x_l) without cancellation.
    pub depletion: f64,
    /// α(iξ_l) J_l / (8a³), the force analog of `depletion`.
    pub force_depletion: f64,
    /// Primed-sum weight: 1/2 for l = 0, otherwise 1.
    pub weight: f64,
}

impl MatsubaraTerm {
    /// L_l = 1 − x_l ∈ (0, 1].
    pub fn l_value(&self) -> f64 {
        1.0 - self.depletion
    }

    /// Contribution of this term to the exact free energy (J) per unit k_BT.
    pub fn log_term(&self) -> f64 {
        self.weight * (-self.depletion).ln_1p()
    }
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluationMode {
    MatsubaraSum,
    ZeroTemperatureIntegral,
}

/// Free energy and force of one theory, with convergence metadata.
#[derive(Debug, Clone, Copy)]
pub struct InteractionResult {
    /// Free energy (J); ≤ 0 for ε ≥ 1, α ≥ 0.
    pub free_energy: f64,
    /// Force (N); ≤ 0 (attractive).
    pub force: f64,
    /// Matsubara terms summed, or panels of the T = 0 outer quadrature.
    pub terms_used: usize,
    /// Certified bound on the truncated free-energy remainder (J).
    pub free_energy_tail_bound: f64,
    /// Certified bound on the truncated force remainder (N).
    pub force_tail_bound: f64,
    pub mode: EvaluationMode,
}

/// Exact (nonperturbative) and perturbative results of one scenario,
/// computed in a single pass over the Matsubara terms.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub exact: InteractionResult,
    pub perturbative: InteractionResult,
}

// ---------------------------------------------------------------------------
// reflection coefficients
// ---------------------------------------------------------------------------

fn check_reflection_domain(zeta: f64, y: f64) -> Result<()> {
    if !(zeta >= 0.0) {
        return Err(Error::InvalidScalar {
            quantity: "dimensionless frequency",
            requirement: "non-negative",
            value: zeta,
        });
    }
    if y == 0.0 {
        return Err(Error::InvalidScalar {
            quantity: "dimensionless momentum",
            requirement: "positive (y = 0 lies outside the integration domain)",
            value: y,
        });
    }
    if !(y >= zeta) {
        return Err(Error::InvalidScalar {
            quantity: "dimensionless momentum",
            requirement: "at least zeta",
            value: y,
        });
    }
    Ok(())
}

#[inline]
fn tm_raw(eps: f64, zeta2_eps_m1: f64, y: f64) -> f64 {
    let s = (y * y + zeta2_eps_m1).sqrt();
    (eps * y - s) / (eps * y + s)
}

#[inline]
fn te_raw(zeta2_eps_m1: f64, y: f64) -> f64 {
    let s = (y * y + zeta2_eps_m1).sqrt();
    (y - s) / (y + s)
}

/// Transverse-magnetic reflection coefficient at imaginary frequency,
/// r_TM(iζ, y) = (εy − √(y²+ζ²(ε−1)))/(εy + √(y²+ζ²(ε−1))) ∈ [0, 1).
pub fn refl_tm(eps: PermittivityValue, zeta: f64, y: f64) -> Result<f64> {
    check_reflection_domain(zeta, y)?;
    let e = eps.value();
    Ok(tm_raw(e, zeta * zeta * (e - 1.0), y))
}

/// Transverse-electric reflection coefficient at imaginary frequency,
/// r_TE(iζ, y) = (y − √(y²+ζ²(ε−1)))/(y + √(y²+ζ²(ε−1))) ∈ (−1, 0].
pub fn refl_te(eps: PermittivityValue, zeta: f64, y: f64) -> Result<f64> {
    check_reflection_domain(zeta, y)?;
    let e = eps.value();
    Ok(te_raw(zeta * zeta * (e - 1.0), y))
}

// ---------------------------------------------------------------------------
// exponential-polynomial profiles (ideal-metal closed forms and majorants)
// ---------------------------------------------------------------------------

/// (ζ²+2ζ+2)e^{−ζ} = ∫_ζ^∞ y²e^{−y}dy; the ideal-metal I_l equals twice this.
pub fn energy_profile(zeta: f64) -> f64 {
    (zeta * zeta + 2.0 * zeta + 2.0) * (-zeta).exp()
}

/// (ζ³+3ζ²+6ζ+6)e^{−ζ} = ∫_ζ^∞ y³e^{−y}dy; the ideal-metal J_l equals twice this.
pub fn force_profile(zeta: f64) -> f64 {
    (((zeta + 3.0) * zeta + 6.0) * zeta + 6.0) * (-zeta).exp()
}

/// ∫_A^∞ (ζ²+2ζ+2)e^{−ζ} dζ = (A²+4A+6)e^{−A}.
pub(crate) fn energy_profile_tail(a: f64) -> f64 {
    (a * a + 4.0 * a + 6.0) * (-a).exp()
}

/// ∫_A^∞ (ζ³+3ζ²+6ζ+6)e^{−ζ} dζ = (A³+6A²+18A+24)e^{−A}.
pub(crate) fn force_profile_tail(a: f64) -> f64 {
    (((a + 6.0) * a + 18.0) * a + 24.0) * (-a).exp()
}

// ---------------------------------------------------------------------------
// kernel integrals
// ---------------------------------------------------------------------------

/// Wall response at one Matsubara frequency.
enum WallAtFrequency {
    /// r_TM = 1, r_TE = −1 exactly.
    Ideal,
    /// ζ = 0 limit: the TE part is annihilated by the ζ² weight and r_TM
    /// degenerates to the y-independent static factor.
    Static { r0: f64 },
    Finite { eps: f64, zeta2_eps_m1: f64 },
}

fn wall_at(wall: &PermittivityModel, xi: f64, zeta: f64) -> Result<WallAtFrequency> {
    if matches!(wall, PermittivityModel::IdealMetal) {
        return Ok(WallAtFrequency::Ideal);
    }
    if zeta == 0.0 {
        return Ok(WallAtFrequency::Static {
            r0: wall.static_tm_reflection(),
        });
    }
    let eps = wall.at_imag_freq(xi)?.value();
    Ok(WallAtFrequency::Finite {
        eps,
        zeta2_eps_m1: zeta * zeta * (eps - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IntegrandWeight {
    /// e^{−y}: the free-energy integral I.
    Plain,
    /// y e^{−y}: the force integral J.
    Linear,
}

fn kernel_integral(
    wall: &WallAtFrequency,
    zeta: f64,
    weight: IntegrandWeight,
    settings: &EvalSettings,
) -> Result<QuadratureOutcome> {
    let span = settings.y_span;
    let bracket = |y: f64| -> f64 {
        match *wall {
            WallAtFrequency::Ideal => 2.0 * y * y,
            WallAtFrequency::Static { r0 } => 2.0 * y * y * r0,
            WallAtFrequency::Finite { eps, zeta2_eps_m1 } => {
                let z2 = zeta * zeta;
                (2.0 * y * y - z2) * tm_raw(eps, zeta2_eps_m1, y)
                    - z2 * te_raw(zeta2_eps_m1, y)
            }
        }
    };
    let f = |t: f64| {
        let y = zeta + t;
        let core = (-y).exp() * bracket(y);
        match weight {
            IntegrandWeight::Plain => core,
            IntegrandWeight::Linear => y * core,
        }
    };
    let context = match weight {
        IntegrandWeight::Plain => "Matsubara kernel integral I",
        IntegrandWeight::Linear => "Matsubara kernel integral J",
    };
    let mut out = integrate(
        f,
        0.0,
        span,
        settings.quad_rel_tol,
        0.0,
        settings.max_panels,
        context,
    )?;
    // remainder beyond the window, bounded by the ideal-metal majorant
    let cut = zeta + span;
    out.error_bound += match weight {
        IntegrandWeight::Plain => 2.0 * energy_profile(cut),
        IntegrandWeight::Linear => 2.0 * force_profile(cut),
    };
    Ok(out)
}

/// The per-term kernel integral I_l of the free energy: for l = 0 the
/// integrand reduces to 2y²e^{−y}·r_TM(0) with the TE part dropped.
pub fn matsubara_integral(wall: &PermittivityModel, a: Separation, zeta: f64) -> Result<f64> {
    matsubara_integral_with(wall, a, zeta, &EvalSettings::default())
}

pub fn matsubara_integral_with(
    wall: &PermittivityModel,
    a: Separation,
    zeta: f64,
    settings: &EvalSettings,
) -> Result<f64> {
    if !(zeta >= 0.0) || !zeta.is_finite() {
        return Err(Error::InvalidScalar {
            quantity: "dimensionless frequency",
            requirement: "non-negative and finite",
            value: zeta,
        });
    }
    let xi = zeta * a.characteristic_frequency();
    let w = wall_at(wall, xi, zeta)?;
    Ok(kernel_integral(&w, zeta, IntegrandWeight::Plain, settings)?.value)
}

// ---------------------------------------------------------------------------
// per-term evaluation
// ---------------------------------------------------------------------------

struct TermEvaluator<'a> {
    scenario: &'a Scenario,
    settings: &'a EvalSettings,
    /// 8a³ (m³).
    eight_a3: f64,
    /// Static reflection factor r₀.
    r0: f64,
    /// α(0) (m³).
    alpha0: f64,
}

impl<'a> TermEvaluator<'a> {
    fn new(scenario: &'a Scenario, settings: &'a EvalSettings) -> Self {
        let a = scenario.separation().meters();
        Self {
            scenario,
            settings,
            eight_a3: 8.0 * a * a * a,
            r0: scenario.wall().static_tm_reflection(),
            alpha0: scenario.atom().static_value(),
        }
    }

    /// Majorant prefactor: x_l ≤ x̄(ζ_l) = majorant_scale · (ζ²+2ζ+2)e^{−ζ}.
    fn majorant_scale(&self) -> f64 {
        2.0 * self.alpha0 * self.r0 / self.eight_a3
    }

    /// Separation at which L₀ crosses zero for this wall and atom.
    fn critical_separation(&self) -> f64 {
        (self.alpha0 * self.r0 / 2.0).cbrt()
    }

    /// Raw term; the L_l > 0 domain check is the caller's responsibility
    /// (the perturbative theory never forms 1/L_l and stays defined past
    /// the breakdown point).
    fn term(&self, index: usize, xi: f64, zeta: f64, weight: f64) -> Result<MatsubaraTerm> {
        let wall = wall_at(self.scenario.wall(), xi, zeta)?;
        let i = kernel_integral(&wall, zeta, IntegrandWeight::Plain, self.settings)?.value;
        let j = kernel_integral(&wall, zeta, IntegrandWeight::Linear, self.settings)?.value;
        let alpha = self.scenario.atom().at_imag_freq(xi).cubic_meters();
        let depletion = alpha * i / self.eight_a3;
        Ok(MatsubaraTerm {
            index,
            zeta,
            integral: i,
            force_integral: j,
            depletion,
            force_depletion: alpha * j / self.eight_a3,
            weight,
        })
    }
}

/// The Matsubara term and function L(iξ_l) = 1 − (α_l/8a³)I_l for one index.
///
/// Fails with a domain error once L_l would cross zero, reporting the
/// critical separation (α(0)r₀/2)^{1/3} below which the nonperturbative
/// theory breaks down.
pub fn l_function(scenario: &Scenario, l: usize) -> Result<MatsubaraTerm> {
    l_function_with(scenario, l, &EvalSettings::default())
}

pub fn l_function_with(
    scenario: &Scenario,
    l: usize,
    settings: &EvalSettings,
) -> Result<MatsubaraTerm> {
    let xi = matsubara_frequency(scenario.temperature(), l)?;
    let zeta = scenario.separation().dimensionless_frequency(xi);
    let weight = if l == 0 { 0.5 } else { 1.0 };
    let evaluator = TermEvaluator::new(scenario, settings);
    let term = evaluator.term(l, xi, zeta, weight)?;
    if term.depletion >= 1.0 {
        return Err(Error::NonperturbativeBreakdown {
            critical_separation_m: evaluator.critical_separation(),
        });
    }
    Ok(term)
}

// ---------------------------------------------------------------------------
// Matsubara summation
// ---------------------------------------------------------------------------

struct MatsubaraSums {
    exact: Option<InteractionResult>,
    perturbative: InteractionResult,
}

fn matsubara_sums(
    scenario: &Scenario,
    settings: &EvalSettings,
    need_exact: bool,
) -> Result<MatsubaraSums> {
    let t = scenario.temperature();
    if t.is_zero() {
        return Err(Error::ZeroTemperatureMode);
    }
    let kt = t.thermal_energy();
    let a = scenario.separation().meters();
    let xi1 = matsubara_frequency(t, 1)?;
    let zeta1 = scenario.separation().dimensionless_frequency(xi1);

    let eval = TermEvaluator::new(scenario, settings);
    let scale = eval.majorant_scale();

    let mut sum_log = CompensatedSum::new();
    let mut sum_x = CompensatedSum::new();
    let mut sum_force_exact = CompensatedSum::new();
    let mut sum_force_pert = CompensatedSum::new();
    let mut min_l_value = f64::INFINITY;
    let terms_used;
    let tail_energy;
    let tail_force;

    let mut l = 0usize;
    loop {
        let xi = l as f64 * xi1;
        let zeta = l as f64 * zeta1;
        let weight = if l == 0 { 0.5 } else { 1.0 };
        let term = eval.term(l, xi, zeta, weight)?;
        let x = term.depletion;
        let force_x = term.force_depletion;

        sum_x.add(weight * x);
        sum_force_pert.add(weight * force_x);
        if need_exact {
            let l_value = term.l_value();
            if l_value <= 0.0 {
                return Err(Error::NonperturbativeBreakdown {
                    critical_separation_m: eval.critical_separation(),
                });
            }
            min_l_value = min_l_value.min(l_value);
            sum_log.add(term.log_term());
            sum_force_exact.add(weight * force_x / l_value);
        }

        // certified tail bound over all remaining terms
        let zeta_next = (l + 1) as f64 * zeta1;
        let tail_terms_energy =
            scale * (energy_profile(zeta_next) + energy_profile_tail(zeta_next) / zeta1);
        let tail_terms_force =
            scale * (force_profile(zeta_next) + force_profile_tail(zeta_next) / zeta1);
        let exact_factor = if need_exact && min_l_value.is_finite() {
            1.0 / min_l_value
        } else {
            1.0
        };

        let tol = settings.sum_rel_tol;
        let pert_done =
            tail_terms_energy <= tol * sum_x.value().abs()
                && tail_terms_force <= tol * sum_force_pert.value().abs();
        let exact_done = !need_exact
            || (tail_terms_energy * exact_factor <= tol * sum_log.value().abs()
                && tail_terms_force * exact_factor <= tol * sum_force_exact.value().abs());
        if pert_done && exact_done {
            terms_used = l + 1;
            tail_energy = tail_terms_energy * exact_factor;
            tail_force = tail_terms_force * exact_factor;
            break;
        }
        l += 1;
        if l >= settings.max_terms {
            return Err(Error::SumDidNotConverge {
                max_terms: settings.max_terms,
            });
        }
    }

    let perturbative = InteractionResult {
        free_energy: -kt * sum_x.value(),
        force: -(kt / a) * sum_force_pert.value(),
        terms_used,
        free_energy_tail_bound: kt * tail_energy,
        force_tail_bound: (kt / a) * tail_force,
        mode: EvaluationMode::MatsubaraSum,
    };
    let exact = need_exact.then(|| InteractionResult {
        free_energy: kt * sum_log.value(),
        force: -(kt / a) * sum_force_exact.value(),
        terms_used,
        free_energy_tail_bound: kt * tail_energy,
        force_tail_bound: (kt / a) * tail_force,
        mode: EvaluationMode::MatsubaraSum,
    });
    Ok(MatsubaraSums {
        exact,
        perturbative,
    })
}

/// Exact and perturbative free energy and force in one pass.
///
/// T > 0 runs the Matsubara sum; T = 0 runs the integral mode for both
/// theories.
pub fn evaluate(scenario: &Scenario) -> Result<Evaluation> {
    evaluate_with(scenario, &EvalSettings::default())
}

pub fn evaluate_with(scenario: &Scenario, settings: &EvalSettings) -> Result<Evaluation> {
    if scenario.temperature().is_zero() {
        let (exact, perturbative) = zero_temperature_sums(scenario, settings, true)?;
        return Ok(Evaluation {
            exact: exact.expect("exact requested"),
            perturbative,
        });
    }
    let sums = matsubara_sums(scenario, settings, true)?;
    Ok(Evaluation {
        exact: sums.exact.expect("exact requested"),
        perturbative: sums.perturbative,
    })
}

/// Perturbative theory only, in whichever mode the temperature selects.
/// Stays defined past the nonperturbative breakdown separation.
pub fn evaluate_perturbative_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    if scenario.temperature().is_zero() {
        return Ok(zero_temperature_sums(scenario, settings, false)?.1);
    }
    Ok(matsubara_sums(scenario, settings, false)?.perturbative)
}

/// Nonperturbative free energy, Matsubara mode (requires T > 0).
pub fn free_energy_exact(scenario: &Scenario) -> Result<InteractionResult> {
    free_energy_exact_with(scenario, &EvalSettings::default())
}

pub fn free_energy_exact_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    Ok(matsubara_sums(scenario, settings, true)?
        .exact
        .expect("exact requested"))
}

/// Nonperturbative force, Matsubara mode (requires T > 0).
pub fn force_exact(scenario: &Scenario) -> Result<InteractionResult> {
    free_energy_exact(scenario)
}

pub fn force_exact_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    free_energy_exact_with(scenario, settings)
}

/// Perturbative (first-order Lifshitz) free energy and force. Never touches
/// L_l, so it remains defined where the nonperturbative theory breaks down.
pub fn free_energy_perturbative(scenario: &Scenario) -> Result<InteractionResult> {
    free_energy_perturbative_with(scenario, &EvalSettings::default())
}

pub fn free_energy_perturbative_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    Ok(matsubara_sums(scenario, settings, false)?.perturbative)
}

pub fn force_perturbative(scenario: &Scenario) -> Result<InteractionResult> {
    free_energy_perturbative(scenario)
}

pub fn force_perturbative_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    free_energy_perturbative_with(scenario, settings)
}

/// Relative deviations (δF, δForce) of Eq.-style form
/// δ = (exact − perturbative)/perturbative; non-negative for ε ≥ 1, α ≥ 0.
pub fn relative_deviation(scenario: &Scenario) -> Result<(f64, f64)> {
    relative_deviation_with(scenario, &EvalSettings::default())
}

pub fn relative_deviation_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<(f64, f64)> {
    let ev = evaluate_with(scenario, settings)?;
    deviation_from(&ev)
}

/// δ pair from an existing evaluation.
pub fn deviation_from(ev: &Evaluation) -> Result<(f64, f64)> {
    if ev.perturbative.free_energy == 0.0 || ev.perturbative.force == 0.0 {
        return Err(Error::UndefinedDeviation);
    }
    Ok((
        (ev.exact.free_energy - ev.perturbative.free_energy) / ev.perturbative.free_energy,
        (ev.exact.force - ev.perturbative.force) / ev.perturbative.force,
    ))
}

// ---------------------------------------------------------------------------
// zero-temperature integral mode
// ---------------------------------------------------------------------------

/// Ground-state energy at T = 0 via the standard replacement
/// k_BT Σ'_l → (ħc/4πa) ∫₀^∞ dζ of the Matsubara sum.
pub fn energy_zero_temperature(scenario: &Scenario) -> Result<InteractionResult> {
    energy_zero_temperature_with(scenario, &EvalSettings::default())
}

pub fn energy_zero_temperature_with(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<InteractionResult> {
    let (exact, _) = zero_temperature_sums(scenario, settings, true)?;
    Ok(exact.expect("exact requested"))
}

fn zero_temperature_sums(
    scenario: &Scenario,
    settings: &EvalSettings,
    need_exact: bool,
) -> Result<(Option<InteractionResult>, InteractionResult)> {
    if !scenario.temperature().is_zero() {
        return Err(Error::NonzeroTemperatureMode);
    }
    let a = scenario.separation().meters();
    let omega_c = scenario.separation().characteristic_frequency();
    let eval = TermEvaluator::new(scenario, settings);
    let scale = eval.majorant_scale();

    // L(ζ) ≥ 1 − x̄(0) over the whole axis, so one upfront check certifies
    // the integrand domain of the exact theory.
    let x_max = scale * energy_profile(0.0) / 2.0;
    if need_exact && x_max >= 1.0 {
        return Err(Error::NonperturbativeBreakdown {
            critical_separation_m: eval.critical_separation(),
        });
    }
    let l_floor = (1.0 - x_max).max(f64::MIN_POSITIVE);

    let depletion_at = |zeta: f64, weight: IntegrandWeight| -> f64 {
        let xi = zeta * omega_c;
        let wall = wall_at(scenario.wall(), xi, zeta).expect("zero-T wall evaluation");
        let integral = kernel_integral(&wall, zeta, weight, settings)
            .expect("zero-T kernel integral")
            .value;
        let alpha = scenario.atom().at_imag_freq(xi).cubic_meters();
        alpha * integral / eval.eight_a3
    };

    let span = settings.y_span;
    let tol = settings.zero_t_rel_tol;
    let run = |f: &dyn Fn(f64) -> f64, context: &'static str| -> Result<QuadratureOutcome> {
        integrate(f, 0.0, span, tol, 0.0, settings.max_panels, context)
    };

    let energy_prefactor = HBAR * SPEED_OF_LIGHT / (4.0 * PI * a);
    let force_prefactor = HBAR * SPEED_OF_LIGHT / (4.0 * PI * a * a);
    let tail_e = scale * energy_profile_tail(span) / l_floor;
    let tail_f = scale * force_profile_tail(span) / l_floor;

    let pert_energy = run(
        &|zeta| depletion_at(zeta, IntegrandWeight::Plain),
        "zero-T perturbative energy",
    )?;
    let pert_force = run(
        &|zeta| depletion_at(zeta, IntegrandWeight::Linear),
        "zero-T perturbative force",
    )?;
    let perturbative = InteractionResult {
        free_energy: -energy_prefactor * pert_energy.value,
        force: -force_prefactor * pert_force.value,
        terms_used: pert_energy.panels + pert_force.panels,
        free_energy_tail_bound: energy_prefactor * (pert_energy.error_bound + tail_e),
        force_tail_bound: force_prefactor * (pert_force.error_bound + tail_f),
        mode: EvaluationMode::ZeroTemperatureIntegral,
    };

    if !need_exact {
        return Ok((None, perturbative));
    }

    let exact_energy = run(
        &|zeta| (-depletion_at(zeta, IntegrandWeight::Plain)).ln_1p(),
        "zero-T exact energy",
    )?;
    let exact_force = run(
        &|zeta| {
            let x = depletion_at(zeta, IntegrandWeight::Plain);
            depletion_at(zeta, IntegrandWeight::Linear) / (1.0 - x)
        },
        "zero-T exact force",
    )?;
    let exact = InteractionResult {
        free_energy: energy_prefactor * exact_energy.value,
        force: -force_prefactor * exact_force.value,
        terms_used: exact_energy.panels + exact_force.panels,
        free_energy_tail_bound: energy_prefactor * (exact_energy.error_bound + tail_e),
        force_tail_bound: force_prefactor * (exact_force.error_bound + tail_f),
        mode: EvaluationMode::ZeroTemperatureIntegral,
    };
    Ok((Some(exact), perturbative))
}
