//! Closed-form limits of the theory: the classical (zero-frequency) limit,
//! the ideal-metal Matsubara series, the zero-temperature expansion around
//! the Casimir-Polder result, and the exponential bound on the first
//! Matsubara term. These serve both as fast paths and as independent
//! oracles for the quadrature kernel.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{energy_profile, energy_profile_tail, Scenario};
use crate::polarizability::PolarizabilityModel;
use crate::quantities::{
    matsubara_frequency, PolarizabilityValue, Separation, Temperature, HBAR, SPEED_OF_LIGHT,
};
use crate::summation::CompensatedSum;

/// Classical-limit (l = 0 only) values, nonperturbative and perturbative.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalLimitResult {
    /// F₀ = (k_BT/2) ln[1 − α(0)/(2a³)] (J).
    pub free_energy: f64,
    /// −(3k_BTα(0)/4a⁴) / (1 − α(0)/(4a³)) (N).
    pub force: f64,
    /// −k_BTα(0)/(4a³) (J).
    pub perturbative_free_energy: f64,
    /// −3k_BTα(0)/(4a⁴) (N).
    pub perturbative_force: f64,
}

/// High-temperature / large-separation limit where only the zero-frequency
/// Matsubara term survives (metallic wall, r_TM(0) = 1).
pub fn classical_limit(
    alpha0: PolarizabilityValue,
    a: Separation,
    t: Temperature,
) -> Result<ClassicalLimitResult> {
    if t.is_zero() {
        return Err(Error::ZeroTemperatureMode);
    }
    let alpha = alpha0.cubic_meters();
    let a3 = a.meters().powi(3);
    let x = alpha / (2.0 * a3);
    if x >= 1.0 {
        return Err(Error::NonperturbativeBreakdown {
            critical_separation_m: (alpha / 2.0).cbrt(),
        });
    }
    let kt = t.thermal_energy();
    Ok(ClassicalLimitResult {
        free_energy: 0.5 * kt * (-x).ln_1p(),
        force: -(3.0 * kt * alpha / (4.0 * a.meters().powi(4))) / (1.0 - alpha / (4.0 * a3)),
        perturbative_free_energy: -kt * alpha / (4.0 * a3),
        perturbative_force: -3.0 * kt * alpha / (4.0 * a.meters().powi(4)),
    })
}

/// One order of a power-series expansion.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTerm {
    pub order: usize,
    /// Contribution of this order (J).
    pub value: f64,
}

/// Ideal-metal free energy: closed logarithmic form plus its power series.
#[derive(Debug, Clone)]
pub struct IdealMetalSeries {
    /// k_BT Σ'_l ln[1 − (α_l/4a³)(ζ_l²+2ζ_l+2)e^{−ζ_l}] (J).
    pub free_energy: f64,
    /// Per-order series contributions; their sum converges to `free_energy`
    /// with geometric ratio at most α(0)/(2a³).
    pub terms: Vec<SeriesTerm>,
    pub truncation_order: usize,
    /// Matsubara terms kept in each l-sum.
    pub matsubara_terms: usize,
}

/// Free energy of an atom facing an ideal-metal plane, where the kernel
/// integral collapses to the closed form 2(ζ²+2ζ+2)e^{−ζ}.
pub fn ideal_metal_free_energy(
    atom: &PolarizabilityModel,
    a: Separation,
    t: Temperature,
    max_order: usize,
) -> Result<IdealMetalSeries> {
    if t.is_zero() {
        return Err(Error::ZeroTemperatureMode);
    }
    if max_order == 0 {
        return Err(Error::SeriesOutOfRange {
            reason: "max_order must be at least 1".into(),
        });
    }
    let kt = t.thermal_energy();
    let a3 = a.meters().powi(3);
    let alpha0 = atom.static_value();
    let small = alpha0 / (4.0 * a3);
    if small * energy_profile(0.0) >= 1.0 {
        return Err(Error::SeriesOutOfRange {
            reason: format!(
                "logarithm argument vanishes: alpha(0)/(2a^3) = {:.3e} >= 1",
                small * 2.0
            ),
        });
    }

    let xi1 = matsubara_frequency(t, 1)?;
    let zeta1 = a.dimensionless_frequency(xi1);

    // per-l profile terms, truncated by the closed-form tail bound
    let mut profile = Vec::new();
    let mut ratio = Vec::new(); // α(iξ_l)/α(0)
    let mut l = 0usize;
    let mut acc = 0.0f64;
    loop {
        let zeta = l as f64 * zeta1;
        let xi = l as f64 * xi1;
        profile.push(energy_profile(zeta));
        ratio.push(if alpha0 > 0.0 {
            atom.at_imag_freq(xi).cubic_meters() / alpha0
        } else {
            0.0
        });
        acc += profile[l] * if l == 0 { 0.5 } else { 1.0 };
        let zn = (l + 1) as f64 * zeta1;
        let tail = energy_profile(zn) + energy_profile_tail(zn) / zeta1;
        if tail <= 1e-12 * acc.max(f64::MIN_POSITIVE) {
            break;
        }
        l += 1;
        if l > 10_000_000 {
            return Err(Error::SumDidNotConverge {
                max_terms: 10_000_000,
            });
        }
    }

    let closed: CompensatedSum = profile
        .iter()
        .zip(&ratio)
        .enumerate()
        .map(|(l, (&p, &r))| {
            let w = if l == 0 { 0.5 } else { 1.0 };
            w * (-small * r * p).ln_1p()
        })
        .collect();
    let free_energy = kt * closed.value();

    // Eq.-style power series: F = −k_BT Σ_n (1/n)(α(0)/4a³)^n Σ'_l (α_l/α(0))^n pₗ^n
    let mut terms = Vec::new();
    let mut series_acc = CompensatedSum::new();
    let mut truncation_order = max_order;
    for n in 1..=max_order {
        let inner: CompensatedSum = profile
            .iter()
            .zip(&ratio)
            .enumerate()
            .map(|(l, (&p, &r))| {
                let w = if l == 0 { 0.5 } else { 1.0 };
                w * (r * p).powi(n as i32)
            })
            .collect();
        let value = -kt * small.powi(n as i32) / n as f64 * inner.value();
        terms.push(SeriesTerm { order: n, value });
        series_acc.add(value);
        if value.abs() <= f64::EPSILON * series_acc.value().abs() {
            truncation_order = n;
            break;
        }
    }

    Ok(IdealMetalSeries {
        free_energy,
        terms,
        truncation_order,
        matsubara_terms: profile.len(),
    })
}

/// Zero-temperature ideal-metal energy as the Casimir-Polder leading term
/// plus its nonperturbative correction series.
#[derive(Debug, Clone)]
pub struct ZeroTemperatureSeries {
    /// Total energy (J).
    pub energy: f64,
    /// −3ħcα(0)/(8πa⁴), the leading (Casimir-Polder) term (J).
    pub leading: f64,
    /// Correction orders k ≥ 1 (J each).
    pub corrections: Vec<SeriesTerm>,
    pub truncation_order: usize,
}

/// ∫₀^∞ (ζ²+2ζ+2)^n e^{−nζ} dζ evaluated exactly by binomial expansion and
/// ∫ ζ^k e^{−nζ} dζ = k!/n^{k+1}.
pub fn zeta_profile_integral(n: usize) -> f64 {
    assert!((1..=60).contains(&n), "polynomial expansion sized for n <= 60");
    // coefficients of (2 + 2ζ + ζ²)^n; integers below 2^53 for n ≤ 22,
    // relative rounding ~1e-16 beyond
    let mut coeff = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![0.0f64; coeff.len() + 2];
        for (i, &c) in coeff.iter().enumerate() {
            next[i] += 2.0 * c;
            next[i + 1] += 2.0 * c;
            next[i + 2] += c;
        }
        coeff = next;
    }
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    let mut factorial_over_pow = 1.0 / nf; // k!/n^{k+1} at k = 0
    for (k, &c) in coeff.iter().enumerate() {
        if k > 0 {
            factorial_over_pow *= k as f64 / nf;
        }
        acc.add(c * factorial_over_pow);
    }
    acc.value()
}

/// E(a) for an ideal-metal wall and static polarizability at T = 0:
///
///   E = −3ħcα(0)/(8πa⁴) − (ħcα(0)/16πa⁴) Σ_{k≥1} (α(0)/4a³)^k/(k+1) ·
///       ∫₀^∞ (ζ²+2ζ+2)^{k+1} e^{−(k+1)ζ} dζ,
///
/// the ζ-integrals in closed form.
pub fn zero_t_ideal_metal_energy(
    alpha0: PolarizabilityValue,
    a: Separation,
    max_order: usize,
) -> Result<ZeroTemperatureSeries> {
    let alpha = alpha0.cubic_meters();
    let a_m = a.meters();
    let small = alpha / (4.0 * a_m.powi(3));
    if small >= 0.5 {
        return Err(Error::SeriesOutOfRange {
            reason: format!(
                "convergence margin requires alpha(0)/(4a^3) < 1/2, got {small:.3e}"
            ),
        });
    }
    if max_order == 0 {
        return Err(Error::SeriesOutOfRange {
            reason: "max_order must be at least 1".into(),
        });
    }

    let prefactor = HBAR * SPEED_OF_LIGHT * alpha / (16.0 * PI * a_m.powi(4));
    let leading = -3.0 * HBAR * SPEED_OF_LIGHT * alpha / (8.0 * PI * a_m.powi(4));
    let mut corrections = Vec::new();
    let mut total = CompensatedSum::new();
    total.add(leading);
    let mut truncation_order = max_order;
    for k in 1..=max_order.min(59) {
        let integral = zeta_profile_integral(k + 1);
        let value = -prefactor * small.powi(k as i32) / (k + 1) as f64 * integral;
        corrections.push(SeriesTerm { order: k, value });
        total.add(value);
        if value.abs() <= f64::EPSILON * total.value().abs() {
            truncation_order = k;
            break;
        }
    }

    Ok(ZeroTemperatureSeries {
        energy: total.value(),
        leading,
        corrections,
        truncation_order,
    })
}

/// Exponential bound on the first Matsubara term:
/// |F₁| ≲ k_BT (α(0)/4a³) r_TM(0) (ζ₁²+2ζ₁+2) e^{−ζ₁}, ζ₁ = 4πak_BT/(ħc).
///
/// Rigorous for the first-order (perturbative) term; the nonperturbative
/// term obeys it up to the O(x₁²) difference between −ln(1−x₁) and x₁.
pub fn first_term_bound(scenario: &Scenario) -> Result<f64> {
    let t = scenario.temperature();
    if t.is_zero() {
        return Err(Error::ZeroTemperatureMode);
    }
    let a = scenario.separation();
    let zeta1 = a.dimensionless_frequency(matsubara_frequency(t, 1)?);
    let alpha0 = scenario.atom().static_value();
    let r0 = scenario.wall().static_tm_reflection();
    Ok(t.thermal_energy() * alpha0 / (4.0 * a.meters().powi(3)) * r0 * energy_profile(zeta1))
}
