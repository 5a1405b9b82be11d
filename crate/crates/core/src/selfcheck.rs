//! Cross-oracle consistency suite behind the `self-check` CLI command.
//!
//! Every check pits the quadrature kernel against an independent route:
//! closed forms, finite differences, series expansions, or analytic bounds.
//! All checks run on built-in models only — no data files required.

use crate::kernel::{
    self, energy_profile, evaluate_with, EvalSettings, Scenario,
};
use crate::limits;
use crate::permittivity::PermittivityModel;
use crate::polarizability::PolarizabilityModel;
use crate::quantities::{
    au_to_si_polarizability, ev_to_angular_frequency, matsubara_frequency, PolarizabilityValue,
    Separation, Temperature, ELECTRON_VOLT, HBAR,
};

/// One self-check result.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail,
    }
}

fn sep(a: f64) -> Separation {
    Separation::new(a).expect("valid separation")
}

fn temp(t: f64) -> Temperature {
    Temperature::new(t).expect("valid temperature")
}

fn pol(v: f64) -> PolarizabilityValue {
    PolarizabilityValue::new(v).expect("valid polarizability")
}

const HE_STAR_ALPHA0: f64 = 467.727e-31;

fn unit_round_trips() -> CheckOutcome {
    let mut worst = 0.0f64;
    for x in [1e-3, 0.75, 9.0, 420.0] {
        let omega = ev_to_angular_frequency(x).expect("non-negative");
        worst = worst.max(((omega * HBAR / ELECTRON_VOLT) / x - 1.0).abs());
        let alpha = au_to_si_polarizability(x).expect("non-negative");
        worst = worst.max((alpha.atomic_units() / x - 1.0).abs());
    }
    check(
        "unit-round-trips",
        worst < 1e-14,
        format!("max relative defect {worst:.2e} (tolerance 1e-14)"),
    )
}

fn ideal_metal_quadrature_vs_closed_form() -> CheckOutcome {
    let wall = PermittivityModel::IdealMetal;
    let t = temp(300.0);
    let mut worst = 0.0f64;
    for &a_m in &[1e-9, 1e-8, 1e-6] {
        let a = sep(a_m);
        let zeta1 = a.dimensionless_frequency(matsubara_frequency(t, 1).expect("T > 0"));
        for l in (0..=50).step_by(5) {
            let zeta = l as f64 * zeta1;
            let quad = match kernel::matsubara_integral(&wall, a, zeta) {
                Ok(v) => v,
                Err(e) => {
                    return check(
                        "ideal-metal-closed-form",
                        false,
                        format!("quadrature failed at l={l}, a={a_m:e}: {e}"),
                    )
                }
            };
            let closed = 2.0 * energy_profile(zeta);
            if closed > 0.0 {
                worst = worst.max((quad / closed - 1.0).abs());
            }
        }
    }
    check(
        "ideal-metal-closed-form",
        worst < 1e-10,
        format!("max |I_l/closed − 1| = {worst:.2e} (tolerance 1e-10)"),
    )
}

fn classical_dominance() -> CheckOutcome {
    // ζ₁ ≈ 25.5 at a = 15.5 μm, 300 K
    let a = 15.5e-6;
    let scenario = Scenario::new(
        sep(a),
        temp(300.0),
        PermittivityModel::IdealMetal,
        PolarizabilityModel::static_alpha(pol(HE_STAR_ALPHA0)),
    )
    .expect("valid scenario");
    let ev = match kernel::evaluate(&scenario) {
        Ok(ev) => ev,
        Err(e) => return check("classical-dominance", false, format!("kernel failed: {e}")),
    };
    let classical = limits::classical_limit(pol(HE_STAR_ALPHA0), sep(a), temp(300.0))
        .expect("inside classical domain");
    let df = ((ev.exact.free_energy - classical.free_energy) / classical.free_energy).abs();
    let dg = ((ev.exact.force - classical.force) / classical.force).abs();
    // the force remainder carries the heavier (ζ³+3ζ²+6ζ+6)e^{−ζ} profile,
    // about force_profile(ζ₁)/3 ≈ 5e-8 here, so it gets a looser threshold
    check(
        "classical-dominance",
        df < 1e-8 && dg < 1e-7,
        format!(
            "free energy off by {df:.2e} (tol 1e-8), force by {dg:.2e} (tol 1e-7) at ζ₁ ≈ 25.5"
        ),
    )
}

fn force_energy_consistency() -> CheckOutcome {
    let settings = EvalSettings {
        quad_rel_tol: 1e-12,
        sum_rel_tol: 1e-12,
        ..EvalSettings::default()
    };
    let wall = PermittivityModel::plasma(ev_to_angular_frequency(9.0).expect("9 eV")).unwrap();
    let atom = PolarizabilityModel::single_oscillator(
        pol(HE_STAR_ALPHA0),
        ev_to_angular_frequency(1.14).expect("1.14 eV"),
    )
    .unwrap();
    let t = temp(300.0);
    let mut worst = 0.0f64;
    for &a_m in &[2e-9, 2e-8] {
        let f = |a: f64| {
            let s = Scenario::new(sep(a), t, wall.clone(), atom.clone()).expect("valid");
            evaluate_with(&s, &settings).expect("evaluates").exact.free_energy
        };
        let h = 1e-4 * a_m;
        let fd = -(f(a_m + h) - f(a_m - h)) / (2.0 * h);
        let s = Scenario::new(sep(a_m), t, wall.clone(), atom.clone()).expect("valid");
        let force = evaluate_with(&s, &settings).expect("evaluates").exact.force;
        worst = worst.max((force / fd - 1.0).abs());
    }
    check(
        "force-energy-consistency",
        worst < 1e-6,
        format!("max |force/(−dF/da) − 1| = {worst:.2e} (tolerance 1e-6)"),
    )
}

fn zero_t_casimir_polder_series() -> CheckOutcome {
    let alpha = HE_STAR_ALPHA0;
    let small = 0.01f64;
    let a = (alpha / (4.0 * small)).cbrt();
    let series = limits::zero_t_ideal_metal_energy(pol(alpha), sep(a), 24).expect("in margin");
    let scenario = Scenario::with_floor(
        sep(a),
        Temperature::zero(),
        PermittivityModel::IdealMetal,
        PolarizabilityModel::static_alpha(pol(alpha)),
        1e-10,
    )
    .expect("valid");
    let settings = EvalSettings {
        zero_t_rel_tol: 1e-11,
        ..EvalSettings::default()
    };
    let quad = match kernel::energy_zero_temperature_with(&scenario, &settings) {
        Ok(r) => r,
        Err(e) => return check("zero-t-series", false, format!("kernel failed: {e}")),
    };
    let rel = ((quad.free_energy - series.energy) / series.energy).abs();
    check(
        "zero-t-series",
        rel < 1e-8,
        format!("quadrature vs series expansion: {rel:.2e} (tolerance 1e-8)"),
    )
}

fn sign_ordering_and_bounds() -> CheckOutcome {
    let walls = [
        PermittivityModel::IdealMetal,
        PermittivityModel::plasma(1.37e16).unwrap(),
        PermittivityModel::drude(1.37e16, 5.3e13).unwrap(),
    ];
    let atoms = [
        PolarizabilityModel::static_alpha(pol(HE_STAR_ALPHA0)),
        PolarizabilityModel::single_oscillator(pol(HE_STAR_ALPHA0), 1.74e15).unwrap(),
    ];
    let mut cells = 0usize;
    for wall in &walls {
        for atom in &atoms {
            for &a_m in &[1e-9, 5e-9, 5e-8] {
                for &t_k in &[77.0, 300.0] {
                    let scenario =
                        Scenario::new(sep(a_m), temp(t_k), wall.clone(), atom.clone())
                            .expect("valid");
                    let ev = match kernel::evaluate(&scenario) {
                        Ok(ev) => ev,
                        Err(e) => {
                            return check(
                                "sign-ordering",
                                false,
                                format!("kernel failed at a={a_m:e}, T={t_k}: {e}"),
                            )
                        }
                    };
                    let ok = ev.exact.free_energy <= ev.perturbative.free_energy
                        && ev.perturbative.free_energy <= 0.0
                        && ev.exact.force <= ev.perturbative.force
                        && ev.perturbative.force <= 0.0;
                    if !ok {
                        return check(
                            "sign-ordering",
                            false,
                            format!("ordering violated at a={a_m:e}, T={t_k}, {wall:?}"),
                        );
                    }
                    // perturbative first term against the exponential bound
                    let term = kernel::l_function(&scenario, 1).expect("term evaluates");
                    let bound = limits::first_term_bound(&scenario).expect("T > 0");
                    let f1 = temp(t_k).thermal_energy() * term.depletion;
                    if f1 > bound * (1.0 + 1e-9) {
                        return check(
                            "sign-ordering",
                            false,
                            format!("first-term bound violated at a={a_m:e}, T={t_k}"),
                        );
                    }
                    cells += 1;
                }
            }
        }
    }
    check(
        "sign-ordering",
        true,
        format!("orderings, L-ranges and first-term bounds hold on {cells} grid cells"),
    )
}

/// Run the whole suite.
pub fn run_self_checks() -> Vec<CheckOutcome> {
    vec![
        unit_round_trips(),
        ideal_metal_quadrature_vs_closed_form(),
        classical_dominance(),
        force_energy_consistency(),
        zero_t_casimir_polder_series(),
        sign_ordering_and_bounds(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_self_checks_pass() {
        for outcome in run_self_checks() {
            assert!(
                outcome.passed,
                "self-check `{}` failed: {}",
                outcome.name, outcome.detail
            );
        }
    }
}
